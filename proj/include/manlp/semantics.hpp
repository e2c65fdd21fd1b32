#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "manlp/lattice.hpp"
#include "manlp/syntax.hpp"

namespace manlp {

/// A total assignment of truth values to a fixed, sorted set of symbols.
/// Symbol tables are shared between copies, so interpretations are cheap
/// to copy and compare.
class Interpretation {
public:
  using SymbolTable = std::vector<std::string>;

  /// Throws DomainError when a value is not of `kind`.
  static Interpretation from_map(LatticeKind kind, const std::map<std::string, TruthValue>& values);
  static Interpretation constant(LatticeKind kind, std::shared_ptr<const SymbolTable> symbols,
                                 TruthValue value);
  static Interpretation bottom(const Program& program);
  static Interpretation top(const Program& program);
  /// Values listed in symbol order.
  static Interpretation from_values(LatticeKind kind, std::shared_ptr<const SymbolTable> symbols,
                                    std::vector<TruthValue> values);

  LatticeKind kind() const noexcept { return kind_; }
  const SymbolTable& symbols() const noexcept { return *symbols_; }
  const std::shared_ptr<const SymbolTable>& symbol_table() const noexcept { return symbols_; }
  std::span<const TruthValue> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Throws SymbolMismatch for unknown symbols.
  const TruthValue& at(std::string_view symbol) const;
  bool contains(std::string_view symbol) const noexcept;
  /// Copy with one symbol reassigned.
  Interpretation with(std::string_view symbol, TruthValue value) const;
  std::map<std::string, TruthValue> to_map() const;

  bool same_symbols(const Interpretation& other) const noexcept;

  friend bool operator==(const Interpretation& a, const Interpretation& b);

private:
  Interpretation(LatticeKind kind, std::shared_ptr<const SymbolTable> symbols,
                 std::vector<TruthValue> values)
      : kind_(kind), symbols_(std::move(symbols)), values_(std::move(values)) {}

  std::size_t index_of(std::string_view symbol) const noexcept;

  LatticeKind kind_;
  std::shared_ptr<const SymbolTable> symbols_;
  std::vector<TruthValue> values_;
};

std::shared_ptr<const Interpretation::SymbolTable> symbol_table_of(const Program& program);

/// Throws SymbolMismatch unless `i` is over exactly the program's symbols and lattice.
void require_matches(const Program& program, const Interpretation& i);

/// Pointwise order; throws SymbolMismatch when the symbol sets differ.
bool interp_leq(const Interpretation& i, const Interpretation& j);

/// Truth value of a body under `i`. Throws SymbolMismatch for atoms `i`
/// does not assign and ValidationError for unknown aggregators.
TruthValue evaluate(const BodyExpr& body, const Interpretation& i);

/// Value of the implication head <-label body under `i`.
TruthValue rule_value(const Rule& rule, const Interpretation& i);
/// weight <= rule_value(rule, i).
bool satisfies(const Rule& rule, const Interpretation& i);
bool is_model(const Program& program, const Interpretation& i);

}  // namespace manlp
