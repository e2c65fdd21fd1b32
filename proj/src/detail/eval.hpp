#pragma once

// Internal evaluation machinery shared by semantics, engine, uniqueness and
// oracle. Not installed.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "manlp/lattice.hpp"
#include "manlp/syntax.hpp"

namespace manlp::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Structural evaluation. `pos` resolves plain atoms, `neg` resolves the
/// atoms under default negation (before negating them).
template <class PosLookup, class NegLookup>
TruthValue evaluate_with(const BodyExpr& b, LatticeKind kind, PosLookup&& pos, NegLookup&& neg) {
  return std::visit(
      overloaded{
          [&](const body::Prop& p) -> TruthValue { return pos(p.atom); },
          [&](const body::NegProp& p) -> TruthValue { return negate(kind, neg(p.atom)); },
          [&](const body::Const& c) -> TruthValue { return c.value; },
          [&](const body::Conn& c) -> TruthValue {
            return conjoin(c.op, evaluate_with(c.operands[0], kind, pos, neg),
                           evaluate_with(c.operands[1], kind, pos, neg));
          },
          [&](const body::Agg& a) -> TruthValue {
            const Aggregator f = LatticeSignature::of(kind).aggregator(a.name);
            if (f == nullptr) throw ValidationError("unknown aggregator @" + a.name);
            std::vector<TruthValue> args;
            args.reserve(a.args.size());
            for (const auto& x : a.args) args.push_back(evaluate_with(x, kind, pos, neg));
            return f(args);
          },
      },
      b.node);
}

/// A program flattened into index-addressed nodes so that the fixpoint
/// loops run without name lookups or allocation.
class CompiledProgram {
public:
  explicit CompiledProgram(const Program& program);

  LatticeKind kind() const noexcept { return kind_; }
  std::size_t symbol_count() const noexcept { return symbol_count_; }
  std::size_t rule_count() const noexcept { return rules_.size(); }

  /// ϑ & body for rule `r`. Atoms read `values`; negated atoms read the
  /// already-negated `negated` vector.
  TruthValue rule_consequence(std::size_t r, std::span<const TruthValue> values,
                              std::span<const TruthValue> negated) const;
  std::size_t head(std::size_t r) const noexcept { return rules_[r].head; }

  /// out[q] = sup of rule_consequence over rules with head q (bottom if none).
  void consequences(std::span<const TruthValue> values, std::span<const TruthValue> negated,
                    std::span<TruthValue> out) const;

private:
  enum class Op : std::uint8_t { atom, neg_atom, constant, conn, agg };
  struct Node {
    Op op;
    std::uint32_t slot = 0;
    TruthValue value{};
    AdjointLabel label{};
    Aggregator agg = nullptr;
    std::uint32_t first = 0;
    std::uint32_t count = 0;
  };
  struct CompiledRule {
    std::size_t head;
    AdjointLabel label;
    TruthValue weight;
    std::uint32_t root;
  };

  std::uint32_t compile(const BodyExpr& b, const std::vector<std::string>& symbols);
  TruthValue eval(std::uint32_t node, std::span<const TruthValue> values,
                  std::span<const TruthValue> negated) const;

  LatticeKind kind_;
  std::size_t symbol_count_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> children_;
  std::vector<CompiledRule> rules_;
};

void negate_all(std::span<const TruthValue> in, std::span<TruthValue> out);

/// max over symbols and endpoints of |a - b|.
double sup_distance(std::span<const TruthValue> a, std::span<const TruthValue> b) noexcept;

}  // namespace manlp::detail
