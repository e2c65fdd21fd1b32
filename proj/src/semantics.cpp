#include "manlp/semantics.hpp"

#include <algorithm>

#include "detail/eval.hpp"

namespace manlp {

Interpretation Interpretation::from_map(LatticeKind kind,
                                        const std::map<std::string, TruthValue>& values) {
  auto symbols = std::make_shared<SymbolTable>();
  std::vector<TruthValue> vals;
  symbols->reserve(values.size());
  vals.reserve(values.size());
  for (const auto& [name, v] : values) {
    if (!is_identifier(name)) throw SymbolMismatch("bad symbol name '" + name + "'");
    if (v.kind() != kind) {
      throw DomainError("symbol '" + name + "' has " + std::string(to_string(v.kind())) +
                        " value " + to_string(v) + " in a " + std::string(to_string(kind)) +
                        " interpretation");
    }
    symbols->push_back(name);
    vals.push_back(v);
  }
  return Interpretation(kind, std::move(symbols), std::move(vals));
}

Interpretation Interpretation::constant(LatticeKind kind, std::shared_ptr<const SymbolTable> symbols,
                                        TruthValue value) {
  if (value.kind() != kind) throw DomainError("constant interpretation: lattice mismatch");
  std::vector<TruthValue> vals(symbols->size(), value);
  return Interpretation(kind, std::move(symbols), std::move(vals));
}

Interpretation Interpretation::from_values(LatticeKind kind,
                                           std::shared_ptr<const SymbolTable> symbols,
                                           std::vector<TruthValue> values) {
  if (values.size() != symbols->size()) {
    throw SymbolMismatch("interpretation: " + std::to_string(values.size()) + " values for " +
                         std::to_string(symbols->size()) + " symbols");
  }
  for (const auto& v : values) {
    if (v.kind() != kind) throw DomainError("interpretation: lattice mismatch in " + to_string(v));
  }
  return Interpretation(kind, std::move(symbols), std::move(values));
}

Interpretation Interpretation::bottom(const Program& program) {
  return constant(program.kind(), symbol_table_of(program), TruthValue::bottom(program.kind()));
}

Interpretation Interpretation::top(const Program& program) {
  return constant(program.kind(), symbol_table_of(program), TruthValue::top(program.kind()));
}

std::size_t Interpretation::index_of(std::string_view symbol) const noexcept {
  const auto it = std::ranges::lower_bound(*symbols_, symbol, std::less<>{});
  if (it == symbols_->end() || *it != symbol) return symbols_->size();
  return static_cast<std::size_t>(it - symbols_->begin());
}

const TruthValue& Interpretation::at(std::string_view symbol) const {
  const auto i = index_of(symbol);
  if (i == values_.size()) {
    throw SymbolMismatch("interpretation does not assign symbol '" + std::string(symbol) + "'");
  }
  return values_[i];
}

bool Interpretation::contains(std::string_view symbol) const noexcept {
  return index_of(symbol) != values_.size();
}

Interpretation Interpretation::with(std::string_view symbol, TruthValue value) const {
  const auto i = index_of(symbol);
  if (i == values_.size()) {
    throw SymbolMismatch("interpretation does not assign symbol '" + std::string(symbol) + "'");
  }
  if (value.kind() != kind_) throw DomainError("with(): lattice mismatch");
  Interpretation out = *this;
  out.values_[i] = value;
  return out;
}

std::map<std::string, TruthValue> Interpretation::to_map() const {
  std::map<std::string, TruthValue> out;
  for (std::size_t i = 0; i < values_.size(); ++i) out.emplace((*symbols_)[i], values_[i]);
  return out;
}

bool Interpretation::same_symbols(const Interpretation& other) const noexcept {
  return symbols_ == other.symbols_ || *symbols_ == *other.symbols_;
}

bool operator==(const Interpretation& a, const Interpretation& b) {
  return a.kind_ == b.kind_ && a.same_symbols(b) && a.values_ == b.values_;
}

std::shared_ptr<const Interpretation::SymbolTable> symbol_table_of(const Program& program) {
  return std::make_shared<const Interpretation::SymbolTable>(program.symbols());
}

void require_matches(const Program& program, const Interpretation& i) {
  if (i.kind() != program.kind()) {
    throw SymbolMismatch("interpretation is over the " + std::string(to_string(i.kind())) +
                         " lattice but the program is over the " +
                         std::string(to_string(program.kind())) + " lattice");
  }
  if (i.symbols() != program.symbols()) {
    std::string missing;
    std::string extra;
    for (const auto& s : program.symbols()) {
      if (!i.contains(s)) missing += " " + s;
    }
    for (const auto& s : i.symbols()) {
      if (!std::ranges::binary_search(program.symbols(), s)) extra += " " + s;
    }
    std::string msg = "interpretation does not match the program's symbols;";
    if (!missing.empty()) msg += " missing:" + missing + ";";
    if (!extra.empty()) msg += " extraneous:" + extra + ";";
    throw SymbolMismatch(msg);
  }
}

bool interp_leq(const Interpretation& i, const Interpretation& j) {
  if (i.kind() != j.kind() || !i.same_symbols(j)) {
    throw SymbolMismatch("interp_leq: interpretations over different symbols or lattices");
  }
  const auto a = i.values();
  const auto b = j.values();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!leq(a[k], b[k])) return false;
  }
  return true;
}

TruthValue evaluate(const BodyExpr& body, const Interpretation& i) {
  auto lookup = [&](const std::string& atom) -> const TruthValue& { return i.at(atom); };
  return detail::evaluate_with(body, i.kind(), lookup, lookup);
}

TruthValue rule_value(const Rule& rule, const Interpretation& i) {
  return implies(rule.label, i.at(rule.head), evaluate(rule.body, i));
}

bool satisfies(const Rule& rule, const Interpretation& i) {
  return leq(rule.weight, rule_value(rule, i));
}

bool is_model(const Program& program, const Interpretation& i) {
  require_matches(program, i);
  return std::ranges::all_of(program.rules(), [&](const Rule& r) { return satisfies(r, i); });
}

}  // namespace manlp
