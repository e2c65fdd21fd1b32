#include <algorithm>
#include <array>
#include <cmath>

#include "detail/eval.hpp"

namespace manlp::detail {

CompiledProgram::CompiledProgram(const Program& program)
    : kind_(program.kind()), symbol_count_(program.symbols().size()) {
  const auto& symbols = program.symbols();
  auto slot_of = [&](const std::string& name) {
    const auto it = std::ranges::lower_bound(symbols, name);
    return static_cast<std::size_t>(it - symbols.begin());
  };
  rules_.reserve(program.rules().size());
  for (const auto& r : program.rules()) {
    const std::uint32_t root = compile(r.body, symbols);
    rules_.push_back({slot_of(r.head), r.label, r.weight, root});
  }
}

std::uint32_t CompiledProgram::compile(const BodyExpr& b, const std::vector<std::string>& symbols) {
  auto slot_of = [&](const std::string& name) {
    const auto it = std::ranges::lower_bound(symbols, name);
    return static_cast<std::uint32_t>(it - symbols.begin());
  };
  Node node{};
  std::vector<std::uint32_t> kids;
  std::visit(overloaded{
                 [&](const body::Prop& p) {
                   node.op = Op::atom;
                   node.slot = slot_of(p.atom);
                 },
                 [&](const body::NegProp& p) {
                   node.op = Op::neg_atom;
                   node.slot = slot_of(p.atom);
                 },
                 [&](const body::Const& c) {
                   node.op = Op::constant;
                   node.value = c.value;
                 },
                 [&](const body::Conn& c) {
                   node.op = Op::conn;
                   node.label = c.op;
                   for (const auto& o : c.operands) kids.push_back(compile(o, symbols));
                 },
                 [&](const body::Agg& a) {
                   node.op = Op::agg;
                   node.agg = LatticeSignature::of(kind_).aggregator(a.name);
                   if (node.agg == nullptr) throw ValidationError("unknown aggregator @" + a.name);
                   for (const auto& o : a.args) kids.push_back(compile(o, symbols));
                 },
             },
             b.node);
  node.first = static_cast<std::uint32_t>(children_.size());
  node.count = static_cast<std::uint32_t>(kids.size());
  children_.insert(children_.end(), kids.begin(), kids.end());
  nodes_.push_back(node);
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

TruthValue CompiledProgram::eval(std::uint32_t n, std::span<const TruthValue> values,
                                 std::span<const TruthValue> negated) const {
  const Node& node = nodes_[n];
  switch (node.op) {
    case Op::atom: return values[node.slot];
    case Op::neg_atom: return negated[node.slot];
    case Op::constant: return node.value;
    case Op::conn:
      return conjoin(node.label, eval(children_[node.first], values, negated),
                     eval(children_[node.first + 1], values, negated));
    case Op::agg: {
      constexpr std::size_t inline_args = 16;
      if (node.count <= inline_args) {
        std::array<TruthValue, inline_args> args;
        for (std::uint32_t k = 0; k < node.count; ++k) {
          args[k] = eval(children_[node.first + k], values, negated);
        }
        return node.agg(std::span<const TruthValue>(args.data(), node.count));
      }
      std::vector<TruthValue> args;
      args.reserve(node.count);
      for (std::uint32_t k = 0; k < node.count; ++k) {
        args.push_back(eval(children_[node.first + k], values, negated));
      }
      return node.agg(args);
    }
  }
  return node.value;
}

TruthValue CompiledProgram::rule_consequence(std::size_t r, std::span<const TruthValue> values,
                                             std::span<const TruthValue> negated) const {
  const auto& rule = rules_[r];
  return conjoin(rule.label, rule.weight, eval(rule.root, values, negated));
}

void CompiledProgram::consequences(std::span<const TruthValue> values,
                                   std::span<const TruthValue> negated,
                                   std::span<TruthValue> out) const {
  std::ranges::fill(out, TruthValue::bottom(kind_));
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    auto& slot = out[rules_[r].head];
    slot = join(slot, rule_consequence(r, values, negated));
  }
}

void negate_all(std::span<const TruthValue> in, std::span<TruthValue> out) {
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = negate(in[k]);
}

double sup_distance(std::span<const TruthValue> a, std::span<const TruthValue> b) noexcept {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d = std::max({d, std::abs(a[k].lo() - b[k].lo()), std::abs(a[k].hi() - b[k].hi())});
  }
  return d;
}

}  // namespace manlp::detail
