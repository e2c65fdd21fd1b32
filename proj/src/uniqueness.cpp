#include "manlp/uniqueness.hpp"

#include <algorithm>
#include <random>

#include "detail/eval.hpp"

namespace manlp {

namespace {

struct BodyShape {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
};

std::optional<std::string> collect_factors(const BodyExpr& b, BodyShape& shape) {
  return std::visit(
      detail::overloaded{
          [&](const body::Prop& p) -> std::optional<std::string> {
            shape.positive.push_back(p.atom);
            return std::nullopt;
          },
          [&](const body::NegProp& p) -> std::optional<std::string> {
            shape.negative.push_back(p.atom);
            return std::nullopt;
          },
          [&](const body::Const& c) -> std::optional<std::string> {
            return "constant " + to_string(c.value) + " inside a product body";
          },
          [&](const body::Conn& c) -> std::optional<std::string> {
            if (c.op != AdjointLabel::interval_product()) {
              return "body connective " + std::string(connective_token(c.op)) + " is not *";
            }
            for (const auto& o : c.operands) {
              if (auto err = collect_factors(o, shape)) return err;
            }
            return std::nullopt;
          },
          [&](const body::Agg& a) -> std::optional<std::string> {
            return "aggregator @" + a.name + " in body";
          },
      },
      b.node);
}

/// The product factors of an eligible body, or the reason it is not eligible.
std::optional<std::string> body_shape(const Rule& rule, BodyShape& shape) {
  if (rule.label.family != PairFamily::ei) {
    return "implication " + implication_tag(rule.label) + " is not an ei implication";
  }
  if (const auto* c = std::get_if<body::Const>(&rule.body.node)) {
    if (c->value == TruthValue::top(LatticeKind::subinterval)) return std::nullopt;
    return "constant body " + to_string(c->value) + " is not [1,1]";
  }
  return collect_factors(rule.body, shape);
}

const TruthValue& bound_of(std::span<const HeadBound> bounds, const std::string& symbol) {
  const auto it =
      std::ranges::find_if(bounds, [&](const HeadBound& b) { return b.symbol == symbol; });
  if (it == bounds.end()) throw SymbolMismatch("no head bound for symbol '" + symbol + "'");
  return it->bound;
}

/// Σ_j x_j^(e-1) Π_{l≠j} x_l^e + (k-h) Π_l x_l^e
double lambda_factor(std::span<const double> xs, std::size_t negatives, unsigned e) {
  double sum = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double term = ipow(xs[j], e - 1);
    for (std::size_t l = 0; l < xs.size(); ++l) {
      if (l != j) term *= ipow(xs[l], e);
    }
    sum += term;
  }
  double all = 1.0;
  for (const double x : xs) all *= ipow(x, e);
  return sum + static_cast<double>(negatives) * all;
}

}  // namespace

EligibilityReport eligible(const Program& program) {
  EligibilityReport report;
  if (program.kind() != LatticeKind::subinterval) {
    report.violations.push_back(
        {Violation::npos, "program is over the unit lattice, not the subinterval lattice"});
    return report;
  }
  for (std::size_t r = 0; r < program.rules().size(); ++r) {
    BodyShape shape;
    if (auto err = body_shape(program.rules()[r], shape)) {
      report.violations.push_back({r, *err});
    }
  }
  return report;
}

std::vector<HeadBound> head_weight_bounds(const Program& program) {
  if (program.kind() != LatticeKind::subinterval) {
    throw DomainError("head weight bounds need an interval program");
  }
  std::vector<HeadBound> bounds;
  bounds.reserve(program.symbols().size());
  for (const auto& s : program.symbols()) {
    bounds.push_back({s, TruthValue::bottom(LatticeKind::subinterval)});
  }
  for (const auto& r : program.rules()) {
    auto it = std::ranges::lower_bound(bounds, r.head, {}, &HeadBound::symbol);
    it->bound = join(it->bound, r.weight);
  }
  return bounds;
}

Interpretation bound_interpretation(const Program& program) {
  std::vector<TruthValue> values;
  for (auto& b : head_weight_bounds(program)) values.push_back(b.bound);
  return Interpretation::from_values(LatticeKind::subinterval, symbol_table_of(program),
                                     std::move(values));
}

Lambdas rule_lambdas(const Rule& rule, std::span<const HeadBound> bounds) {
  BodyShape shape;
  if (auto err = body_shape(rule, shape)) throw ValidationError("rule for " + rule.head + ": " + *err);
  if (!rule.weight.is_interval()) throw DomainError("rule_lambdas needs an interval weight");
  const EiParams& p = rule.label.ei;
  std::vector<double> lo;
  std::vector<double> hi;
  for (const auto& q : shape.positive) {
    const TruthValue& b = bound_of(bounds, q);
    lo.push_back(b.lo());
    hi.push_back(b.hi());
  }
  for (const auto& q : shape.negative) bound_of(bounds, q);
  if (shape.positive.empty() && shape.negative.empty()) return {0.0, 0.0};

  const std::size_t negatives = shape.negative.size();
  return {
      ipow(rule.weight.lo(), p.alpha) * p.gamma * lambda_factor(lo, negatives, p.gamma),
      ipow(rule.weight.hi(), p.beta) * p.delta * lambda_factor(hi, negatives, p.delta),
  };
}

CertificateReport certify(const Program& program) {
  CertificateReport report;
  const auto elig = eligible(program);
  report.violations = elig.violations;
  report.eligible = elig.eligible();
  if (!report.eligible) return report;

  report.head_bounds = head_weight_bounds(program);
  bool all_pass = true;
  bool all_lambda2 = true;
  for (std::size_t r = 0; r < program.rules().size(); ++r) {
    const auto l = rule_lambdas(program.rules()[r], report.head_bounds);
    const bool passes = l.lambda1 < 1.0 && l.lambda2 < 1.0;
    report.per_rule.push_back({r, l.lambda1, l.lambda2, passes});
    all_pass = all_pass && passes;
    all_lambda2 = all_lambda2 && l.lambda2 < 1.0;
    report.global_lipschitz = std::max({report.global_lipschitz, l.lambda1, l.lambda2});
  }
  report.verdict = all_pass;
  report.lambda2_verdict = all_lambda2;
  return report;
}

UniqueSolution solve_unique(const Program& program, const FixpointConfig& cfg) {
  const auto report = certify(program);
  if (!report.eligible) {
    throw UncertifiedError("program is not eligible for the uniqueness certificate: " +
                           report.violations.front().reason);
  }
  if (!*report.verdict) {
    throw UncertifiedError("uniqueness certificate fails (global Lipschitz bound " +
                           format_number(report.global_lipschitz) + ")");
  }
  auto trace = iterate_tp(program, Interpretation::bottom(program), cfg);
  if (!trace.converged) {
    throw Error("T_P iteration did not converge within " + std::to_string(cfg.max_iterations) +
                " steps");
  }
  Interpretation model = trace.final();
  const auto check = check_stable(program, model, cfg);
  if (!check.stable) {
    throw Error("T_P limit failed the stability check (distance " +
                format_number(check.distance) + ")");
  }
  return {std::move(model), std::move(trace)};
}

double empirical_contraction_check(const Program& program, std::size_t samples,
                                   std::uint64_t seed) {
  const auto bounds = head_weight_bounds(program);
  const detail::CompiledProgram compiled(program);
  const std::size_t n = bounds.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&](std::vector<TruthValue>& out) {
    for (std::size_t s = 0; s < n; ++s) {
      const double hi = u(rng) * bounds[s].bound.hi();
      const double lo = u(rng) * std::min(hi, bounds[s].bound.lo());
      out[s] = TruthValue::interval(lo, hi);
    }
  };

  std::vector<TruthValue> j1(n), j2(n), n1(n), n2(n), t1(n), t2(n);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    draw(j1);
    draw(j2);
    const double d = detail::sup_distance(j1, j2);
    if (d == 0.0) continue;
    detail::negate_all(j1, n1);
    detail::negate_all(j2, n2);
    compiled.consequences(j1, n1, t1);
    compiled.consequences(j2, n2, t2);
    worst = std::max(worst, detail::sup_distance(t1, t2) / d);
  }
  return worst;
}

}  // namespace manlp
