#include "manlp/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "detail/eval.hpp"
#include "detail/fixpoint.hpp"

namespace manlp {

namespace detail {

KleeneOutcome iterate(const CompiledProgram& program, std::span<const TruthValue> start,
                      const FixpointConfig& cfg, const KleeneOptions& options) {
  const std::size_t n = program.symbol_count();
  std::vector<TruthValue> cur(start.begin(), start.end());
  std::vector<TruthValue> next(n);
  std::vector<TruthValue> negated(n);
  if (options.record != nullptr) options.record->push_back(cur);

  KleeneOutcome out;
  for (std::size_t k = 0; k < cfg.max_iterations; ++k) {
    if (options.freeze) {
      program.consequences(cur, options.frozen_negated, next);
    } else {
      negate_all(cur, negated);
      program.consequences(cur, negated, next);
    }
    out.residual = sup_distance(cur, next);
    out.steps = k + 1;
    std::swap(cur, next);
    if (options.record != nullptr) options.record->push_back(cur);
    if (!options.ceiling.empty()) {
      for (std::size_t s = 0; s < n; ++s) {
        if (cur[s].lo() > options.ceiling[s].lo() || cur[s].hi() > options.ceiling[s].hi()) {
          out.status = KleeneStatus::above_ceiling;
          out.final = std::move(cur);
          return out;
        }
      }
    }
    if (out.residual <= cfg.tolerance) {
      out.status = KleeneStatus::converged;
      out.final = std::move(cur);
      return out;
    }
  }
  out.status = KleeneStatus::budget_exhausted;
  out.final = std::move(cur);
  return out;
}

KleeneOutcome reduct_least_fixpoint(const CompiledProgram& program,
                                    std::span<const TruthValue> values, const FixpointConfig& cfg,
                                    std::span<const TruthValue> ceiling) {
  std::vector<TruthValue> negated(values.size());
  negate_all(values, negated);
  const std::vector<TruthValue> start(program.symbol_count(), TruthValue::bottom(program.kind()));
  KleeneOptions options;
  options.frozen_negated = negated;
  options.freeze = true;
  options.ceiling = ceiling;
  return iterate(program, start, cfg, options);
}

}  // namespace detail

namespace {

FixpointTrace to_trace(LatticeKind kind, const std::shared_ptr<const Interpretation::SymbolTable>& table,
                       std::vector<std::vector<TruthValue>>&& record,
                       const detail::KleeneOutcome& outcome) {
  FixpointTrace trace;
  trace.iterates.reserve(record.size());
  for (auto& values : record) {
    trace.iterates.push_back(Interpretation::from_values(kind, table, std::move(values)));
  }
  trace.converged = outcome.status == detail::KleeneStatus::converged;
  trace.residual = outcome.residual;
  return trace;
}

std::vector<TruthValue> to_vector(const Interpretation& i) {
  return {i.values().begin(), i.values().end()};
}

BodyExpr substitute_negations(const BodyExpr& b, const Interpretation& i) {
  return std::visit(
      detail::overloaded{
          [&](const body::NegProp& p) { return BodyExpr::constant(negate(i.at(p.atom))); },
          [&](const body::Conn& c) {
            return BodyExpr::conn(c.op, substitute_negations(c.operands[0], i),
                                  substitute_negations(c.operands[1], i));
          },
          [&](const body::Agg& a) {
            std::vector<BodyExpr> args;
            args.reserve(a.args.size());
            for (const auto& x : a.args) args.push_back(substitute_negations(x, i));
            return BodyExpr::agg(a.name, std::move(args));
          },
          [&](const auto&) { return b; },
      },
      b.node);
}

}  // namespace

void FixpointConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("fixpoint tolerance must be positive");
  if (max_iterations == 0) throw std::invalid_argument("fixpoint budget must be at least 1");
}

std::size_t FixpointTrace::effective_steps(double tolerance) const {
  std::size_t count = 0;
  for (std::size_t k = 1; k < iterates.size(); ++k) {
    if (sup_norm(iterates[k - 1], iterates[k]) > tolerance) ++count;
  }
  return count;
}

double sup_norm(const Interpretation& i, const Interpretation& j) {
  if (i.kind() != j.kind() || !i.same_symbols(j)) {
    throw SymbolMismatch("sup_norm: interpretations over different symbols or lattices");
  }
  return detail::sup_distance(i.values(), j.values());
}

Interpretation tp(const Program& program, const Interpretation& i) {
  require_matches(program, i);
  const detail::CompiledProgram compiled(program);
  std::vector<TruthValue> negated(i.size());
  std::vector<TruthValue> out(i.size());
  detail::negate_all(i.values(), negated);
  compiled.consequences(i.values(), negated, out);
  return Interpretation::from_values(program.kind(), i.symbol_table(), std::move(out));
}

Program reduct(const Program& program, const Interpretation& i) {
  require_matches(program, i);
  std::vector<Rule> rules;
  rules.reserve(program.rules().size());
  for (const auto& r : program.rules()) {
    rules.push_back({r.head, r.label, substitute_negations(r.body, i), r.weight});
  }
  return Program::make(program.kind(), std::move(rules), program.symbols());
}

FixpointTrace iterate_tp(const Program& program, const Interpretation& start,
                         const FixpointConfig& cfg) {
  cfg.validate();
  require_matches(program, start);
  const detail::CompiledProgram compiled(program);
  std::vector<std::vector<TruthValue>> record;
  detail::KleeneOptions options;
  options.record = &record;
  const auto outcome = detail::iterate(compiled, start.values(), cfg, options);
  return to_trace(program.kind(), start.symbol_table(), std::move(record), outcome);
}

FixpointTrace least_fixpoint(const Program& program, const FixpointConfig& cfg) {
  if (!program.is_positive()) {
    throw NotPositiveError("least_fixpoint needs a positive program; take a reduct first");
  }
  return iterate_tp(program, Interpretation::bottom(program), cfg);
}

StabilityCheck check_stable(const Program& program, const Interpretation& i,
                            const FixpointConfig& cfg, double check_tol) {
  cfg.validate();
  require_matches(program, i);
  const detail::CompiledProgram compiled(program);
  auto outcome = detail::reduct_least_fixpoint(compiled, i.values(), cfg);
  const bool converged = outcome.status == detail::KleeneStatus::converged;
  const double distance = detail::sup_distance(outcome.final, i.values());
  return {converged && distance <= check_tol, converged, distance,
          Interpretation::from_values(program.kind(), i.symbol_table(), std::move(outcome.final))};
}

bool is_stable(const Program& program, const Interpretation& i, const FixpointConfig& cfg,
               double check_tol) {
  return check_stable(program, i, cfg, check_tol).stable;
}

Interpretation r_operator(const Program& program, const Interpretation& i,
                          const FixpointConfig& cfg) {
  return check_stable(program, i, cfg).least_model_of_reduct;
}

std::vector<Interpretation> SearchResult::distinct(double tol) const {
  std::vector<Interpretation> out;
  for (const auto& m : models) {
    const bool seen = std::ranges::any_of(
        out, [&](const Interpretation& o) { return sup_norm(o, m.model) <= tol; });
    if (!seen) out.push_back(m.model);
  }
  return out;
}

SearchResult stable_search(const Program& program, const FixpointConfig& cfg,
                           std::span<const Interpretation> starts, double check_tol) {
  cfg.validate();
  const detail::CompiledProgram compiled(program);
  SearchResult result;
  result.diagnostics.starts = starts.size();

  for (std::size_t s = 0; s < starts.size(); ++s) {
    const Interpretation& start = starts[s];
    require_matches(program, start);
    std::vector<std::vector<TruthValue>> record{to_vector(start)};
    bool converged = false;
    bool cycled = false;
    double residual = 0.0;
    for (std::size_t k = 0; k < cfg.max_iterations; ++k) {
      auto inner = detail::reduct_least_fixpoint(compiled, record.back(), cfg);
      if (inner.status != detail::KleeneStatus::converged) break;
      residual = detail::sup_distance(record.back(), inner.final);
      record.push_back(std::move(inner.final));
      if (residual <= cfg.tolerance) {
        converged = true;
        break;
      }
      // R is deterministic, so an exact repeat is a genuine period-2 orbit.
      if (record.size() >= 3 && record.back() == record[record.size() - 3]) {
        cycled = true;
        break;
      }
    }
    if (!converged && !cycled && record.size() >= 3) {
      cycled = detail::sup_distance(record.back(), record[record.size() - 3]) <= cfg.tolerance;
    }

    detail::KleeneOutcome summary;
    summary.status = converged ? detail::KleeneStatus::converged
                               : detail::KleeneStatus::budget_exhausted;
    summary.residual = residual;
    FixpointTrace trace =
        to_trace(program.kind(), start.symbol_table(), std::move(record), summary);
    if (!converged) {
      ++result.diagnostics.non_converged;
      if (cycled) ++result.diagnostics.cycles;
      continue;
    }
    ++result.diagnostics.converged;
    Interpretation limit = trace.final();
    if (!is_stable(program, limit, cfg, check_tol)) {
      ++result.diagnostics.rejected;
      continue;
    }
    result.models.push_back({std::move(limit), std::move(trace), s});
  }

  std::ranges::stable_sort(result.models, [](const StableModel& a, const StableModel& b) {
    return canonical_less(a.model, b.model);
  });
  return result;
}

Interpretation random_interpretation(const Program& program, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<TruthValue> values;
  values.reserve(program.symbols().size());
  for (std::size_t k = 0; k < program.symbols().size(); ++k) {
    if (program.kind() == LatticeKind::unit_interval) {
      values.push_back(TruthValue::unit(u(rng)));
    } else {
      const double a = u(rng);
      const double b = u(rng);
      values.push_back(TruthValue::interval(std::min(a, b), std::max(a, b)));
    }
  }
  return Interpretation::from_values(program.kind(), symbol_table_of(program), std::move(values));
}

std::vector<Interpretation> default_starts(const Program& program, std::uint64_t seed,
                                           std::size_t random_count) {
  std::vector<Interpretation> starts{Interpretation::bottom(program), Interpretation::top(program)};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < random_count; ++k) {
    starts.push_back(random_interpretation(program, rng));
  }
  return starts;
}

std::vector<Program> partition(const Program& program) {
  std::vector<Program> parts;
  parts.reserve(program.rules().size());
  for (const auto& r : program.rules()) {
    parts.push_back(Program::make(program.kind(), {r}, program.symbols()));
  }
  return parts;
}

bool canonical_less(const Interpretation& a, const Interpretation& b) {
  const auto x = a.values();
  const auto y = b.values();
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
    if (x[k].lo() != y[k].lo()) return x[k].lo() < y[k].lo();
    if (x[k].hi() != y[k].hi()) return x[k].hi() < y[k].hi();
  }
  return x.size() < y.size();
}

}  // namespace manlp
