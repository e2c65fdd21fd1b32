#include "manlp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "detail/eval.hpp"
#include "detail/fixpoint.hpp"

namespace manlp {

namespace {

constexpr double slack = 1e-9;

double grid_point(std::size_t i, std::size_t n) {
  return static_cast<double>(i) / static_cast<double>(n);
}

std::vector<TruthValue> grid_values(LatticeKind kind, std::size_t n) {
  std::vector<TruthValue> out;
  if (kind == LatticeKind::unit_interval) {
    for (std::size_t i = 0; i <= n; ++i) out.push_back(TruthValue::unit(grid_point(i, n)));
  } else {
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        out.push_back(TruthValue::interval(grid_point(i, n), grid_point(j, n)));
      }
    }
  }
  return out;
}

void require_budget(double points, const GridSpec& grid, const char* what) {
  if (points > grid.max_points) {
    throw BudgetExceeded(std::string(what) + ": grid of " + format_number(points) +
                             " points exceeds the budget of " + format_number(grid.max_points),
                         points);
  }
}

/// Visits every combination of choices[s][k], writing into `point`.
template <class Visit>
void enumerate(const std::vector<std::vector<TruthValue>>& choices,
               const std::vector<std::size_t>& slots, std::vector<TruthValue>& point,
               Visit&& visit) {
  std::vector<std::size_t> idx(slots.size(), 0);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (choices[s].empty()) return;
    point[slots[s]] = choices[s][0];
  }
  while (true) {
    if (!visit(std::as_const(point))) return;
    std::size_t s = 0;
    for (; s < slots.size(); ++s) {
      if (++idx[s] < choices[s].size()) {
        point[slots[s]] = choices[s][idx[s]];
        break;
      }
      idx[s] = 0;
      point[slots[s]] = choices[s][0];
    }
    if (s == slots.size()) return;
  }
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

void GridSpec::validate() const {
  if (resolution == 0) throw std::invalid_argument("grid resolution must be at least 1");
  if (!(max_points > 0)) throw std::invalid_argument("grid budget must be positive");
}

double grid_values_per_symbol(LatticeKind kind, std::size_t resolution) {
  const double n = static_cast<double>(resolution);
  return kind == LatticeKind::unit_interval ? n + 1 : (n + 1) * (n + 2) / 2;
}

std::vector<Interpretation> OracleResult::representatives() const {
  std::vector<Interpretation> out;
  for (const auto& c : clusters) out.push_back(c.representative);
  return out;
}

OracleResult brute_force_stable(const Program& program, const GridSpec& grid,
                                const FixpointConfig& cfg) {
  grid.validate();
  cfg.validate();
  const auto& symbols = program.symbols();
  std::vector<bool> live(symbols.size(), false);
  for (const auto& r : program.rules()) {
    live[std::ranges::lower_bound(symbols, r.head) - symbols.begin()] = true;
  }
  std::vector<std::size_t> slots;
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    if (live[s]) slots.push_back(s);
  }
  const double per_symbol = grid_values_per_symbol(program.kind(), grid.resolution);
  require_budget(std::pow(per_symbol, static_cast<double>(slots.size())), grid,
                 "brute_force_stable");

  const auto values = grid_values(program.kind(), grid.resolution);
  const std::vector<std::vector<TruthValue>> choices(slots.size(), values);
  const detail::CompiledProgram compiled(program);
  const double tol = grid.step() + slack;
  const auto bottom = TruthValue::bottom(program.kind());

  OracleResult result;
  std::vector<std::vector<TruthValue>> accepted;
  std::vector<double> distances;
  std::vector<TruthValue> point(symbols.size(), bottom);
  std::vector<TruthValue> ceiling(symbols.size(), bottom);
  enumerate(choices, slots, point, [&](const std::vector<TruthValue>& i) {
    ++result.points;
    for (std::size_t s = 0; s < i.size(); ++s) {
      const double lo = std::min(1.0, i[s].lo() + tol);
      const double hi = std::min(1.0, i[s].hi() + tol);
      ceiling[s] = program.kind() == LatticeKind::unit_interval ? TruthValue::unit(hi)
                                                                  : TruthValue::interval(lo, hi);
    }
    const auto outcome = detail::reduct_least_fixpoint(compiled, i, cfg, ceiling);
    if (outcome.status == detail::KleeneStatus::budget_exhausted) ++result.undecided;
    if (outcome.status != detail::KleeneStatus::converged) return true;
    const double d = detail::sup_distance(outcome.final, i);
    if (d <= tol) {
      accepted.push_back(i);
      distances.push_back(d);
    }
    return true;
  });
  result.accepted = accepted.size();

  UnionFind uf(accepted.size());
  const double link = 2.0 * grid.step() + slack;
  for (std::size_t a = 0; a < accepted.size(); ++a) {
    for (std::size_t b = a + 1; b < accepted.size(); ++b) {
      if (detail::sup_distance(accepted[a], accepted[b]) <= link) uf.unite(a, b);
    }
  }

  const auto table = symbol_table_of(program);
  auto make = [&](const std::vector<TruthValue>& v) {
    return Interpretation::from_values(program.kind(), table, v);
  };
  std::vector<std::size_t> root_to_cluster(accepted.size(), accepted.size());
  std::vector<std::size_t> best;
  for (std::size_t a = 0; a < accepted.size(); ++a) {
    const std::size_t root = uf.find(a);
    if (root_to_cluster[root] == accepted.size()) {
      root_to_cluster[root] = result.clusters.size();
      result.clusters.push_back({make(accepted[a]), {}});
      best.push_back(a);
    }
    const std::size_t c = root_to_cluster[root];
    result.clusters[c].members.push_back(make(accepted[a]));
    if (distances[a] < distances[best[c]]) {
      best[c] = a;
      result.clusters[c].representative = make(accepted[a]);
    }
  }
  std::ranges::sort(result.clusters, [](const Cluster& a, const Cluster& b) {
    return canonical_less(a.representative, b.representative);
  });
  return result;
}

TruthValue brute_force_residuum(const EiParams& p, const TruthValue& z, const TruthValue& y,
                                const GridSpec& grid) {
  grid.validate();
  require_valid(p);
  require_budget(grid_values_per_symbol(LatticeKind::subinterval, grid.resolution), grid,
                 "brute_force_residuum");
  const std::size_t n = grid.resolution;
  double best_lo = -1.0;
  double best_hi = -1.0;
  for (std::size_t i = 0; i <= grid.resolution; ++i) {
    for (std::size_t j = i; j <= grid.resolution; ++j) {
      const auto x = TruthValue::interval(grid_point(i, n), grid_point(j, n));
      if (!leq(ei_product(p, x, y), z)) continue;
      best_lo = std::max(best_lo, x.lo());
      best_hi = std::max(best_hi, x.hi());
    }
  }
  // [0,0] is always feasible since ei_product([0,0], y) = [0,0].
  return TruthValue::interval(best_lo, best_hi);
}

bool minimality_check(const Program& program, const Interpretation& m, const GridSpec& grid) {
  grid.validate();
  require_matches(program, m);
  const std::size_t n = grid.resolution;
  std::vector<std::vector<TruthValue>> choices;
  double points = 1.0;
  for (const auto& v : m.values()) {
    const auto top_lo = static_cast<std::size_t>(std::floor(v.lo() * n + slack));
    const auto top_hi = static_cast<std::size_t>(std::floor(v.hi() * n + slack));
    std::vector<TruthValue> below;
    if (m.kind() == LatticeKind::unit_interval) {
      for (std::size_t i = 0; i <= top_hi; ++i) below.push_back(TruthValue::unit(grid_point(i, n)));
    } else {
      for (std::size_t i = 0; i <= top_lo; ++i) {
        for (std::size_t j = i; j <= top_hi; ++j) {
          below.push_back(TruthValue::interval(grid_point(i, n), grid_point(j, n)));
        }
      }
    }
    points *= static_cast<double>(below.size());
    choices.push_back(std::move(below));
  }
  require_budget(points, grid, "minimality_check");

  std::vector<std::size_t> slots(m.size());
  std::iota(slots.begin(), slots.end(), 0);
  std::vector<TruthValue> point(m.size());
  bool minimal = true;
  enumerate(choices, slots, point, [&](const std::vector<TruthValue>& j) {
    if (detail::sup_distance(j, m.values()) <= slack) return true;
    const auto candidate = Interpretation::from_values(m.kind(), m.symbol_table(), j);
    if (is_model(program, candidate)) minimal = false;
    return minimal;
  });
  return minimal;
}

}  // namespace manlp
