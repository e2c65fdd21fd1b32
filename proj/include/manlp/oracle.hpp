#pragma once

// Exhaustive grid searches used to cross-check the analytic engine on
// small instances.

#include <cstddef>
#include <vector>

#include "manlp/engine.hpp"
#include "manlp/lattice.hpp"
#include "manlp/semantics.hpp"
#include "manlp/syntax.hpp"

namespace manlp {

struct GridSpec {
  /// Grid step is 1/resolution.
  std::size_t resolution = 10;
  /// Refuse enumerations larger than this many points.
  double max_points = 1e7;

  /// Throws std::invalid_argument unless resolution >= 1 and max_points > 0.
  void validate() const;
  double step() const noexcept { return 1.0 / static_cast<double>(resolution); }
};

/// Grid values per symbol: N+1 on the unit lattice, (N+1)(N+2)/2 on intervals.
double grid_values_per_symbol(LatticeKind kind, std::size_t resolution);

struct Cluster {
  /// The member closest to its own R-image.
  Interpretation representative;
  std::vector<Interpretation> members;
};

struct OracleResult {
  /// In canonical order of representatives.
  std::vector<Cluster> clusters;
  std::size_t points = 0;
  std::size_t accepted = 0;
  /// Points whose reduct fixpoint did not converge within the budget.
  std::size_t undecided = 0;

  std::vector<Interpretation> representatives() const;
};

/// All grid interpretations I with sup_norm(lfp(T_{P_I}), I) <= 1/N,
/// clustered by single linkage at distance 2/N. Symbols that head no rule
/// are fixed at bottom, since every stable model assigns them bottom; the
/// budget counts the remaining symbols only. Throws BudgetExceeded.
OracleResult brute_force_stable(const Program& program, const GridSpec& grid,
                                const FixpointConfig& cfg = {});

/// The greatest grid interval x with ei_product(p, x, y) <= z.
TruthValue brute_force_residuum(const EiParams& p, const TruthValue& z, const TruthValue& y,
                                const GridSpec& grid);

/// True iff no grid interpretation J ⊑ m with J != m is a model of the
/// program. Throws BudgetExceeded.
bool minimality_check(const Program& program, const Interpretation& m, const GridSpec& grid);

}  // namespace manlp
