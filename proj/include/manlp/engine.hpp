#pragma once

// Immediate consequence operator, reducts, fixpoint iteration and the
// stable-model search built on R(I) = lfp(T_{P_I}).

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "manlp/semantics.hpp"
#include "manlp/syntax.hpp"

namespace manlp {

struct FixpointConfig {
  /// Iteration stops once the sup-norm step is at most this.
  double tolerance = 1e-9;
  std::size_t max_iterations = 10000;

  /// Throws std::invalid_argument unless tolerance > 0 and max_iterations >= 1.
  void validate() const;
};

inline constexpr double default_check_tolerance = 1e-7;

struct FixpointTrace {
  /// iterates[0] is the start; iterates[k + 1] = F(iterates[k]).
  std::vector<Interpretation> iterates;
  bool converged = false;
  /// Sup-norm distance between the last two iterates.
  double residual = 0.0;

  const Interpretation& final() const { return iterates.back(); }
  /// Number of operator applications performed.
  std::size_t steps() const noexcept { return iterates.empty() ? 0 : iterates.size() - 1; }
  /// Steps that moved the iterate by more than `tolerance`.
  std::size_t effective_steps(double tolerance) const;
};

/// Sup-norm over symbols and, for intervals, over both endpoints.
double sup_norm(const Interpretation& i, const Interpretation& j);

/// T_P(I)(q) = sup { ϑ &_i Î(B) | <q <-_i B; ϑ> in P }.
Interpretation tp(const Program& program, const Interpretation& i);

/// P_I: every `not q` replaced by the constant ¬I(q). Keeps the symbol set.
Program reduct(const Program& program, const Interpretation& i);

/// Iterate T_P from `start` until the step is within tolerance or the
/// budget runs out. Works for normal programs too (no monotonicity assumed).
FixpointTrace iterate_tp(const Program& program, const Interpretation& start,
                         const FixpointConfig& cfg = {});

/// Kleene iteration from I_⊥. Throws NotPositiveError for programs with
/// default negation; non-convergence is reported through the trace.
FixpointTrace least_fixpoint(const Program& program, const FixpointConfig& cfg = {});

struct StabilityCheck {
  bool stable = false;
  /// False when lfp(T_{P_I}) did not converge within the budget.
  bool converged = false;
  /// sup_norm(lfp(T_{P_I}), I).
  double distance = 0.0;
  Interpretation least_model_of_reduct;
};

/// I is stable iff it equals (within check_tol) the least model of its reduct.
StabilityCheck check_stable(const Program& program, const Interpretation& i,
                            const FixpointConfig& cfg = {},
                            double check_tol = default_check_tolerance);
bool is_stable(const Program& program, const Interpretation& i, const FixpointConfig& cfg = {},
               double check_tol = default_check_tolerance);

/// R(I) = lfp(T_{P_I}).final.
Interpretation r_operator(const Program& program, const Interpretation& i,
                          const FixpointConfig& cfg = {});

struct StableModel {
  Interpretation model;
  /// The R-iteration that produced `model`.
  FixpointTrace trace;
  std::size_t start_index = 0;
};

struct SearchDiagnostics {
  std::size_t starts = 0;
  std::size_t converged = 0;
  /// Starts whose R-iteration ran out of budget or cycled.
  std::size_t non_converged = 0;
  /// Subset of non_converged where a 2-cycle I -> R(I) -> I was detected.
  std::size_t cycles = 0;
  /// Converged limits that then failed the is_stable verification.
  std::size_t rejected = 0;
};

struct SearchResult {
  /// Sorted canonically by symbol values (then start index).
  std::vector<StableModel> models;
  SearchDiagnostics diagnostics;

  /// Models with near-duplicates (within tol) removed, in canonical order.
  std::vector<Interpretation> distinct(double tol) const;
};

/// Run I_{k+1} = R(I_k) from each start. Every returned model passed
/// check_stable; an empty result means the search failed, not that no
/// stable model exists.
SearchResult stable_search(const Program& program, const FixpointConfig& cfg,
                           std::span<const Interpretation> starts,
                           double check_tol = default_check_tolerance);

/// Uniform random interpretation over the program's lattice.
Interpretation random_interpretation(const Program& program, std::mt19937_64& rng);

/// {I_⊥, I_⊤} followed by `random_count` random interpretations from `seed`.
std::vector<Interpretation> default_starts(const Program& program, std::uint64_t seed,
                                           std::size_t random_count = 8);

/// One single-rule program per rule, each over the full symbol set.
std::vector<Program> partition(const Program& program);

/// Lexicographic order on values (lo, then hi, per symbol).
bool canonical_less(const Interpretation& a, const Interpretation& b);

}  // namespace manlp
