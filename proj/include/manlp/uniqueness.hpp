#pragma once

// Contractivity certificate for interval programs whose rules use ei
// implications and componentwise-product bodies. A passing certificate
// means T_P is a contraction below I_ϑ and the program has exactly one
// stable model, reachable by iterating T_P from I_⊥.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "manlp/engine.hpp"
#include "manlp/semantics.hpp"
#include "manlp/syntax.hpp"

namespace manlp {

struct HeadBound {
  std::string symbol;
  /// Componentwise max of the weights of rules with this head; [0,0] if none.
  TruthValue bound;
};

struct Violation {
  /// Index into program.rules(), or npos for program-level problems.
  std::size_t rule;
  std::string reason;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct EligibilityReport {
  std::vector<Violation> violations;
  bool eligible() const noexcept { return violations.empty(); }
};

struct Lambdas {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct RuleCertificate {
  std::size_t rule = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  /// lambda1 < 1 and lambda2 < 1.
  bool passes = false;
};

struct CertificateReport {
  bool eligible = false;
  std::vector<Violation> violations;
  std::vector<RuleCertificate> per_rule;
  std::vector<HeadBound> head_bounds;
  /// Empty when the program is not eligible.
  std::optional<bool> verdict;
  /// Every lambda2 < 1, ignoring lambda1.
  std::optional<bool> lambda2_verdict;
  /// max over rules of max(lambda1, lambda2); 0 for the empty program.
  double global_lipschitz = 0.0;
};

/// Checks the program shape: interval lattice, ei implications, bodies that
/// are `*`-products of atoms and negated atoms (or the constant [1,1]).
EligibilityReport eligible(const Program& program);

/// One entry per program symbol, in symbol order.
std::vector<HeadBound> head_weight_bounds(const Program& program);

/// I_ϑ: each symbol mapped to its head bound.
Interpretation bound_interpretation(const Program& program);

/// Lipschitz bounds of one rule evaluated at I_ϑ, with 0^0 = 1 and empty
/// products equal to 1. Throws ValidationError for ineligible rules and
/// SymbolMismatch when `bounds` misses a body atom.
Lambdas rule_lambdas(const Rule& rule, std::span<const HeadBound> bounds);

CertificateReport certify(const Program& program);

struct UniqueSolution {
  Interpretation model;
  FixpointTrace trace;
};

/// Iterates T_P from I_⊥ and verifies the limit with is_stable. Throws
/// UncertifiedError unless certify(program).verdict is true, and Error
/// when the iteration fails to converge or the limit is not stable.
UniqueSolution solve_unique(const Program& program, const FixpointConfig& cfg = {});

/// Largest observed sup_norm(tp(J1), tp(J2)) / sup_norm(J1, J2) over
/// `samples` random pairs J1, J2 ⊑ I_ϑ. Identical pairs are skipped.
double empirical_contraction_check(const Program& program, std::size_t samples,
                                   std::uint64_t seed);

}  // namespace manlp
