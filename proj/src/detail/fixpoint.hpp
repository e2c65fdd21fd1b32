#pragma once

#include <optional>
#include <span>
#include <vector>

#include "detail/eval.hpp"
#include "manlp/engine.hpp"

namespace manlp::detail {

enum class KleeneStatus : std::uint8_t { converged, budget_exhausted, above_ceiling };

struct KleeneOutcome {
  std::vector<TruthValue> final;
  KleeneStatus status = KleeneStatus::budget_exhausted;
  double residual = 0.0;
  std::size_t steps = 0;
};

struct KleeneOptions {
  /// Negated atoms read these fixed values (already negated) instead of
  /// the current iterate: the fixpoint of the reduct P_I.
  std::span<const TruthValue> frozen_negated{};
  bool freeze = false;
  /// Stop with above_ceiling once some endpoint exceeds the ceiling.
  /// Only meaningful for increasing iterations.
  std::span<const TruthValue> ceiling{};
  /// Every iterate, start included, when non-null.
  std::vector<std::vector<TruthValue>>* record = nullptr;
};

KleeneOutcome iterate(const CompiledProgram& program, std::span<const TruthValue> start,
                      const FixpointConfig& cfg, const KleeneOptions& options);

/// lfp(T_{P_I}) for I given by `values`, iterated from bottom.
KleeneOutcome reduct_least_fixpoint(const CompiledProgram& program,
                                    std::span<const TruthValue> values, const FixpointConfig& cfg,
                                    std::span<const TruthValue> ceiling = {});

}  // namespace manlp::detail
