#pragma once

// Truth-value domains for multi-adjoint normal programs: the unit interval
// [0,1] and the lattice C([0,1]) of closed subintervals, with their adjoint
// pairs, negations and aggregators.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "manlp/error.hpp"

namespace manlp {

enum class LatticeKind : std::uint8_t { unit_interval, subinterval };

std::string_view to_string(LatticeKind kind) noexcept;

/// A lattice element. Unit values are stored with lo == hi so that the
/// componentwise operations below serve both lattices; the kind tag keeps
/// the two domains from ever mixing.
class TruthValue {
public:
  /// Unit-interval bottom.
  TruthValue() noexcept = default;

  static TruthValue unit(double v);
  static TruthValue interval(double lo, double hi);
  static TruthValue bottom(LatticeKind kind) noexcept;
  static TruthValue top(LatticeKind kind) noexcept;

  LatticeKind kind() const noexcept { return kind_; }
  bool is_unit() const noexcept { return kind_ == LatticeKind::unit_interval; }
  bool is_interval() const noexcept { return kind_ == LatticeKind::subinterval; }

  /// Scalar value; DomainError on an interval.
  double value() const;
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  friend bool operator==(const TruthValue&, const TruthValue&) = default;

private:
  TruthValue(LatticeKind kind, double lo, double hi) noexcept : kind_(kind), lo_(lo), hi_(hi) {}

  LatticeKind kind_ = LatticeKind::unit_interval;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);
/// "0.7" or "[0.1,0.4]", round-trippable through the program parser.
std::string to_string(const TruthValue& v);

/// Exponents of an exponential interval product &^{alpha gamma}_{beta delta}.
struct EiParams {
  unsigned alpha = 1;
  unsigned beta = 1;
  unsigned gamma = 1;
  unsigned delta = 1;

  bool valid() const noexcept {
    return alpha >= 1 && beta >= 1 && gamma >= 1 && delta >= 1 && beta <= alpha && delta <= gamma;
  }
  bool is_componentwise_product() const noexcept {
    return alpha == 1 && beta == 1 && gamma == 1 && delta == 1;
  }

  friend bool operator==(const EiParams&, const EiParams&) = default;
  friend auto operator<=>(const EiParams&, const EiParams&) = default;
};

/// Throws DomainError unless p.valid().
void require_valid(const EiParams& p);

enum class PairFamily : std::uint8_t { godel, product, lukasiewicz, ei };

/// Names an adjoint pair. The ei family is parameterised by its exponents;
/// the other families ignore `ei`.
struct AdjointLabel {
  PairFamily family = PairFamily::godel;
  EiParams ei{};

  static AdjointLabel godel() noexcept { return {PairFamily::godel, {}}; }
  static AdjointLabel product() noexcept { return {PairFamily::product, {}}; }
  static AdjointLabel lukasiewicz() noexcept { return {PairFamily::lukasiewicz, {}}; }
  static AdjointLabel ei_pair(EiParams p) noexcept { return {PairFamily::ei, p}; }
  /// `*`, the componentwise interval product &^{11}_{11}.
  static AdjointLabel interval_product() noexcept { return {PairFamily::ei, {1, 1, 1, 1}}; }

  LatticeKind domain() const noexcept {
    return family == PairFamily::ei ? LatticeKind::subinterval : LatticeKind::unit_interval;
  }

  friend bool operator==(const AdjointLabel& a, const AdjointLabel& b) noexcept {
    return a.family == b.family && (a.family != PairFamily::ei || a.ei == b.ei);
  }
};

/// "G", "P", "L" or "ei(a,b,c,d)".
std::string implication_tag(const AdjointLabel& label);
/// "&G", "&P", "&L" or "*".
std::string connective_token(const AdjointLabel& label);

// ---- order ---------------------------------------------------------------

/// Lattice order; componentwise for intervals (a partial order).
bool leq(const TruthValue& a, const TruthValue& b);
TruthValue join(const TruthValue& a, const TruthValue& b);
TruthValue meet(const TruthValue& a, const TruthValue& b);
/// Supremum of a finite set; the empty set yields bottom.
TruthValue sup(LatticeKind kind, std::span<const TruthValue> values);

// ---- unit interval t-norms and residua -----------------------------------
// Implications take (consequent z, antecedent y), matching z <- y.

TruthValue godel_and(const TruthValue& x, const TruthValue& y);
TruthValue product_and(const TruthValue& x, const TruthValue& y);
TruthValue lukasiewicz_and(const TruthValue& x, const TruthValue& y);
TruthValue godel_imp(const TruthValue& z, const TruthValue& y);
TruthValue product_imp(const TruthValue& z, const TruthValue& y);
TruthValue lukasiewicz_imp(const TruthValue& z, const TruthValue& y);

// ---- subinterval lattice -------------------------------------------------

/// [x.lo^alpha * y.lo^gamma, x.hi^beta * y.hi^delta]
TruthValue ei_product(const EiParams& p, const TruthValue& x, const TruthValue& y);

/// Greatest x in C([0,1]) with ei_product(p, x, y) <= z.
TruthValue ei_residuum(const EiParams& p, const TruthValue& z, const TruthValue& y);

/// Integer power with 0^0 = 1.
double ipow(double base, unsigned exponent) noexcept;

// ---- dispatch by label ---------------------------------------------------

TruthValue conjoin(const AdjointLabel& label, const TruthValue& x, const TruthValue& y);
TruthValue implies(const AdjointLabel& label, const TruthValue& z, const TruthValue& y);

/// 1 - x on the unit interval, [1 - hi, 1 - lo] on intervals.
TruthValue negate(const TruthValue& x);
/// Same, with an explicit expected domain.
TruthValue negate(LatticeKind kind, const TruthValue& x);

// ---- aggregators ---------------------------------------------------------

TruthValue agg_min(std::span<const TruthValue> args);
TruthValue agg_max(std::span<const TruthValue> args);
TruthValue agg_mean(std::span<const TruthValue> args);

using Aggregator = TruthValue (*)(std::span<const TruthValue>);

/// A conjunctor/implication pair as closures over their parameters.
struct AdjointPair {
  std::function<TruthValue(const TruthValue&, const TruthValue&)> conj;
  std::function<TruthValue(const TruthValue&, const TruthValue&)> imp;
};

/// One of the two built-in multi-adjoint normal lattices. Label and
/// aggregator lookups are how programs are validated against a lattice.
class LatticeSignature {
public:
  static const LatticeSignature& unit_interval();
  static const LatticeSignature& subinterval();
  static const LatticeSignature& of(LatticeKind kind);

  LatticeKind kind() const noexcept { return kind_; }
  TruthValue bottom() const noexcept { return TruthValue::bottom(kind_); }
  TruthValue top() const noexcept { return TruthValue::top(kind_); }

  bool has_pair(const AdjointLabel& label) const noexcept;
  /// nullopt when the label does not resolve in this lattice.
  std::optional<AdjointPair> pair(const AdjointLabel& label) const;
  TruthValue negation(const TruthValue& x) const { return negate(kind_, x); }
  /// nullptr for unknown names.
  Aggregator aggregator(std::string_view name) const noexcept;
  const std::map<std::string, Aggregator, std::less<>>& aggregators() const noexcept {
    return aggregators_;
  }

private:
  explicit LatticeSignature(LatticeKind kind);

  LatticeKind kind_;
  std::map<std::string, Aggregator, std::less<>> aggregators_;
};

}  // namespace manlp
