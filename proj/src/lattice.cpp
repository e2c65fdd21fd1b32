#include "manlp/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <charconv>
#include <cmath>
#include <system_error>

namespace manlp {

namespace {

bool in_unit_range(double v) noexcept { return v >= 0.0 && v <= 1.0; }

void require_same_kind(const TruthValue& a, const TruthValue& b, std::string_view op) {
  if (a.kind() != b.kind()) {
    throw DomainError(std::string(op) + ": mixes " + std::string(to_string(a.kind())) + " and " +
                      std::string(to_string(b.kind())) + " values");
  }
}

void require_kind(const TruthValue& a, LatticeKind kind, std::string_view op) {
  if (a.kind() != kind) {
    throw DomainError(std::string(op) + ": expected a " + std::string(to_string(kind)) +
                      " value, got " + to_string(a));
  }
}

void require_unit(const TruthValue& a, const TruthValue& b, std::string_view op) {
  require_kind(a, LatticeKind::unit_interval, op);
  require_kind(b, LatticeKind::unit_interval, op);
}

void require_interval(const TruthValue& a, const TruthValue& b, std::string_view op) {
  require_kind(a, LatticeKind::subinterval, op);
  require_kind(b, LatticeKind::subinterval, op);
}

template <class F>
TruthValue fold(std::span<const TruthValue> args, std::string_view name, F&& combine) {
  if (args.empty()) {
    throw ArityError(std::string(name) + ": needs at least one argument");
  }
  for (const auto& a : args.subspan(1)) require_same_kind(args.front(), a, name);
  return combine();
}

TruthValue make(LatticeKind kind, double lo, double hi) {
  return kind == LatticeKind::unit_interval ? TruthValue::unit(lo) : TruthValue::interval(lo, hi);
}

}  // namespace

std::string_view to_string(LatticeKind kind) noexcept {
  return kind == LatticeKind::unit_interval ? "unit" : "interval";
}

TruthValue TruthValue::unit(double v) {
  if (!in_unit_range(v)) {
    throw DomainError("unit truth value out of [0,1]: " + format_number(v));
  }
  return TruthValue(LatticeKind::unit_interval, v, v);
}

TruthValue TruthValue::interval(double lo, double hi) {
  if (!(in_unit_range(lo) && in_unit_range(hi) && lo <= hi)) {
    throw DomainError("not a subinterval of [0,1]: [" + format_number(lo) + "," +
                      format_number(hi) + "]");
  }
  return TruthValue(LatticeKind::subinterval, lo, hi);
}

TruthValue TruthValue::bottom(LatticeKind kind) noexcept { return TruthValue(kind, 0.0, 0.0); }
TruthValue TruthValue::top(LatticeKind kind) noexcept { return TruthValue(kind, 1.0, 1.0); }

double TruthValue::value() const {
  if (!is_unit()) throw DomainError("value(): " + to_string(*this) + " is an interval");
  return lo_;
}

std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string to_string(const TruthValue& v) {
  if (v.is_unit()) return format_number(v.lo());
  return "[" + format_number(v.lo()) + "," + format_number(v.hi()) + "]";
}

void require_valid(const EiParams& p) {
  if (!p.valid()) {
    throw DomainError("invalid ei parameters (" + std::to_string(p.alpha) + "," +
                      std::to_string(p.beta) + "," + std::to_string(p.gamma) + "," +
                      std::to_string(p.delta) + "): need all >= 1, beta <= alpha, delta <= gamma");
  }
}

std::string implication_tag(const AdjointLabel& label) {
  switch (label.family) {
    case PairFamily::godel: return "G";
    case PairFamily::product: return "P";
    case PairFamily::lukasiewicz: return "L";
    case PairFamily::ei:
      return "ei(" + std::to_string(label.ei.alpha) + "," + std::to_string(label.ei.beta) + "," +
             std::to_string(label.ei.gamma) + "," + std::to_string(label.ei.delta) + ")";
  }
  return "?";
}

std::string connective_token(const AdjointLabel& label) {
  if (label.family == PairFamily::ei) return "*";
  return "&" + implication_tag(label);
}

bool leq(const TruthValue& a, const TruthValue& b) {
  require_same_kind(a, b, "leq");
  return a.lo() <= b.lo() && a.hi() <= b.hi();
}

TruthValue join(const TruthValue& a, const TruthValue& b) {
  require_same_kind(a, b, "join");
  return make(a.kind(), std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

TruthValue meet(const TruthValue& a, const TruthValue& b) {
  require_same_kind(a, b, "meet");
  return make(a.kind(), std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

TruthValue sup(LatticeKind kind, std::span<const TruthValue> values) {
  TruthValue acc = TruthValue::bottom(kind);
  for (const auto& v : values) acc = join(acc, v);
  return acc;
}

TruthValue godel_and(const TruthValue& x, const TruthValue& y) {
  require_unit(x, y, "godel_and");
  return TruthValue::unit(std::min(x.lo(), y.lo()));
}

TruthValue product_and(const TruthValue& x, const TruthValue& y) {
  require_unit(x, y, "product_and");
  return TruthValue::unit(x.lo() * y.lo());
}

TruthValue lukasiewicz_and(const TruthValue& x, const TruthValue& y) {
  require_unit(x, y, "lukasiewicz_and");
  return TruthValue::unit(std::clamp(x.lo() + y.lo() - 1.0, 0.0, 1.0));
}

namespace {

/// The largest x in [0,1] with conj(x) <= z, starting from the analytic
/// estimate r. conj must be nondecreasing; the result is then the exact
/// residuum of the floating-point conjunctor.
template <class Conj>
double snap_residuum(double r, double z, Conj&& conj) {
  // Nonnegative doubles order like their bit patterns, so search over those.
  const auto bits = [](double x) { return std::bit_cast<std::uint64_t>(x); };
  const auto from = [](std::uint64_t b) { return std::bit_cast<double>(b); };
  const std::uint64_t one = bits(1.0);
  std::uint64_t start = bits(std::clamp(r, 0.0, 1.0));
  if (conj(1.0) <= z) return 1.0;
  // Invariant: conj(from(lo)) <= z < conj(from(hi)).
  std::uint64_t lo = 0;
  std::uint64_t hi = one;
  if (conj(from(start)) <= z) {
    lo = start;
    for (std::uint64_t step = 1; lo < one; step *= 2) {
      const std::uint64_t probe = std::min(one, lo + step);
      if (conj(from(probe)) > z) {
        hi = probe;
        break;
      }
      lo = probe;
    }
  } else {
    hi = start;
    for (std::uint64_t step = 1; hi > 0; step *= 2) {
      const std::uint64_t probe = hi > step ? hi - step : 0;
      if (conj(from(probe)) <= z) {
        lo = probe;
        break;
      }
      hi = probe;
    }
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (conj(from(mid)) <= z ? lo : hi) = mid;
  }
  return from(lo);
}

}  // namespace

TruthValue godel_imp(const TruthValue& z, const TruthValue& y) {
  require_unit(z, y, "godel_imp");
  return TruthValue::unit(y.lo() <= z.lo() ? 1.0 : z.lo());
}

TruthValue product_imp(const TruthValue& z, const TruthValue& y) {
  require_unit(z, y, "product_imp");
  const double yv = y.lo();
  if (yv <= z.lo()) return TruthValue::unit(1.0);
  return TruthValue::unit(
      snap_residuum(z.lo() / yv, z.lo(), [yv](double x) { return x * yv; }));
}

TruthValue lukasiewicz_imp(const TruthValue& z, const TruthValue& y) {
  require_unit(z, y, "lukasiewicz_imp");
  const double yv = y.lo();
  return TruthValue::unit(snap_residuum(1.0 - yv + z.lo(), z.lo(), [yv](double x) {
    return std::clamp(x + yv - 1.0, 0.0, 1.0);
  }));
}

double ipow(double base, unsigned exponent) noexcept {
  double result = 1.0;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

TruthValue ei_product(const EiParams& p, const TruthValue& x, const TruthValue& y) {
  require_valid(p);
  require_interval(x, y, "ei_product");
  return TruthValue::interval(ipow(x.lo(), p.alpha) * ipow(y.lo(), p.gamma),
                              ipow(x.hi(), p.beta) * ipow(y.hi(), p.delta));
}

TruthValue ei_residuum(const EiParams& p, const TruthValue& z, const TruthValue& y) {
  require_valid(p);
  require_interval(z, y, "ei_residuum");
  // Each endpoint bound solves x^e * y^f <= z for x; a zero antecedent
  // leaves x unconstrained.
  auto bound = [](double zc, double yc, unsigned x_exp, unsigned y_exp) {
    const double c = ipow(yc, y_exp);
    if (c <= zc) return 1.0;
    const double ratio = zc / c;
    return snap_residuum(x_exp == 1 ? ratio : std::pow(ratio, 1.0 / x_exp), zc,
                         [c, x_exp](double x) { return ipow(x, x_exp) * c; });
  };
  const double u = bound(z.lo(), y.lo(), p.alpha, p.gamma);
  const double v = bound(z.hi(), y.hi(), p.beta, p.delta);
  return TruthValue::interval(std::min(u, v), v);
}

TruthValue conjoin(const AdjointLabel& label, const TruthValue& x, const TruthValue& y) {
  switch (label.family) {
    case PairFamily::godel: return godel_and(x, y);
    case PairFamily::product: return product_and(x, y);
    case PairFamily::lukasiewicz: return lukasiewicz_and(x, y);
    case PairFamily::ei: return ei_product(label.ei, x, y);
  }
  throw DomainError("unknown adjoint pair");
}

TruthValue implies(const AdjointLabel& label, const TruthValue& z, const TruthValue& y) {
  switch (label.family) {
    case PairFamily::godel: return godel_imp(z, y);
    case PairFamily::product: return product_imp(z, y);
    case PairFamily::lukasiewicz: return lukasiewicz_imp(z, y);
    case PairFamily::ei: return ei_residuum(label.ei, z, y);
  }
  throw DomainError("unknown adjoint pair");
}

TruthValue negate(const TruthValue& x) {
  if (x.is_unit()) return TruthValue::unit(1.0 - x.lo());
  return TruthValue::interval(1.0 - x.hi(), 1.0 - x.lo());
}

TruthValue negate(LatticeKind kind, const TruthValue& x) {
  require_kind(x, kind, "negate");
  return negate(x);
}

TruthValue agg_min(std::span<const TruthValue> args) {
  return fold(args, "@min", [&] {
    TruthValue acc = args.front();
    for (const auto& a : args.subspan(1)) acc = meet(acc, a);
    return acc;
  });
}

TruthValue agg_max(std::span<const TruthValue> args) {
  return fold(args, "@max", [&] {
    TruthValue acc = args.front();
    for (const auto& a : args.subspan(1)) acc = join(acc, a);
    return acc;
  });
}

TruthValue agg_mean(std::span<const TruthValue> args) {
  return fold(args, "@mean", [&] {
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& a : args) {
      lo += a.lo();
      hi += a.hi();
    }
    const auto n = static_cast<double>(args.size());
    // Rounding can push a mean of equal endpoints a hair apart; keep it inside.
    lo = std::clamp(lo / n, 0.0, 1.0);
    hi = std::clamp(hi / n, 0.0, 1.0);
    return make(args.front().kind(), std::min(lo, hi), hi);
  });
}

LatticeSignature::LatticeSignature(LatticeKind kind) : kind_(kind) {
  aggregators_.emplace("min", &agg_min);
  aggregators_.emplace("max", &agg_max);
  aggregators_.emplace("mean", &agg_mean);
}

const LatticeSignature& LatticeSignature::unit_interval() {
  static const LatticeSignature sig(LatticeKind::unit_interval);
  return sig;
}

const LatticeSignature& LatticeSignature::subinterval() {
  static const LatticeSignature sig(LatticeKind::subinterval);
  return sig;
}

const LatticeSignature& LatticeSignature::of(LatticeKind kind) {
  return kind == LatticeKind::unit_interval ? unit_interval() : subinterval();
}

bool LatticeSignature::has_pair(const AdjointLabel& label) const noexcept {
  if (label.domain() != kind_) return false;
  return label.family != PairFamily::ei || label.ei.valid();
}

std::optional<AdjointPair> LatticeSignature::pair(const AdjointLabel& label) const {
  if (!has_pair(label)) return std::nullopt;
  return AdjointPair{
      [label](const TruthValue& x, const TruthValue& y) { return conjoin(label, x, y); },
      [label](const TruthValue& z, const TruthValue& y) { return implies(label, z, y); }};
}

Aggregator LatticeSignature::aggregator(std::string_view name) const noexcept {
  auto it = aggregators_.find(name);
  return it == aggregators_.end() ? nullptr : it->second;
}

}  // namespace manlp
