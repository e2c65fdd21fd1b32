#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "manlp/lattice.hpp"
#include "manlp/oracle.hpp"

using namespace manlp;

namespace {

TruthValue U(double x) { return TruthValue::unit(x); }
TruthValue V(double lo, double hi) { return TruthValue::interval(lo, hi); }

void expect_near(const TruthValue& a, const TruthValue& b, double tol) {
  ASSERT_EQ(a.kind(), b.kind());
  EXPECT_NEAR(a.lo(), b.lo(), tol);
  EXPECT_NEAR(a.hi(), b.hi(), tol);
}

// Greatest x in [0,1] with f(x) <= z by bisection; f nondecreasing.
template <class F>
double bisect_max(F f, double z) {
  if (f(1.0) <= z) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= z ? lo : hi) = mid;
  }
  return lo;
}

// Residuum from the adjoint law alone, one endpoint at a time.
TruthValue reference_ei_residuum(const EiParams& p, const TruthValue& z, const TruthValue& y) {
  const double u = bisect_max(
      [&](double x) { return std::pow(x, p.alpha) * std::pow(y.lo(), p.gamma); }, z.lo());
  const double v = bisect_max(
      [&](double x) { return std::pow(x, p.beta) * std::pow(y.hi(), p.delta); }, z.hi());
  return V(std::min(u, v), v);
}

const std::vector<EiParams> sample_params{{1, 1, 1, 1}, {2, 1, 3, 2}, {2, 2, 2, 2},
                                          {3, 1, 2, 1}, {4, 2, 4, 3}, {4, 4, 1, 1}};

}  // namespace

TEST(TruthValue, ConstructionValidates) {
  EXPECT_THROW(U(-0.1), DomainError);
  EXPECT_THROW(U(1.5), DomainError);
  EXPECT_THROW(U(std::nan("")), DomainError);
  EXPECT_THROW(V(0.6, 0.5), DomainError);
  EXPECT_THROW(V(0.2, 1.01), DomainError);
  EXPECT_NO_THROW(V(0.3, 0.3));
  EXPECT_EQ(TruthValue::bottom(LatticeKind::subinterval), V(0, 0));
  EXPECT_EQ(TruthValue::top(LatticeKind::unit_interval), U(1));
  EXPECT_THROW((void)V(0.1, 0.2).value(), DomainError);
  EXPECT_EQ(U(0.25).value(), 0.25);
}

TEST(TruthValue, ToStringIsShortestRoundTrip) {
  EXPECT_EQ(to_string(U(0.7)), "0.7");
  EXPECT_EQ(to_string(U(1)), "1");
  EXPECT_EQ(to_string(V(0.05488, 0.405)), "[0.05488,0.405]");
  EXPECT_EQ(format_number(0.1 + 0.2), "0.30000000000000004");
}

TEST(Order, LeqJoinMeetAndSup) {
  EXPECT_TRUE(leq(V(0.1, 0.2), V(0.1, 0.4)));
  EXPECT_FALSE(leq(V(0.1, 0.4), V(0.2, 0.3)));
  EXPECT_FALSE(leq(V(0.2, 0.3), V(0.1, 0.4)));
  EXPECT_EQ(join(V(0.1, 0.2), V(0.05, 0.4)), V(0.1, 0.4));
  EXPECT_EQ(meet(V(0.1, 0.5), V(0.2, 0.4)), V(0.1, 0.4));
  const std::vector<TruthValue> xs{U(0.4), U(0.18)};
  EXPECT_EQ(sup(LatticeKind::unit_interval, xs), U(0.4));
  EXPECT_EQ(sup(LatticeKind::subinterval, {}), V(0, 0));
  EXPECT_THROW(leq(U(0.1), V(0.1, 0.2)), DomainError);
}

TEST(TNorms, PaperValues) {
  EXPECT_EQ(godel_and(U(0.7), U(0.6)), U(0.6));
  EXPECT_EQ(product_and(U(1.0), U(0.3)), U(0.3));
  EXPECT_EQ(lukasiewicz_and(U(0.4), U(0.5)), U(0.0));
  EXPECT_NEAR(product_imp(U(0.5), U(0.6)).value(), 0.5 / 0.6, 1e-15);
  EXPECT_EQ(godel_imp(U(0.4), U(0.5)), U(0.4));
  EXPECT_EQ(product_imp(U(0.3), U(0.0)), U(1.0));
  EXPECT_EQ(godel_imp(U(0.6), U(0.5)), U(1.0));
  EXPECT_NEAR(lukasiewicz_imp(U(0.2), U(0.7)).value(), 0.5, 1e-15);
  EXPECT_THROW(godel_and(U(0.1), V(0.1, 0.2)), DomainError);
  EXPECT_THROW(product_imp(V(0.1, 0.2), V(0.1, 0.2)), DomainError);
}

TEST(EiProduct, PaperValuesAndIdentities) {
  expect_near(ei_product({2, 1, 3, 2}, V(0.4, 0.5), V(0.7, 0.9)), V(0.05488, 0.405), 1e-15);
  expect_near(ei_product({1, 1, 1, 1}, V(0.2, 0.5), V(0.5, 0.6)), V(0.1, 0.3), 1e-15);
  const EiParams p{3, 2, 2, 1};
  expect_near(ei_product(p, V(1, 1), V(0.3, 0.8)), V(0.09, 0.8), 1e-15);
  EXPECT_THROW(ei_product({1, 2, 1, 1}, V(0, 1), V(0, 1)), DomainError);
  EXPECT_THROW(ei_product({1, 1, 0, 0}, V(0, 1), V(0, 1)), DomainError);
  EXPECT_THROW(ei_product(p, U(0.1), V(0, 1)), DomainError);
}

TEST(EiProduct, AlwaysAValidInterval) {
  testkit::Gen g(11);
  for (int k = 0; k < 5000; ++k) {
    const auto p = g.ei_params(5);
    const auto x = g.value(LatticeKind::subinterval);
    const auto y = g.value(LatticeKind::subinterval);
    const auto r = ei_product(p, x, y);
    EXPECT_LE(r.lo(), r.hi());
  }
}

TEST(EiResiduum, PaperValueAgainstOracles) {
  const EiParams p{2, 1, 3, 2};
  const auto z = V(0.05488, 0.405);
  const auto y = V(0.7, 0.9);
  const auto r = ei_residuum(p, z, y);
  expect_near(r, V(0.4, 0.5), 1e-9);
  expect_near(r, reference_ei_residuum(p, z, y), 1e-9);
  const auto grid = brute_force_residuum(p, z, y, GridSpec{1000});
  expect_near(r, grid, 1e-3);
}

TEST(EiResiduum, TrivialCases) {
  for (const auto& p : sample_params) {
    const double v = std::pow(0.7, 1.0 / p.beta);
    const double u = std::min(std::pow(0.2, 1.0 / p.alpha), v);
    expect_near(ei_residuum(p, V(0.2, 0.7), V(1, 1)), V(u, v), 1e-12);
    EXPECT_EQ(ei_residuum(p, V(0.3, 0.6), V(0, 0)), V(1, 1));
    EXPECT_EQ(ei_residuum(p, V(1, 1), V(0.5, 0.9)), V(1, 1));
  }
}

TEST(EiResiduum, MatchesBisectionReference) {
  testkit::Gen g(5);
  for (int k = 0; k < 2000; ++k) {
    const auto p = g.ei_params(4);
    const auto z = g.value(LatticeKind::subinterval);
    const auto y = g.value(LatticeKind::subinterval);
    expect_near(ei_residuum(p, z, y), reference_ei_residuum(p, z, y), 1e-9);
  }
}

TEST(Adjointness, ExactInFloatingPoint) {
  std::vector<AdjointLabel> labels{AdjointLabel::godel(), AdjointLabel::product(),
                                   AdjointLabel::lukasiewicz()};
  for (const auto& p : sample_params) labels.push_back(AdjointLabel::ei_pair(p));
  testkit::Gen g(3);
  for (const auto& label : labels) {
    const LatticeKind kind = label.domain();
    int failures = 0;
    for (int k = 0; k < 20000; ++k) {
      const auto x = g.coin(0.1) ? TruthValue::top(kind) : g.value(kind);
      const auto y = g.value(kind);
      const auto z = g.coin(0.1) ? y : g.value(kind);
      if (leq(x, implies(label, z, y)) != leq(conjoin(label, x, y), z)) ++failures;
    }
    EXPECT_EQ(failures, 0) << implication_tag(label);
  }
}

TEST(Adjointness, LukasiewiczAtTop) {
  // 1 + y - 1 rounds above y here, so (y <- y) must stay below 1.
  const double y = 0.77950266633440879;
  ASSERT_GT(lukasiewicz_and(U(1), U(y)).value(), y);
  EXPECT_LT(lukasiewicz_imp(U(y), U(y)).value(), 1.0);
  EXPECT_TRUE(leq(lukasiewicz_and(lukasiewicz_imp(U(y), U(y)), U(y)), U(y)));
}

TEST(Adjointness, ResiduumIsAttained) {
  // (z <- y) & y <= z: the residuum itself is feasible.
  std::vector<AdjointLabel> labels{AdjointLabel::product(), AdjointLabel::lukasiewicz()};
  for (const auto& p : sample_params) labels.push_back(AdjointLabel::ei_pair(p));
  testkit::Gen g(4);
  for (const auto& label : labels) {
    for (int k = 0; k < 5000; ++k) {
      const auto y = g.value(label.domain());
      const auto z = g.value(label.domain());
      EXPECT_TRUE(leq(conjoin(label, implies(label, z, y), y), z));
    }
  }
}

TEST(Boundary, TopIsNeutral) {
  testkit::Gen g(6);
  for (int k = 0; k < 2000; ++k) {
    const auto u = g.value(LatticeKind::unit_interval);
    const auto top = U(1);
    EXPECT_EQ(godel_and(top, u), u);
    EXPECT_EQ(godel_and(u, top), u);
    EXPECT_EQ(product_and(top, u), u);
    EXPECT_EQ(product_and(u, top), u);
    // x + 1 - 1 is not always x in binary floating point.
    EXPECT_NEAR(lukasiewicz_and(top, u).value(), u.value(), 1e-15);
    EXPECT_NEAR(lukasiewicz_and(u, top).value(), u.value(), 1e-15);

    const auto v = g.value(LatticeKind::subinterval);
    const auto itop = V(1, 1);
    EXPECT_EQ(ei_product({1, 1, 1, 1}, itop, v), v);
    EXPECT_EQ(ei_product({1, 1, 1, 1}, v, itop), v);
  }
}

TEST(Boundary, HigherExponentsAreNotNeutral) {
  // [1,1] & y = [y.lo^gamma, y.hi^delta], so [1,1] is a unit only for exponents 1.
  const auto v = V(0.5, 0.5);
  EXPECT_NE(ei_product({2, 1, 2, 1}, V(1, 1), v), v);
  EXPECT_NE(ei_product({2, 1, 2, 1}, v, V(1, 1)), v);
}

TEST(Monotonicity, ConjunctorsAndImplications) {
  std::vector<AdjointLabel> labels{AdjointLabel::godel(), AdjointLabel::product(),
                                   AdjointLabel::lukasiewicz()};
  for (const auto& p : sample_params) labels.push_back(AdjointLabel::ei_pair(p));
  testkit::Gen g(8);
  for (const auto& label : labels) {
    const LatticeKind kind = label.domain();
    for (int k = 0; k < 3000; ++k) {
      auto a = g.value(kind);
      auto b = g.value(kind);
      if (!leq(a, b)) std::swap(a, b);
      if (!leq(a, b)) continue;
      const auto c = g.value(kind);
      EXPECT_TRUE(leq(conjoin(label, a, c), conjoin(label, b, c)));
      EXPECT_TRUE(leq(conjoin(label, c, a), conjoin(label, c, b)));
      EXPECT_TRUE(leq(implies(label, a, c), implies(label, b, c)));
      EXPECT_TRUE(leq(implies(label, c, b), implies(label, c, a)));
    }
  }
}

TEST(Negation, ValuesAntitoneAndInvolutive) {
  EXPECT_NEAR(negate(LatticeKind::unit_interval, U(0.4)).value(), 0.6, 1e-15);
  EXPECT_EQ(negate(LatticeKind::subinterval, V(0, 0)), V(1, 1));
  expect_near(negate(LatticeKind::subinterval, V(0.2, 0.7)), V(0.3, 0.8), 1e-15);
  EXPECT_THROW(negate(LatticeKind::subinterval, U(0.3)), DomainError);
  testkit::Gen g(9);
  for (const auto kind : {LatticeKind::unit_interval, LatticeKind::subinterval}) {
    for (int k = 0; k < 3000; ++k) {
      const auto a = g.value(kind);
      const auto b = g.value(kind);
      if (leq(a, b)) EXPECT_TRUE(leq(negate(b), negate(a)));
      // 1 - (1 - x) differs from x by at most one rounding.
      expect_near(negate(negate(a)), a, 1e-15);
    }
  }
}

TEST(Aggregators, ValuesAndArity) {
  const std::vector<TruthValue> two{U(0.2), U(0.4)};
  EXPECT_NEAR(agg_mean(two).value(), 0.3, 1e-15);
  const std::vector<TruthValue> iv{V(0.1, 0.5), V(0.2, 0.4)};
  EXPECT_EQ(agg_min(iv), V(0.1, 0.4));
  EXPECT_EQ(agg_max(iv), V(0.2, 0.5));
  const std::vector<TruthValue> one{U(0.7)};
  EXPECT_EQ(agg_max(one), U(0.7));
  EXPECT_THROW(agg_min({}), ArityError);
  EXPECT_THROW(agg_mean({}), ArityError);
  const std::vector<TruthValue> mixed{U(0.2), V(0.1, 0.2)};
  EXPECT_THROW(agg_max(mixed), DomainError);
}

TEST(Aggregators, MonotoneAndBetweenMinAndMax) {
  testkit::Gen g(10);
  for (const auto kind : {LatticeKind::unit_interval, LatticeKind::subinterval}) {
    for (int k = 0; k < 2000; ++k) {
      std::vector<TruthValue> xs;
      std::vector<TruthValue> ys;
      const std::size_t n = 1 + g.below(4);
      for (std::size_t i = 0; i < n; ++i) {
        auto a = g.value(kind);
        auto b = join(a, g.value(kind));
        xs.push_back(a);
        ys.push_back(b);
      }
      for (auto f : {agg_min, agg_max, agg_mean}) EXPECT_TRUE(leq(f(xs), f(ys)));
      const auto m = agg_mean(xs);
      EXPECT_LE(agg_min(xs).lo(), m.lo() + 1e-15);
      EXPECT_LE(m.hi(), agg_max(xs).hi() + 1e-15);
    }
  }
}

TEST(Signature, PairsAndAggregators) {
  const auto& unit = LatticeSignature::unit_interval();
  const auto& iv = LatticeSignature::subinterval();
  EXPECT_TRUE(unit.has_pair(AdjointLabel::godel()));
  EXPECT_FALSE(unit.has_pair(AdjointLabel::ei_pair({2, 1, 3, 2})));
  EXPECT_TRUE(iv.has_pair(AdjointLabel::ei_pair({2, 1, 3, 2})));
  EXPECT_FALSE(iv.has_pair(AdjointLabel::product()));
  EXPECT_FALSE(iv.has_pair(AdjointLabel::ei_pair({1, 2, 1, 1})));
  EXPECT_NE(unit.aggregator("mean"), nullptr);
  EXPECT_EQ(unit.aggregator("median"), nullptr);
  EXPECT_EQ(iv.bottom(), V(0, 0));
  EXPECT_EQ(unit.top(), U(1));
  EXPECT_EQ(implication_tag(AdjointLabel::ei_pair({2, 1, 3, 2})), "ei(2,1,3,2)");
  EXPECT_EQ(connective_token(AdjointLabel::lukasiewicz()), "&L");
}

TEST(Ipow, ZeroToTheZeroIsOne) {
  EXPECT_EQ(ipow(0.0, 0), 1.0);
  EXPECT_EQ(ipow(0.0, 3), 0.0);
  EXPECT_EQ(ipow(0.5, 3), 0.125);
}
