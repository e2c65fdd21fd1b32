#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "manlp/semantics.hpp"

using namespace manlp;
using testkit::interval_interp;
using testkit::unit_interp;

namespace {

TruthValue U(double x) { return TruthValue::unit(x); }

}  // namespace

TEST(Interpretation, ConstructionAndLookup) {
  const auto i = unit_interp({{"q", 0.7}, {"p", 0.5}});
  EXPECT_EQ(i.symbols(), (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(i.at("q"), U(0.7));
  EXPECT_THROW((void)i.at("r"), SymbolMismatch);
  EXPECT_EQ(i.with("p", U(0.1)).at("p"), U(0.1));
  EXPECT_EQ(i.at("p"), U(0.5));
  EXPECT_THROW(Interpretation::from_map(LatticeKind::subinterval, {{"p", U(0.1)}}), DomainError);
  EXPECT_EQ(i.to_map().size(), 2u);
}

TEST(Interpretation, BoundsAndOrder) {
  const auto p = testkit::load_program("example3.mnlp");
  const auto bot = Interpretation::bottom(p);
  const auto top = Interpretation::top(p);
  testkit::Gen g(31);
  for (int k = 0; k < 200; ++k) {
    const auto i = g.interpretation(p);
    EXPECT_TRUE(interp_leq(bot, i));
    EXPECT_TRUE(interp_leq(i, top));
    EXPECT_TRUE(interp_leq(i, i));
  }
  EXPECT_TRUE(interp_leq(unit_interp({{"p", 0.4}}), unit_interp({{"p", 0.5}})));
  EXPECT_FALSE(interp_leq(interval_interp({{"p", {0.1, 0.4}}}),
                          interval_interp({{"p", {0.2, 0.3}}})));
  EXPECT_THROW(interp_leq(unit_interp({{"p", 0.4}}), unit_interp({{"q", 0.4}})), SymbolMismatch);
}

TEST(RequireMatches, ReportsMissingAndExtraneous) {
  const auto p = testkit::load_program("example1.mnlp");
  try {
    require_matches(p, unit_interp({{"p", 0.1}, {"q", 0.2}, {"z", 0.3}}));
    FAIL();
  } catch (const SymbolMismatch& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("missing: r"), std::string::npos) << msg;
    EXPECT_NE(msg.find("extraneous: z"), std::string::npos) << msg;
  }
  EXPECT_THROW(is_model(p, interval_interp({{"p", {0, 0}}, {"q", {0, 0}}, {"r", {0, 0}}})),
               SymbolMismatch);
}

TEST(Evaluate, ExampleOneBodies) {
  const auto i = unit_interp({{"p", 0.5}, {"q", 0.7}, {"r", 0.4}});
  const auto b1 = BodyExpr::conn(AdjointLabel::godel(), BodyExpr::prop("q"), BodyExpr::neg("r"));
  EXPECT_EQ(evaluate(b1, i).value(), std::min(0.7, 1.0 - 0.4));
  const auto b2 = BodyExpr::conn(AdjointLabel::godel(), BodyExpr::prop("p"), BodyExpr::prop("q"));
  EXPECT_EQ(evaluate(b2, i), U(0.5));
  EXPECT_EQ(evaluate(BodyExpr::constant(U(1)), i), U(1));
  EXPECT_THROW(evaluate(BodyExpr::prop("z"), i), SymbolMismatch);
}

TEST(RuleValue, ExampleOne) {
  const auto p = testkit::load_program("example1.mnlp");
  const auto i = unit_interp({{"p", 0.5}, {"q", 0.7}, {"r", 0.4}});
  // Independent arithmetic: body of r1 is min(0.7, 1 - 0.4) = 0.6, product residuum 0.5 / 0.6.
  EXPECT_NEAR(rule_value(p.rules()[0], i).value(), 0.5 / 0.6, 1e-9);
  EXPECT_EQ(rule_value(p.rules()[1], i), U(0.4));
  EXPECT_NEAR(rule_value(p.rules()[2], i).value(), 0.7, 1e-15);
  for (const auto& r : p.rules()) EXPECT_TRUE(satisfies(r, i));
  EXPECT_TRUE(is_model(p, i));
  EXPECT_FALSE(is_model(p, Interpretation::bottom(p)));
  EXPECT_FALSE(satisfies(p.rules()[2], i.with("q", U(0.5))));
}

TEST(Evaluate, MonotoneOnPositiveBodies) {
  testkit::Gen g(32);
  for (const auto kind : {LatticeKind::unit_interval, LatticeKind::subinterval}) {
    testkit::ProgramShape shape;
    shape.kind = kind;
    shape.allow_negation = false;
    for (int k = 0; k < 300; ++k) {
      const auto p = g.program(shape);
      const auto [i, j] = g.ordered_pair(p);
      for (const auto& r : p.rules()) {
        EXPECT_TRUE(leq(evaluate(r.body, i), evaluate(r.body, j))) << render_rule(r);
      }
    }
  }
}

TEST(Satisfies, AgreesWithConjunctorForm) {
  testkit::Gen g(33);
  for (const auto kind : {LatticeKind::unit_interval, LatticeKind::subinterval}) {
    testkit::ProgramShape shape;
    shape.kind = kind;
    for (int k = 0; k < 500; ++k) {
      const auto p = g.program(shape);
      const auto i = g.interpretation(p);
      for (const auto& r : p.rules()) {
        const bool via_conj = leq(conjoin(r.label, r.weight, evaluate(r.body, i)), i.at(r.head));
        EXPECT_EQ(satisfies(r, i), via_conj) << render_rule(r);
      }
    }
  }
}

TEST(IsModel, TopSatisfiesPositivePrograms) {
  testkit::Gen g(34);
  for (const auto kind : {LatticeKind::unit_interval, LatticeKind::subinterval}) {
    testkit::ProgramShape shape;
    shape.kind = kind;
    shape.allow_negation = false;
    for (int k = 0; k < 200; ++k) {
      const auto p = g.program(shape);
      EXPECT_TRUE(is_model(p, Interpretation::top(p)));
    }
  }
}
