#include <gtest/gtest.h>

#include "generators.hpp"
#include "manlp/engine.hpp"

using namespace manlp;

namespace {

const LatticeKind kinds[] = {LatticeKind::unit_interval, LatticeKind::subinterval};

testkit::ProgramShape shape_for(LatticeKind kind, bool negation) {
  testkit::ProgramShape s;
  s.kind = kind;
  s.allow_negation = negation;
  return s;
}

Interpretation sup_of_parts(const Program& p, const Interpretation& i) {
  std::vector<TruthValue> out(i.size(), TruthValue::bottom(p.kind()));
  for (const auto& part : partition(p)) {
    const auto t = tp(part, i);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = join(out[k], t.values()[k]);
  }
  return Interpretation::from_values(p.kind(), i.symbol_table(), std::move(out));
}

}  // namespace

TEST(Property, ReductIdentity) {
  testkit::Gen g(71);
  for (const auto kind : kinds) {
    for (int k = 0; k < 400; ++k) {
      const auto p = g.program(shape_for(kind, true));
      const auto i = g.interpretation(p);
      EXPECT_EQ(tp(p, i), tp(reduct(p, i), i)) << render_program(p);
    }
  }
}

TEST(Property, PartitionLaw) {
  testkit::Gen g(72);
  for (const auto kind : kinds) {
    for (int k = 0; k < 400; ++k) {
      const auto p = g.program(shape_for(kind, true));
      const auto i = g.interpretation(p);
      EXPECT_EQ(tp(p, i), sup_of_parts(p, i)) << render_program(p);
    }
  }
}

TEST(Property, MonotoneOnPositivePrograms) {
  testkit::Gen g(73);
  for (const auto kind : kinds) {
    for (int k = 0; k < 400; ++k) {
      const auto p = g.program(shape_for(kind, false));
      const auto [i, j] = g.ordered_pair(p);
      ASSERT_TRUE(interp_leq(i, j));
      EXPECT_TRUE(interp_leq(tp(p, i), tp(p, j))) << render_program(p);
    }
  }
}

TEST(Property, ModelIffPostfixpoint) {
  testkit::Gen g(74);
  for (const auto kind : kinds) {
    for (int k = 0; k < 300; ++k) {
      const auto p = g.program(shape_for(kind, false));
      const auto lfp = least_fixpoint(p).final();
      std::vector<Interpretation> candidates{g.interpretation(p), lfp, Interpretation::top(p)};
      candidates.push_back(tp(p, candidates[0]));
      for (const auto& m : candidates) {
        EXPECT_EQ(is_model(p, m), interp_leq(tp(p, m), m)) << render_program(p);
      }
    }
  }
}

TEST(Property, LeastFixpointIsAModelBelowSampledModels) {
  testkit::Gen g(75);
  for (const auto kind : kinds) {
    for (int k = 0; k < 200; ++k) {
      const auto p = g.program(shape_for(kind, false));
      const auto trace = least_fixpoint(p);
      ASSERT_TRUE(trace.converged);
      // Exact when the iteration stabilised, otherwise up to the truncation.
      if (trace.residual == 0.0) {
        EXPECT_TRUE(is_model(p, trace.final())) << render_program(p);
      }
      EXPECT_LE(sup_norm(tp(p, trace.final()), trace.final()), 1e-7);
      // Iterates from the top stay above those from the bottom.
      const auto from_top = iterate_tp(p, Interpretation::top(p)).final();
      EXPECT_TRUE(interp_leq(trace.final(), from_top));
    }
  }
}

TEST(Property, SearchResultsAreStableModels) {
  testkit::Gen g(76);
  for (const auto kind : kinds) {
    testkit::ProgramShape shape = shape_for(kind, true);
    shape.max_symbols = 4;
    shape.max_rules = 5;
    for (int k = 0; k < 60; ++k) {
      const auto p = g.program(shape);
      const auto result = stable_search(p, {}, default_starts(p, k));
      for (const auto& m : result.models) {
        EXPECT_TRUE(is_stable(p, m.model));
        EXPECT_LE(sup_norm(tp(p, m.model), m.model), 1e-7);
      }
    }
  }
}
