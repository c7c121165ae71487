#include <gtest/gtest.h>

#include "coxgrowth/chamber_geometry.hpp"
#include "coxgrowth/oracle.hpp"
#include "oracles.hpp"

using namespace coxgrowth;
using oracles::linear;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no coxgrowth::Error thrown";
  return ErrorCode::InvalidArgument;
}

ElementId id_of(const Ball& b, std::vector<Generator> w) { return *b.find(w); }

struct Fixture {
  CoxeterMatrix M;
  Ball ball;
  ChamberSystem cs;
  explicit Fixture(CoxeterMatrix m, unsigned depth) : M(m), ball(Ball::build(M, depth)), cs(ball) {}
};

}  // namespace

TEST(ChamberSystem, LeftMultiplicationAndInverse) {
  for (const auto& M : {CoxeterMatrix::uniform(3, 4), CoxeterMatrix::uniform(4, 3), linear({4, 4})}) {
    const Ball b = Ball::build(M, 5);
    const ChamberSystem cs(b);
    for (ElementId w = 0; w < b.size(); ++w) {
      auto word = b.word(w);
      std::vector<Generator> rev(word.rbegin(), word.rend());
      EXPECT_EQ(b.element(cs.inverse(w)), oracle_reduce(rev, M));
      for (Generator s = 0; s < M.rank(); ++s) {
        std::vector<Generator> sw{s};
        sw.insert(sw.end(), word.begin(), word.end());
        const auto expect = oracle_reduce(sw, M);
        const ElementId got = cs.left(s, w);
        if (expect.length() > b.depth()) {
          EXPECT_EQ(got, kAbsent);
        } else {
          ASSERT_NE(got, kAbsent);
          EXPECT_EQ(b.element(got), expect);
        }
      }
    }
  }
}

TEST(ChamberSystem, ProductsAndDistances) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 6);
  for (ElementId x = 0; x < f.ball.layer_end(3); ++x)
    for (ElementId y = 0; y < f.ball.layer_end(3); ++y) {
      auto xw = f.ball.word(x);
      auto yw = f.ball.word(y);
      std::vector<Generator> xy = xw;
      xy.insert(xy.end(), yw.begin(), yw.end());
      const auto p = f.cs.product(x, y);
      ASSERT_TRUE(p.has_value());
      EXPECT_EQ(f.ball.element(*p), oracle_reduce(xy, f.M));
      EXPECT_EQ(f.cs.distance(x, y), f.cs.distance(y, x));
    }
  EXPECT_FALSE(f.cs.product(id_of(f.ball, {0, 1, 2, 0, 1, 2}), id_of(f.ball, {1})).has_value());
}

TEST(Residues, CompletenessAndSize) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 8);
  const auto R = make_residue(f.ball, GeneratorSet::pair(0, 1), id_of(f.ball, {2, 0}));
  EXPECT_TRUE(R.complete);
  EXPECT_EQ(R.members.size(), 8U);
  EXPECT_EQ(f.ball.element(R.gate).str(), "2");
  const auto far = make_residue(f.ball, GeneratorSet::pair(0, 1), id_of(f.ball, {2, 1, 0, 2, 1, 2}));
  EXPECT_FALSE(far.complete);
  EXPECT_LT(far.members.size(), 8U);
  const auto inf = make_residue(f.ball, GeneratorSet::all(3), 0);
  EXPECT_FALSE(inf.complete);
  EXPECT_EQ(inf.members.size(), f.ball.size());
}

TEST(Projection, WorkedExamples) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 8);
  const auto R = make_residue(f.ball, GeneratorSet::pair(0, 1), id_of(f.ball, {2, 0, 1}));
  EXPECT_EQ(projection(f.cs, R.members[3], R), R.members[3]);  // x in R
  EXPECT_EQ(projection(f.cs, Ball::identity(), R), R.gate);
  EXPECT_EQ(f.ball.element(R.gate).str(), "2");
  // x = s onto the t-panel of 1_W
  const auto P = make_residue(f.ball, GeneratorSet::single(1), Ball::identity());
  EXPECT_EQ(projection(f.cs, id_of(f.ball, {0}), P), Ball::identity());

  const auto far = make_residue(f.ball, GeneratorSet::pair(0, 1), id_of(f.ball, {2, 1, 0, 2, 1, 2}));
  EXPECT_EQ(code_of([&] { projection(f.cs, 0, far); }), ErrorCode::ResidueIncomplete);
  const auto edge = make_residue(f.ball, GeneratorSet::pair(0, 1), id_of(f.ball, {2, 1, 2}));
  ASSERT_TRUE(edge.complete);
  EXPECT_EQ(code_of([&] { projection(f.cs, id_of(f.ball, {0, 2, 1, 0, 2, 1, 0, 2}), edge); }),
            ErrorCode::DepthExceeded);
}

// The gate identity is asserted inside projection(); drive it over many
// chamber/residue pairs.
TEST(Projection, GatePropertyEverywhere) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 8);
  for (ElementId c = 0; c < f.ball.layer_end(2); ++c)
    for (Generator s = 0; s < 3; ++s)
      for (Generator t = s + 1; t < 3; ++t) {
        const auto R = make_residue(f.ball, GeneratorSet::pair(s, t), c);
        if (!R.complete) continue;
        for (ElementId x = 0; x < f.ball.layer_end(2); ++x) EXPECT_NO_THROW(projection(f.cs, x, R));
      }
}

TEST(Parallel, Examples) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 8);
  const auto P = make_residue(f.ball, GeneratorSet::single(0), Ball::identity());
  EXPECT_TRUE(parallel_check(f.cs, P, P));
  // Opposite 0-panels of the {0,1}-residue of 1_W: {1, 0} and {0101, 010}.
  const auto Q = make_residue(f.ball, GeneratorSet::single(0), id_of(f.ball, {0, 1, 0, 1}));
  EXPECT_TRUE(parallel_check(f.cs, P, Q));
  const auto T = make_residue(f.ball, GeneratorSet::single(1), id_of(f.ball, {2}));
  EXPECT_FALSE(parallel_check(f.cs, P, T));
}

TEST(Roots, SimpleRootsMatchLeftDescents) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 7);
  for (Generator s = 0; s < 3; ++s) {
    const auto alpha = simple_root(f.ball, s);
    for (ElementId w = 0; w < f.ball.size(); ++w) {
      const auto in = root_contains(f.cs, alpha, w);
      const ElementId sw = f.cs.left(s, w);
      if (sw == kAbsent) continue;
      ASSERT_TRUE(in.has_value());
      EXPECT_EQ(*in, f.ball.length(sw) > f.ball.length(w));
    }
  }
  EXPECT_THROW(simple_root(f.ball, 3), Error);
}

TEST(Roots, ReflectionSwapsSides) {
  const Fixture f(CoxeterMatrix::uniform(4, 3), 6);
  for (ElementId v = 0; v < f.ball.layer_end(1); ++v)
    for (Generator s = 0; s < 4; ++s) {
      const auto alpha = root_from(f.cs, v, s);
      EXPECT_TRUE(*root_contains(f.cs, alpha, v) != *root_contains(f.cs, alpha, f.ball.neighbor(v, s)));
      for (ElementId w = 0; w < f.ball.layer_end(3); ++w) {
        const auto rw = f.cs.product(alpha.reflection, w);
        const auto a = root_contains(f.cs, alpha, w);
        if (!rw || !a) continue;
        const auto b = root_contains(f.cs, alpha, *rw);
        if (!b) continue;
        EXPECT_NE(*a, *b);
        EXPECT_NE(*a, *root_contains(f.cs, alpha.opposite(), w));
      }
    }
}

TEST(Roots, MinimalGalleriesCrossEachWallOnce) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 10);
  for (ElementId w = 0; w < f.ball.layer_end(5); ++w) {
    const auto g = f.cs.minimal_gallery(w);
    ASSERT_EQ(g.size(), f.ball.length(w) + 1);
    std::set<ElementId> walls;
    for (std::size_t j = 1; j < g.size(); ++j) {
      const auto r = f.cs.product(g[j], f.cs.inverse(g[j - 1]));
      ASSERT_TRUE(r.has_value());
      EXPECT_TRUE(walls.insert(*r).second) << f.ball.element(w).str();
    }
  }
}

TEST(Roots, Convexity) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 10);
  std::vector<RootHandle> roots;
  for (Generator s = 0; s < 3; ++s) roots.push_back(simple_root(f.ball, s));
  roots.push_back(root_from(f.cs, id_of(f.ball, {0, 1}), 2));
  roots.push_back(root_from(f.cs, id_of(f.ball, {2, 1, 0}), 1).opposite());
  for (const auto& alpha : roots) {
    std::vector<ElementId> inside;
    for (ElementId w = 0; w < f.ball.layer_end(3); ++w)
      if (root_contains(f.cs, alpha, w).value_or(false)) inside.push_back(w);
    for (ElementId x : inside)
      for (ElementId y : inside) {
        const ElementId step = *f.cs.product(f.cs.inverse(x), y);
        ElementId cur = x;
        for (Generator s : f.ball.word(step)) {
          cur = f.ball.neighbor(cur, s);
          ASSERT_NE(cur, kAbsent);
          EXPECT_TRUE(root_contains(f.cs, alpha, cur).value_or(true));
        }
        EXPECT_EQ(cur, y);
      }
  }
}

TEST(Roots, Trichotomy) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 8);
  const auto R = make_residue(f.ball, GeneratorSet::pair(0, 1), Ball::identity());
  EXPECT_EQ(residue_root_trichotomy(f.cs, R, simple_root(f.ball, 2)), Trichotomy::InsideAlpha);
  EXPECT_EQ(residue_root_trichotomy(f.cs, R, simple_root(f.ball, 2).opposite()), Trichotomy::InsideMinusAlpha);
  EXPECT_EQ(residue_root_trichotomy(f.cs, R, simple_root(f.ball, 0)), Trichotomy::InBoundary);
  // Reflecting the residue across the wall of alpha_2 moves it into -alpha_2.
  const auto moved = make_residue(f.ball, GeneratorSet::pair(0, 1), id_of(f.ball, {2}));
  EXPECT_EQ(residue_root_trichotomy(f.cs, moved, simple_root(f.ball, 2)), Trichotomy::InsideMinusAlpha);

  // Exhaustive: the stabiliser cross-check inside the call never fires.
  for (ElementId c = 0; c < f.ball.layer_end(3); ++c) {
    const auto Rc = make_residue(f.ball, GeneratorSet::pair(1, 2), c);
    if (!Rc.complete || Rc.gate != c) continue;
    for (Generator s = 0; s < 3; ++s) EXPECT_NO_THROW(residue_root_trichotomy(f.cs, Rc, simple_root(f.ball, s)));
  }
}

TEST(Roots, WallSample) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 8);
  const auto alpha = simple_root(f.ball, 0);
  const auto sample = wall_sample(f.cs, alpha);
  ASSERT_FALSE(sample.panels.empty());
  EXPECT_EQ(sample.panels.front(), (Panel{Ball::identity(), 0}));
  for (const auto& p : sample.panels)
    EXPECT_NE(*root_contains(f.cs, alpha, p.lower), *root_contains(f.cs, alpha, f.ball.neighbor(p.lower, p.type)));
  ASSERT_FALSE(sample.residues.empty());
  for (const auto& R : sample.residues) EXPECT_EQ(residue_root_trichotomy(f.cs, R, alpha), Trichotomy::InBoundary);
}

// ---------------------------------------------------------------------------
// Verifiers

TEST(Verifiers, HoldOn444Depth8) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 8);
  for (const auto& rep : {verify_P29(f.cs), verify_C210(f.cs), verify_L211(f.cs), verify_L24_uniqueness(f.ball)}) {
    EXPECT_TRUE(rep.holds()) << rep.name;
    EXPECT_GT(rep.checked, 0U) << rep.name;
    EXPECT_EQ(rep.violations, 0U);
  }
}

TEST(Verifiers, HoldOnRank4Uniform3Depth6) {
  const Fixture f(CoxeterMatrix::uniform(4, 3), 6);
  for (const auto& rep : {verify_P29(f.cs), verify_C210(f.cs), verify_L24_uniqueness(f.ball)}) {
    EXPECT_TRUE(rep.holds()) << rep.name;
    EXPECT_GT(rep.checked, 0U) << rep.name;
  }
  EXPECT_EQ(code_of([&] { verify_L211(f.cs); }), ErrorCode::HypothesisViolated);
}

TEST(Verifiers, L211OnUniform5) {
  const Fixture f(CoxeterMatrix::uniform(3, 5), 8);
  const auto rep = verify_L211(f.cs);
  EXPECT_TRUE(rep.holds());
  EXPECT_GT(rep.checked, 0U);
}

TEST(Verifiers, L211FailsOnAffineA2) {
  const Fixture f(CoxeterMatrix::uniform(3, 3), 8);
  EXPECT_EQ(code_of([&] { verify_L211(f.cs); }), ErrorCode::HypothesisViolated);
  const auto rep = verify_L211(f.cs, Gate::Diagnostic);
  EXPECT_FALSE(rep.holds());
  EXPECT_GE(rep.violations, 1U);
  EXPECT_TRUE(rep.diagnostic);
  // A concrete witness: w = 0102 with s = 0, t = 1, r = 2.
  const ElementId w = id_of(f.ball, {0, 1, 0, 2});
  EXPECT_TRUE(f.ball.is_descent(f.ball.neighbor(w, 0), 2));
  EXPECT_TRUE(f.ball.is_descent(f.ball.neighbor(w, 1), 2));
  EXPECT_FALSE(f.ball.is_descent(w, 0));
  EXPECT_FALSE(f.ball.is_descent(w, 1));
}

TEST(Verifiers, C210SmallestInstance) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 4);
  EXPECT_EQ(f.ball.length(id_of(f.ball, {0, 1, 2})), 3U);
  EXPECT_TRUE(verify_C210(f.cs).holds());
}

TEST(Verifiers, Hypotheses) {
  const Fixture a3(linear({3, 3}), 6);
  EXPECT_EQ(code_of([&] { verify_P29(a3.cs); }), ErrorCode::HypothesisViolated);
  EXPECT_EQ(code_of([&] { verify_C210(a3.cs); }), ErrorCode::HypothesisViolated);
  EXPECT_EQ(code_of([&] { verify_L24_uniqueness(a3.cs); }), ErrorCode::HypothesisViolated);
  // In a finite group the corollary's conclusion must fail near the top.
  EXPECT_FALSE(verify_C210(a3.cs, Gate::Diagnostic).holds());
}

TEST(Verifiers, SkipsAreCounted) {
  const Fixture f(CoxeterMatrix::uniform(3, 4), 6);
  const auto rep = verify_P29(f.cs);
  EXPECT_GT(rep.skipped, 0U);
  EXPECT_EQ(rep.range, (std::pair<long, long>{0, 6}));
}
