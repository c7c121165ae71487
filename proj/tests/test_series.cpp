#include <gtest/gtest.h>

#include "coxgrowth/series.hpp"
#include "oracles.hpp"

using namespace coxgrowth;
using oracles::dihedral;
using oracles::linear;

namespace {

Polynomial poly(std::vector<long> c) {
  std::vector<BigInt> big(c.begin(), c.end());
  return Polynomial(big);
}

Rational q(long p, long r) { return Rational(BigInt(p), BigInt(r)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no coxgrowth::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomials

TEST(Polynomial, Arithmetic) {
  const auto a = poly({1, 1});   // 1 + t
  const auto b = poly({-1, 1});  // -1 + t
  EXPECT_EQ(a * b, poly({-1, 0, 1}));
  EXPECT_EQ(a + b, poly({0, 2}));
  EXPECT_EQ(a - a, Polynomial());
  EXPECT_EQ((a - a).degree(), -1);
  EXPECT_EQ(exact_divide(poly({-1, 0, 1}), a), b);
  EXPECT_EQ(poly({1, 2, 3}).derivative(), poly({2, 6}));
  EXPECT_EQ(poly({1, 1}).shifted(2), poly({0, 0, 1, 1}));
  EXPECT_EQ(poly({1, 2, 1}).evaluate(BigInt(3)), BigInt(16));
  EXPECT_EQ(poly({1, -1, -1, -1, 1}).evaluate(q(1, 2)), q(3, 16));
  EXPECT_EQ(poly({6, 4, 2}).content(), BigInt(2));
  EXPECT_EQ(poly({6, 4, 2}).primitive_part(), poly({3, 2, 1}));
  EXPECT_EQ(poly({1, -2, 1}).str(), "1 - 2t + t^2");
  EXPECT_THROW(exact_divide(poly({1, 0, 1}), a), Error);
}

TEST(Polynomial, Gcd) {
  const auto f = poly({-1, 1}) * poly({2, 1}) * poly({1, 0, 1});
  const auto g = poly({-1, 1}) * poly({1, 0, 1}) * poly({5, 3});
  EXPECT_EQ(gcd(f, g), poly({-1, 1}) * poly({1, 0, 1}));
  EXPECT_EQ(gcd(poly({2, 4}), poly({3, 6})), poly({1, 2}));
  EXPECT_EQ(gcd(poly({1, 1}), poly({-1, 1})), poly({1}));
}

TEST(Polynomial, CyclotomicProductsGiveTnMinus1) {
  for (unsigned n = 1; n <= 30; ++n) {
    Polynomial prod = Polynomial::constant(1);
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod *= cyclotomic(d);
    EXPECT_EQ(prod, Polynomial::monomial(1, n) - Polynomial::constant(1)) << n;
  }
  EXPECT_EQ(cyclotomic(6), poly({1, -1, 1}));
}

TEST(Polynomial, FactoredQIntegers) {
  for (unsigned k = 1; k <= 20; ++k) EXPECT_EQ(CyclotomicProduct::q_integer(k).expand(), Polynomial::q_integer(k));
  const auto a = CyclotomicProduct::q_integer(4);  // Phi2 Phi4
  const auto b = CyclotomicProduct::q_integer(6);  // Phi2 Phi3 Phi6
  const auto l = a.lcm(b);
  EXPECT_EQ(l.expand(), cyclotomic(2) * cyclotomic(3) * cyclotomic(4) * cyclotomic(6));
  EXPECT_EQ(l.quotient(a).expand(), cyclotomic(3) * cyclotomic(6));
  EXPECT_THROW(a.quotient(b), Error);
}

TEST(Polynomial, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), q(1, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(code_of([] { parse_rational("1/0"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_rational("x"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(to_string(q(4, 8)), "1/2");
}

// ---------------------------------------------------------------------------
// Real roots

TEST(RootIsolation, SturmCounts) {
  // (2t - 1)(3t - 1)(t + 1)(t - 2)
  const auto p = poly({-1, 2}) * poly({-1, 3}) * poly({1, 1}) * poly({-2, 1});
  const SturmSequence s(p);
  EXPECT_EQ(s.count_roots(Rational(0), Rational(1)), 2U);
  EXPECT_EQ(s.count_roots(Rational(-5), Rational(5)), 4U);
  EXPECT_EQ(s.count_roots(q(3, 5), Rational(1)), 0U);
  EXPECT_EQ(s.count_roots(q(1, 4), q(1, 2)), 2U);  // half-open: 1/3 and 1/2
  EXPECT_EQ(s.count_roots(q(1, 4), q(2, 5)), 1U);
  EXPECT_EQ(square_free_part(poly({-1, 1}) * poly({-1, 1}) * poly({2, 1})), poly({-1, 1}) * poly({2, 1}));
}

TEST(RootIsolation, SmallestRoot) {
  const auto p = poly({-1, 2}) * poly({-1, 3}) * poly({1, 1}) * poly({-2, 1});
  const auto iv = isolate_smallest_root(p, Rational(0), Rational(1), isolation_width());
  ASSERT_TRUE(iv.has_value());
  EXPECT_LT(iv->lo, q(1, 3));
  EXPECT_GE(iv->hi, q(1, 3));
  EXPECT_LE(iv->hi - iv->lo, isolation_width());
  EXPECT_FALSE(isolate_smallest_root(p, q(3, 5), Rational(1), isolation_width()).has_value());
  EXPECT_THROW(isolate_smallest_root(p, q(1, 2), Rational(1), isolation_width()), Error);

  const auto sqrt2 = isolate_smallest_root(poly({-2, 0, 1}), Rational(1), Rational(2), isolation_width());
  ASSERT_TRUE(sqrt2.has_value());
  EXPECT_LT(sqrt2->lo * sqrt2->lo, 2);
  EXPECT_GE(sqrt2->hi * sqrt2->hi, 2);
  EXPECT_LE(sqrt2->hi - sqrt2->lo, isolation_width());

  // Root exactly at the right end.
  const auto end = isolate_smallest_root(poly({-1, 1}), Rational(0), Rational(1), isolation_width());
  ASSERT_TRUE(end.has_value());
  EXPECT_EQ(end->hi, Rational(1));
}

// ---------------------------------------------------------------------------
// Growth series

class SeriesVsEnumeration : public testing::TestWithParam<std::pair<CoxeterMatrix, unsigned>> {};

TEST_P(SeriesVsEnumeration, TaylorCoefficientsMatch) {
  const auto& [M, N] = GetParam();
  const auto f = rational_growth_series(M);
  const auto coeffs = taylor_coefficients(f, N);
  const auto c = Ball::build(M, N).sphere_sizes();
  for (unsigned i = 0; i <= N; ++i) EXPECT_EQ(coeffs[i], BigInt(c[i])) << "i=" << i;
  EXPECT_GT(f.den.coefficient(0), 0);
}

INSTANTIATE_TEST_SUITE_P(
    Infinite, SeriesVsEnumeration,
    testing::Values(std::pair{CoxeterMatrix::uniform(3, 4), 12U}, std::pair{CoxeterMatrix::uniform(3, 3), 15U},
                    std::pair{CoxeterMatrix::uniform(3, 5), 12U}, std::pair{CoxeterMatrix::uniform(4, 3), 10U},
                    std::pair{CoxeterMatrix::uniform(4, 4), 10U}, std::pair{CoxeterMatrix::uniform(5, 3), 8U},
                    std::pair{dihedral(kInfinity), 10U}, std::pair{CoxeterMatrix::uniform(3, kInfinity), 10U},
                    std::pair{linear({4, 4}), 14U}, std::pair{linear({3, 6}), 14U}, std::pair{linear({4, 3, 4}), 12U},
                    std::pair{linear({5, 3, 3, 3}), 9U},
                    std::pair{validate_matrix({{1, 3, kInfinity}, {3, 1, 4}, {kInfinity, 4, 1}}), 12U}));

// Finite groups: the series is a polynomial that matches BFS in the
// geometric representation, and p(1) = |W|.
TEST(Series, FiniteTypesExhaust) {
  std::vector<CoxeterMatrix> finite{linear({3, 3}), linear({4, 3}), linear({5, 3})};
  for (Order m = 2; m <= 8; ++m) finite.push_back(dihedral(m));
  for (const auto& M : finite) {
    const auto f = rational_growth_series(M);
    ASSERT_TRUE(f.is_polynomial());
    const auto growth = oracles::geometric_growth(M);
    const auto coeffs = taylor_coefficients(f, static_cast<unsigned>(growth.size()) + 2);
    BigInt total = 0;
    for (std::size_t i = 0; i < growth.size(); ++i) {
      EXPECT_EQ(coeffs[i], BigInt(growth[i]));
      total += growth[i];
    }
    EXPECT_EQ(coeffs[growth.size()], 0);
    EXPECT_EQ(std::get<Rational>(evaluate_at_rational(f, Rational(1))), Rational(total));
  }
}

TEST(Series, KnownClosedForms) {
  // affine A2: c_i = 3i, so p(t) = (1 + t + t^2) / (1 - t)^2
  const auto a2 = rational_growth_series(CoxeterMatrix::uniform(3, 3));
  EXPECT_EQ(a2.num, poly({1, 1, 1}));
  EXPECT_EQ(a2.den, poly({1, -2, 1}));
  const auto coeffs = taylor_coefficients(a2, 40);
  for (unsigned i = 1; i <= 40; ++i) EXPECT_EQ(coeffs[i], 3 * i);

  // infinite dihedral: 1 + 2t + 2t^2 + ... = (1 + t) / (1 - t)
  const auto d = rational_growth_series(dihedral(kInfinity));
  EXPECT_EQ(d.num, poly({1, 1}));
  EXPECT_EQ(d.den, poly({1, -1}));
}

TEST(Series, RationalFunctionNormalisation) {
  const auto f = RationalFunction::make(poly({-2, 0, 2}), poly({-2, 2}));  // 2(t^2-1) / 2(t-1)
  EXPECT_EQ(f.num, poly({1, 1}));
  EXPECT_EQ(f.den, poly({1}));
  EXPECT_EQ(code_of([] { RationalFunction::make(poly({1}), poly({0, 1})); }), ErrorCode::SingularAtZero);
  EXPECT_EQ(code_of([] { RationalFunction::make(poly({1}), Polynomial()); }), ErrorCode::SingularAtZero);
  EXPECT_TRUE(std::holds_alternative<PoleAt>(evaluate_at_rational(RationalFunction::make(poly({1}), poly({1, -2})), q(1, 2))));
}

// ---------------------------------------------------------------------------
// Finiteness verdicts

TEST(Verdict, FiniteAtOneOverNMinus1) {
  const struct {
    unsigned n;
    Order m;
    Rational t;
    Rational value;
  } cases[] = {{3, 4, q(1, 2), Rational(15)},
               {4, 3, q(1, 3), q(26, 3)},
               {4, 4, q(1, 3), q(80, 3)},
               {5, 3, q(1, 4), q(21, 2)}};
  for (const auto& c : cases) {
    const auto M = CoxeterMatrix::uniform(c.n, c.m);
    const auto f = rational_growth_series(M);
    const auto v = finiteness_verdict(f, c.t);
    EXPECT_TRUE(v.finite) << c.n << "," << c.m;
    ASSERT_TRUE(v.value.has_value());
    EXPECT_EQ(*v.value, c.value);

    // Partial sums of the enumerated series stay below the value.
    const auto sizes = Ball::build(M, c.n == 3 ? 16 : 8).sphere_sizes();
    Rational partial = 0, power = 1;
    for (auto ci : sizes) {
      partial += Rational(BigInt(ci)) * power;
      power *= c.t;
    }
    EXPECT_LT(partial, c.value);
  }
}

TEST(Verdict, InfiniteAtOneOverNMinus2) {
  for (const auto& [n, t] : std::vector<std::pair<unsigned, Rational>>{{4, q(1, 2)}, {5, q(1, 3)}}) {
    const auto f = rational_growth_series(CoxeterMatrix::uniform(n, 3));
    const auto v = finiteness_verdict(f, t);
    EXPECT_FALSE(v.finite);
    ASSERT_TRUE(v.pole.has_value());
    EXPECT_GT(v.pole->lo, 0);
    EXPECT_LE(v.pole->hi, t);
    EXPECT_LE(v.pole->hi - v.pole->lo, isolation_width());
    // The denominator changes sign across the interval and has no root below it.
    EXPECT_NE(f.den.sign_at(v.pole->lo), f.den.sign_at(v.pole->hi));
    EXPECT_EQ(SturmSequence(square_free_part(f.den)).count_roots(Rational(0), v.pole->lo), 0U);
  }
}

TEST(Verdict, Arguments) {
  const auto f = rational_growth_series(CoxeterMatrix::uniform(3, 4));
  EXPECT_EQ(code_of([&] { finiteness_verdict(f, Rational(0)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { finiteness_verdict(f, q(3, 2)); }), ErrorCode::InvalidArgument);
  EXPECT_FALSE(finiteness_verdict(f, Rational(1)).finite);
  const auto bad = RationalFunction::make(poly({1}), poly({1, 1}));  // 1 - t + t^2 - ...
  EXPECT_EQ(code_of([&] { finiteness_verdict(bad, q(1, 2)); }), ErrorCode::NegativeCoefficientDetected);
}

// ---------------------------------------------------------------------------
// Quotient criterion

TEST(QuotientCriterion, ConvergenceBound) {
  EXPECT_EQ(convergence_ratio_bound(3, 4), q(63, 64));
  EXPECT_EQ(convergence_ratio_bound(4, 4), q(715, 729));

  const auto st = compute_stats(Ball::build(CoxeterMatrix::uniform(3, 4), 12));
  const auto rep = quotient_criterion(st, q(1, 2), 8, QuotientMode::Convergence);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.bound, q(63, 64));
  EXPECT_EQ(rep.i_min, 8);
  EXPECT_EQ(rep.i_max, 11);
  for (const auto& [i, r] : rep.ratios) EXPECT_EQ(r, Rational(BigInt(st.c[i + 1])) / (2 * BigInt(st.c[i])));
  EXPECT_LE(rep.max_ratio, q(63, 64));
}

TEST(QuotientCriterion, Divergence) {
  const auto st = compute_stats(Ball::build(CoxeterMatrix::uniform(4, 3), 10));
  const auto rep = quotient_criterion(st, q(1, 2), 4, QuotientMode::Divergence);
  EXPECT_TRUE(rep.holds);
  EXPECT_GE(rep.min_ratio, 1);
  EXPECT_FALSE(quotient_criterion(st.c, q(1, 2), 4, QuotientMode::Divergence, Rational(2)).holds);
  EXPECT_FALSE(quotient_criterion(st.c, q(1, 3), 4, QuotientMode::Divergence, Rational(1)).holds);
}

TEST(QuotientCriterion, Errors) {
  const auto st = compute_stats(Ball::build(CoxeterMatrix::uniform(3, 4), 9));
  EXPECT_EQ(code_of([&] { quotient_criterion(st, q(1, 2), 8, QuotientMode::Convergence); }), ErrorCode::RangeEmpty);
  const auto st3 = compute_stats(Ball::build(oracles::linear({4, 5}), 9));
  EXPECT_EQ(code_of([&] { quotient_criterion(st3, q(1, 2), 2, QuotientMode::Convergence); }), ErrorCode::NotUniform);
}

TEST(TheoremVerdicts, AttachCorroboration) {
  const auto M = CoxeterMatrix::uniform(3, 4);
  const auto f = rational_growth_series(M);
  const auto vs = theorem_verdicts(M, f, compute_stats(Ball::build(M, 12)));
  ASSERT_EQ(vs.size(), 2U);
  EXPECT_EQ(vs[0].t0, q(1, 2));
  EXPECT_TRUE(vs[0].finite);
  ASSERT_TRUE(vs[0].corroboration.has_value());
  EXPECT_TRUE(vs[0].corroboration->holds);
  EXPECT_EQ(vs[1].t0, Rational(1));
  EXPECT_FALSE(vs[1].finite);

  const auto M4 = CoxeterMatrix::uniform(4, 3);
  const auto v4 = theorem_verdicts(M4, rational_growth_series(M4), compute_stats(Ball::build(M4, 10)));
  ASSERT_EQ(v4.size(), 2U);
  EXPECT_FALSE(v4[0].corroboration.has_value());  // m = 3: no convergence bound
  ASSERT_TRUE(v4[1].corroboration.has_value());
  EXPECT_EQ(v4[1].corroboration->mode, QuotientMode::Divergence);
  EXPECT_TRUE(v4[1].corroboration->holds);
}
