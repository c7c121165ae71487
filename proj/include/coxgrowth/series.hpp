#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coxgrowth/classification.hpp"
#include "coxgrowth/coxeter_matrix.hpp"
#include "coxgrowth/polynomial.hpp"
#include "coxgrowth/root_isolation.hpp"
#include "coxgrowth/sphere_stats.hpp"

namespace coxgrowth {

/// num / den over Z[t] with gcd(num, den) = 1 and den(0) > 0.
struct RationalFunction {
  Polynomial num;
  Polynomial den;

  static RationalFunction make(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw Error(ErrorCode::SingularAtZero, "zero denominator");
    if (!num.is_zero()) {
      const Polynomial g = gcd(num, den);
      if (g.degree() > 0) {
        num = exact_divide(num, g);
        den = exact_divide(den, g);
      }
      const BigInt c = boost::multiprecision::gcd(num.content(), den.content());
      if (c > 1) {
        num = exact_divide(num, Polynomial::constant(c));
        den = exact_divide(den, Polynomial::constant(c));
      }
    } else {
      den = Polynomial::constant(1);
    }
    if (den.coefficient(0) == 0) throw Error(ErrorCode::SingularAtZero, "denominator vanishes at t = 0");
    if (den.coefficient(0) < 0) {
      num = -num;
      den = -den;
    }
    return {std::move(num), std::move(den)};
  }

  static RationalFunction polynomial(Polynomial p) { return {std::move(p), Polynomial::constant(1)}; }

  bool is_polynomial() const { return den.degree() == 0; }

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
};

/// The growth series p(t) = sum c_i t^i of (W, S) in closed form.
///
/// Finite W: the product over exponents. Infinite W: the alternating sum over
/// spherical subsets
///     1 / p(t) = sum_{J spherical} (-1)^|J| t^{N_J} / W_J(t),
/// N_J = length of the longest element of <J>, brought to the common
/// denominator lcm_J W_J(t) in cyclotomic factored form.
inline RationalFunction rational_growth_series(const CoxeterMatrix& M) {
  const FiniteTypeLabel whole = classify(M, GeneratorSet::all(M.rank()));
  if (whole.finite()) return RationalFunction::polynomial(poincare_polynomial_finite(whole));

  const auto subsets = spherical_subsets(M);
  CyclotomicProduct common;
  for (const auto& sub : subsets) {
    if (!sub.label.finite()) throw Error(ErrorCode::ClassificationFailure, "spherical subset with infinite label");
    common = common.lcm(sub.label.poincare_factors());
  }

  Polynomial alternating;
  for (const auto& sub : subsets) {
    Polynomial term = common.quotient(sub.label.poincare_factors()).expand().shifted(sub.label.longest_length());
    if (sub.subset.size() % 2 == 1)
      alternating -= term;
    else
      alternating += term;
  }
  return RationalFunction::make(common.expand(), std::move(alternating));
}

/// First N+1 Taylor coefficients at 0, by the linear recurrence from the
/// denominator. Throws if a coefficient is not an integer.
inline std::vector<BigInt> taylor_coefficients(const RationalFunction& f, unsigned N) {
  const BigInt d0 = f.den.coefficient(0);
  if (d0 == 0) throw Error(ErrorCode::SingularAtZero, "denominator vanishes at t = 0");
  std::vector<BigInt> c(N + 1);
  for (unsigned k = 0; k <= N; ++k) {
    BigInt acc = f.num.coefficient(k);
    const unsigned top = std::min<unsigned>(k, static_cast<unsigned>(std::max(f.den.degree(), 0)));
    for (unsigned j = 1; j <= top; ++j) acc -= f.den.coefficient(j) * c[k - j];
    if (acc % d0 != 0)
      throw Error(ErrorCode::NegativeCoefficientDetected, "non-integral Taylor coefficient at degree " + std::to_string(k));
    c[k] = acc / d0;
  }
  return c;
}

struct PoleAt {
  Rational at;
};

inline std::variant<Rational, PoleAt> evaluate_at_rational(const RationalFunction& f, const Rational& t0) {
  const Rational den = f.den.evaluate(t0);
  if (den == 0) return PoleAt{t0};
  return f.num.evaluate(t0) / den;
}

// ---------------------------------------------------------------------------

enum class QuotientMode { Convergence, Divergence };

inline const char* to_string(QuotientMode mode) { return mode == QuotientMode::Convergence ? "convergence" : "divergence"; }

/// Exact ratios r_i = c_{i+1} t0 / c_i over i_min <= i <= N-1, compared
/// against a bound: all r_i <= bound (convergence) or all r_i >= bound
/// (divergence).
struct QuotientReport {
  QuotientMode mode = QuotientMode::Convergence;
  Rational t0;
  Rational bound;
  long i_min = 0;
  long i_max = 0;
  std::vector<std::pair<long, Rational>> ratios;
  Rational min_ratio;
  Rational max_ratio;
  bool holds = true;
};

/// 1 - (n-2) k / (n-1)^m: the ratio bound for uniform systems with m >= 4 at
/// t = 1/(n-1), valid for i > 2m - 1.
inline Rational convergence_ratio_bound(unsigned n, Order m) {
  const Rational k = compute_k(n, m);
  return Rational(1) - Rational(n - 2) * k / Rational(boost::multiprecision::pow(BigInt(n - 1), m));
}

inline QuotientReport quotient_criterion(const std::vector<std::uint64_t>& c, const Rational& t0, long i_min,
                                         QuotientMode mode, const Rational& bound) {
  const long N = static_cast<long>(c.size()) - 1;
  if (i_min < 0 || N < i_min + 2)
    throw Error(ErrorCode::RangeEmpty, "quotient criterion needs depth >= i_min + 2 (i_min = " + std::to_string(i_min) +
                                           ", depth = " + std::to_string(N) + ")");
  QuotientReport rep;
  rep.mode = mode;
  rep.t0 = t0;
  rep.bound = bound;
  rep.i_min = i_min;
  for (long i = i_min; i < N && c[i] != 0; ++i) {
    const Rational r = Rational(BigInt(c[i + 1])) * t0 / Rational(BigInt(c[i]));
    if (rep.ratios.empty() || r < rep.min_ratio) rep.min_ratio = r;
    if (rep.ratios.empty() || r > rep.max_ratio) rep.max_ratio = r;
    rep.ratios.emplace_back(i, r);
    rep.holds = rep.holds && (mode == QuotientMode::Convergence ? r <= bound : r >= bound);
    rep.i_max = i;
  }
  if (rep.ratios.empty()) throw Error(ErrorCode::RangeEmpty, "no nonzero c_i from i_min on");
  return rep;
}

/// Convergence mode uses the bound 1 - (n-2)k/(n-1)^m (uniform m >= 4);
/// divergence mode uses 1.
inline QuotientReport quotient_criterion(const SphereStats& st, const Rational& t0, long i_min, QuotientMode mode) {
  if (mode == QuotientMode::Divergence) return quotient_criterion(st.c, t0, i_min, mode, Rational(1));
  if (!st.m || *st.m == kInfinity) throw Error(ErrorCode::NotUniform, "convergence bound needs a uniform label");
  return quotient_criterion(st.c, t0, i_min, mode, convergence_ratio_bound(st.n, *st.m));
}

// ---------------------------------------------------------------------------

struct ConvergenceVerdict {
  Rational t0;
  bool finite = false;
  std::optional<Rational> value;     // p(t0) when finite
  std::optional<RootInterval> pole;  // least positive pole when infinite
  std::string justification;
  std::optional<QuotientReport> corroboration;
};

inline const Rational& isolation_width() {
  static const Rational w(BigInt(1), BigInt(1) << 64);
  return w;
}

/// Finite iff the denominator has no root in (0, t0]. Since the Taylor
/// coefficients are nonnegative, the radius of convergence is itself a
/// positive real singularity (Pringsheim), i.e. the least positive root of the
/// denominator.
inline ConvergenceVerdict finiteness_verdict(const RationalFunction& f, const Rational& t0, unsigned sample = 64) {
  if (t0 <= 0 || t0 > 1) throw Error(ErrorCode::InvalidArgument, "evaluation point must lie in (0, 1]");
  for (const auto& x : taylor_coefficients(f, sample))
    if (x < 0) throw Error(ErrorCode::NegativeCoefficientDetected, "series has a negative coefficient");

  ConvergenceVerdict v;
  v.t0 = t0;
  v.justification =
      "coefficients nonnegative (first " + std::to_string(sample + 1) +
      " checked); by Pringsheim the radius of convergence is the least positive root of the denominator";
  if (f.den.degree() > 0) v.pole = isolate_smallest_root(f.den, Rational(0), t0, isolation_width());
  v.finite = !v.pole.has_value();
  if (v.finite) v.value = std::get<Rational>(evaluate_at_rational(f, t0));
  return v;
}

/// Evaluation points 1/(n-1) and 1/(n-2) (the latter only for n >= 3), each
/// with a quotient-criterion window attached when the uniform hypotheses hold
/// and the stats are deep enough.
inline std::vector<ConvergenceVerdict> theorem_verdicts(const CoxeterMatrix& M, const RationalFunction& f,
                                                        const SphereStats& st) {
  std::vector<ConvergenceVerdict> out;
  const unsigned n = M.rank();
  const auto props = diagram_properties(M);
  if (n >= 2) {
    auto v = finiteness_verdict(f, Rational(BigInt(1), BigInt(n - 1)));
    if (n >= 3 && props.uniform_label && *props.uniform_label >= 4 && *props.uniform_label != kInfinity) {
      const long i_min = 2 * static_cast<long>(*props.uniform_label);
      if (static_cast<long>(st.depth()) >= i_min + 2)
        v.corroboration = quotient_criterion(st, v.t0, i_min, QuotientMode::Convergence);
    }
    out.push_back(std::move(v));
  }
  if (n >= 3) {
    auto v = finiteness_verdict(f, Rational(BigInt(1), BigInt(n - 2)));
    if (n >= 4 && props.uniform_label == Order{3}) {
      const long i_min = 4;
      if (static_cast<long>(st.depth()) >= i_min + 2)
        v.corroboration = quotient_criterion(st, v.t0, i_min, QuotientMode::Divergence);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace coxgrowth
