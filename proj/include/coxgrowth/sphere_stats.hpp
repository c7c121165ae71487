#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxgrowth/ball.hpp"
#include "coxgrowth/coxeter_matrix.hpp"
#include "coxgrowth/polynomial.hpp"

namespace coxgrowth {

/// Sphere cardinalities c_i and counts d_i of elements with exactly one right
/// descent, for i = 0 .. depth.
struct SphereStats {
  unsigned n = 0;
  std::optional<Order> m;
  std::vector<std::uint64_t> c;
  std::vector<std::uint64_t> d;

  unsigned depth() const { return c.empty() ? 0 : static_cast<unsigned>(c.size() - 1); }
};

inline SphereStats compute_stats(const Ball& ball) {
  SphereStats st{ball.rank(), ball.matrix().uniform_label(), ball.sphere_sizes(), {}};
  st.d.assign(st.c.size(), 0);
  for (ElementId w = 0; w < ball.size(); ++w)
    if (ball.descents(w).size() == 1) ++st.d[ball.length(w)];
  return st;
}

/// Per layer, the number of elements with 0, 1, 2 and 3+ right descents.
inline std::vector<std::array<std::uint64_t, 4>> descent_histogram(const Ball& ball) {
  std::vector<std::array<std::uint64_t, 4>> out(ball.depth() + 1, {0, 0, 0, 0});
  for (ElementId w = 0; w < ball.size(); ++w) ++out[ball.length(w)][std::min(ball.descents(w).size(), 3U)];
  return out;
}

// ---------------------------------------------------------------------------

struct Check {
  long i = 0;
  Rational lhs;
  Rational rhs;
  std::string relation;  // "==", "<=", ">="
  bool holds = true;
  std::string detail;
};

/// Outcome of one identity or scan. Counting verifiers record every
/// comparison; geometric scans record only violations plus counters.
struct VerificationReport {
  VerificationReport() = default;
  VerificationReport(std::string name, std::optional<std::pair<long, long>> range)
      : name(std::move(name)), range(std::move(range)) {}

  std::string name;
  std::optional<std::pair<long, long>> range;
  std::vector<Check> checks;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t violations = 0;
  bool diagnostic = false;

  bool holds() const { return violations == 0; }

  std::vector<Check> failures() const {
    std::vector<Check> out;
    std::copy_if(checks.begin(), checks.end(), std::back_inserter(out), [](const Check& c) { return !c.holds; });
    return out;
  }

  std::optional<long> first_failure() const {
    for (const auto& c : checks)
      if (!c.holds) return c.i;
    return std::nullopt;
  }

  void record(long i, Rational lhs, Rational rhs, const std::string& relation, std::string detail = {}) {
    bool ok = false;
    if (relation == "==") ok = lhs == rhs;
    else if (relation == "<=") ok = lhs <= rhs;
    else if (relation == ">=") ok = lhs >= rhs;
    else throw Error(ErrorCode::InvalidArgument, "unknown relation " + relation);
    ++checked;
    if (!ok) ++violations;
    checks.push_back({i, std::move(lhs), std::move(rhs), relation, ok, std::move(detail)});
  }
};

/// Whether verifiers refuse to run outside their hypotheses (Enforce) or run
/// anyway and report what they find (Diagnostic).
enum class Gate { Enforce, Diagnostic };

namespace detail {

inline Order require_uniform(const SphereStats& st, Order min_m, ErrorCode code, Gate gate, const char* what) {
  if (!st.m) throw Error(ErrorCode::NotUniform, std::string(what) + " needs a uniform label m");
  if (*st.m == kInfinity) throw Error(ErrorCode::NotUniform, std::string(what) + " needs a finite uniform label");
  if (st.n < 3 && gate == Gate::Enforce) throw Error(ErrorCode::RankTooSmall, std::string(what) + " needs rank >= 3");
  if (*st.m < min_m && gate == Gate::Enforce)
    throw Error(code, std::string(what) + " needs m >= " + std::to_string(min_m));
  return *st.m;
}

inline std::pair<long, long> require_range(long lo, long hi, const char* what) {
  if (lo > hi)
    throw Error(ErrorCode::RangeEmpty, std::string(what) + ": no index in [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]; increase the depth");
  return {lo, hi};
}

inline Rational R(std::uint64_t x) { return Rational(BigInt(x)); }

}  // namespace detail

/// c_i - d_i = C(n-2, 2) c_{i-m} + (n-2) d_{i-m}   for m < i <= N.
inline VerificationReport verify_L32(const SphereStats& st, Gate gate = Gate::Enforce) {
  const long m = detail::require_uniform(st, 3, ErrorCode::HypothesisViolated, gate, "L32");
  const long N = st.depth();
  const auto range = detail::require_range(m + 1, N, "L32");
  const long n = st.n;
  const BigInt k = n >= 3 ? BigInt((n - 2) * (n - 3) / 2) : BigInt(0);  // C(n-2, 2)
  VerificationReport rep{"L32", range};
  rep.diagnostic = gate == Gate::Diagnostic;
  for (long i = range.first; i <= range.second; ++i) {
    const Rational lhs = detail::R(st.c[i]) - detail::R(st.d[i]);
    const Rational rhs = Rational(k) * detail::R(st.c[i - m]) + Rational(n - 2) * detail::R(st.d[i - m]);
    rep.record(i, lhs, rhs, "==");
  }
  return rep;
}

/// 2 c_{i+1} - d_{i+1} = (n-2) c_i + d_i   for m < i <= N-1.
inline VerificationReport verify_L33(const SphereStats& st, Gate gate = Gate::Enforce) {
  const long m = detail::require_uniform(st, 3, ErrorCode::HypothesisViolated, gate, "L33");
  const long N = st.depth();
  const auto range = detail::require_range(m + 1, N - 1, "L33");
  VerificationReport rep{"L33", range};
  rep.diagnostic = gate == Gate::Diagnostic;
  for (long i = range.first; i <= range.second; ++i) {
    const Rational lhs = 2 * detail::R(st.c[i + 1]) - detail::R(st.d[i + 1]);
    const Rational rhs = Rational(static_cast<long>(st.n) - 2) * detail::R(st.c[i]) + detail::R(st.d[i]);
    rep.record(i, lhs, rhs, "==");
  }
  return rep;
}

/// c_{i+1} <= (n-1) c_i - (n-2) d_{i-m+1} <= (n-1) c_i   for m < i <= N-1.
inline VerificationReport verify_L34(const SphereStats& st, Gate gate = Gate::Enforce) {
  const long m = detail::require_uniform(st, 3, ErrorCode::HypothesisViolated, gate, "L34");
  const long N = st.depth();
  const auto range = detail::require_range(m + 1, N - 1, "L34");
  VerificationReport rep{"L34", range};
  rep.diagnostic = gate == Gate::Diagnostic;
  for (long i = range.first; i <= range.second; ++i) {
    const Rational upper = Rational(static_cast<long>(st.n) - 1) * detail::R(st.c[i]);
    const Rational middle = upper - Rational(static_cast<long>(st.n) - 2) * detail::R(st.d[i - m + 1]);
    rep.record(i, detail::R(st.c[i + 1]), middle, "<=", "c_{i+1} <= (n-1)c_i - (n-2)d_{i-m+1}");
    rep.record(i, middle, upper, "<=", "(n-1)c_i - (n-2)d_{i-m+1} <= (n-1)c_i");
  }
  return rep;
}

/// (n-2) c_i <= c_{i+1} and (n-2) d_i <= d_{i+1}   for m < i <= N-1, m > 3.
inline VerificationReport verify_L35(const SphereStats& st, Gate gate = Gate::Enforce) {
  const long m = detail::require_uniform(st, 4, ErrorCode::RequiresMGreaterThan3, gate, "L35");
  const long N = st.depth();
  const auto range = detail::require_range(m + 1, N - 1, "L35");
  VerificationReport rep{"L35", range};
  rep.diagnostic = gate == Gate::Diagnostic;
  for (long i = range.first; i <= range.second; ++i) {
    rep.record(i, Rational(static_cast<long>(st.n) - 2) * detail::R(st.c[i]), detail::R(st.c[i + 1]), "<=", "(n-2)c_i <= c_{i+1}");
    rep.record(i, Rational(static_cast<long>(st.n) - 2) * detail::R(st.d[i]), detail::R(st.d[i + 1]), "<=", "(n-2)d_i <= d_{i+1}");
  }
  return rep;
}

/// (n-2) c_i <= d_i + d_{i+1}   for 0 <= i <= N-1; rank >= 4, complete diagram.
inline VerificationReport verify_L45(const SphereStats& st, const DiagramProperties& props, Gate gate = Gate::Enforce) {
  if (gate == Gate::Enforce) {
    if (st.n < 4) throw Error(ErrorCode::RankTooSmall, "L45 needs rank >= 4");
    if (!props.two_spherical || !props.complete_diagram)
      throw Error(ErrorCode::DiagramNotComplete, "L45 needs a 2-spherical complete diagram");
  }
  const long N = st.depth();
  const auto range = detail::require_range(0, N - 1, "L45");
  VerificationReport rep{"L45", range};
  rep.diagnostic = gate == Gate::Diagnostic;
  for (long i = range.first; i <= range.second; ++i)
    rep.record(i, Rational(static_cast<long>(st.n) - 2) * detail::R(st.c[i]),
               detail::R(st.d[i]) + detail::R(st.d[i + 1]), "<=");
  return rep;
}

/// k = (1 - 1/(2 (n-2)^(m-2))) * (1/(n-2)^(m-1) + 1)^(-1), the positive lower
/// bound for d_i / c_i in uniform systems with m >= 4.
inline Rational compute_k(unsigned n, Order m) {
  if (n < 3 || m < 4 || m == kInfinity)
    throw Error(ErrorCode::HypothesisViolated, "k is defined for n >= 3 and finite m >= 4");
  const BigInt base = n - 2;
  const BigInt p2 = boost::multiprecision::pow(base, m - 2);
  const BigInt p1 = p2 * base;
  const Rational first = Rational(1) - Rational(BigInt(1), 2 * p2);
  const Rational second = Rational(BigInt(1), p1) + 1;
  return first / second;
}

/// d_i >= k c_i   for m < i <= N.
inline VerificationReport verify_descent_ratio(const SphereStats& st, const Rational& k, Gate gate = Gate::Enforce) {
  const long m = detail::require_uniform(st, 4, ErrorCode::HypothesisViolated, gate, "k-ratio");
  const long N = st.depth();
  const auto range = detail::require_range(m + 1, N, "k-ratio");
  VerificationReport rep{"k-ratio", range};
  rep.diagnostic = gate == Gate::Diagnostic;
  for (long i = range.first; i <= range.second; ++i)
    rep.record(i, detail::R(st.d[i]), k * detail::R(st.c[i]), ">=", "d_i >= k c_i, k = " + to_string(k));
  return rep;
}

/// c_i(small) <= c_i(big) for every i both tables cover.
inline VerificationReport verify_monotonicity(const SphereStats& small, const SphereStats& big) {
  const long N = std::min(small.depth(), big.depth());
  VerificationReport rep{"monotonicity", std::pair<long, long>{0, N}};
  for (long i = 0; i <= N; ++i) rep.record(i, detail::R(small.c[i]), detail::R(big.c[i]), "<=");
  return rep;
}

}  // namespace coxgrowth
