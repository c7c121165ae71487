#pragma once

#include <optional>
#include <vector>

#include "coxgrowth/polynomial.hpp"

namespace coxgrowth {

/// Square-free part p / gcd(p, p'), primitive with positive leading coefficient.
inline Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  const Polynomial g = gcd(p, p.derivative());
  Polynomial q = exact_divide(p.primitive_part(), g);
  if (q.leading() < 0) q = -q;
  return q;
}

/// Sturm chain p, p', -rem(p, p'), ... with each member rescaled by positive
/// constants only, so sign variations are those of the rational chain.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p) {
    if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "Sturm sequence of the zero polynomial");
    chain_.push_back(p.primitive_part());
    if (p.degree() == 0) return;
    chain_.push_back(p.derivative().primitive_part());
    while (chain_.back().degree() > 0) {
      Polynomial r = positive_pseudo_remainder(chain_[chain_.size() - 2], chain_.back());
      if (r.is_zero()) break;
      chain_.push_back((-r).primitive_part());
    }
  }

  /// Number of sign changes of the chain at x, zeros skipped.
  unsigned variations(const Rational& x) const {
    unsigned count = 0;
    int prev = 0;
    for (const auto& q : chain_) {
      const int s = q.sign_at(x);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  /// Distinct real roots in (a, b], a < b, p(a) != 0.
  unsigned count_roots(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

  const Polynomial& polynomial() const { return chain_.front(); }

 private:
  std::vector<Polynomial> chain_;
};

struct RootInterval {
  Rational lo;  // exclusive
  Rational hi;  // inclusive
};

/// Isolates the smallest root of p in (lower, upper] by bisection until the
/// interval is no wider than `width`. p(lower) must be nonzero. nullopt when
/// there is no root in the interval.
inline std::optional<RootInterval> isolate_smallest_root(const Polynomial& p, const Rational& lower,
                                                         const Rational& upper, const Rational& width) {
  const SturmSequence sturm(square_free_part(p));
  if (sturm.polynomial().sign_at(lower) == 0)
    throw Error(ErrorCode::InvalidArgument, "isolation interval starts at a root");
  if (sturm.count_roots(lower, upper) == 0) return std::nullopt;
  RootInterval iv{lower, upper};
  if (sturm.polynomial().sign_at(upper) == 0 && sturm.count_roots(lower, upper) == 1) return RootInterval{upper, upper};
  while (iv.hi - iv.lo > width) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    if (sturm.polynomial().sign_at(mid) == 0 && sturm.count_roots(iv.lo, mid) == 1) return RootInterval{mid, mid};
    if (sturm.count_roots(iv.lo, mid) > 0)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
  return iv;
}

}  // namespace coxgrowth
