#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "coxgrowth/coxeter_matrix.hpp"
#include "coxgrowth/polynomial.hpp"

namespace coxgrowth {

enum class Family { Trivial, A, B, D, E6, E7, E8, F4, H3, H4, I2, ReducibleProduct, Infinite };

struct IrreducibleType {
  Family family = Family::A;
  unsigned rank = 0;
  Order m = 0;  // only meaningful for I2
  std::vector<unsigned> exponents;

  std::string name() const {
    switch (family) {
      case Family::A: return "A" + std::to_string(rank);
      case Family::B: return "B" + std::to_string(rank);
      case Family::D: return "D" + std::to_string(rank);
      case Family::E6: return "E6";
      case Family::E7: return "E7";
      case Family::E8: return "E8";
      case Family::F4: return "F4";
      case Family::H3: return "H3";
      case Family::H4: return "H4";
      case Family::I2: return "I2(" + std::to_string(m) + ")";
      default: return "?";
    }
  }
};

/// Finite-type label of a parabolic subgroup <J>. Exponents are present iff
/// the subgroup is finite; prod (e + 1) is then the group order.
struct FiniteTypeLabel {
  Family family = Family::Trivial;
  std::vector<IrreducibleType> components;
  std::vector<unsigned> exponents;

  bool finite() const { return family != Family::Infinite; }

  std::string name() const {
    if (family == Family::Infinite) return "infinite";
    if (components.empty()) return "trivial";
    std::string out;
    for (const auto& c : components) {
      if (!out.empty()) out += "x";
      out += c.name();
    }
    return out;
  }

  BigInt order() const {
    BigInt n = 1;
    for (unsigned e : exponents) n *= e + 1;
    return n;
  }

  /// Length of the longest element: the sum of the exponents.
  unsigned longest_length() const { return std::accumulate(exponents.begin(), exponents.end(), 0U); }

  /// W_J(t) = prod_e [e+1]_t in factored form.
  CyclotomicProduct poincare_factors() const {
    CyclotomicProduct out;
    for (unsigned e : exponents) out *= CyclotomicProduct::q_integer(e + 1);
    return out;
  }
};

namespace detail {

inline std::vector<unsigned> range_exponents(unsigned first, unsigned step, unsigned count) {
  std::vector<unsigned> v(count);
  for (unsigned i = 0; i < count; ++i) v[i] = first + i * step;
  return v;
}

// Classifies one connected component of the Coxeter graph (edges m_st >= 3).
// Returns false when the component is not of finite type.
inline bool classify_component(const CoxeterMatrix& M, const std::vector<Generator>& verts, IrreducibleType& out) {
  const unsigned k = static_cast<unsigned>(verts.size());
  if (k == 1) {
    out = {Family::A, 1, 0, {1}};
    return true;
  }
  if (k == 2) {
    const Order m = M(verts[0], verts[1]);
    if (m == kInfinity) return false;
    out = {Family::I2, 2, m, {1, m - 1}};
    return true;
  }

  std::vector<unsigned> degree(k, 0);
  unsigned edges = 0;
  unsigned label4 = 0, label5 = 0, label_big = 0;
  for (unsigned a = 0; a < k; ++a) {
    for (unsigned b = a + 1; b < k; ++b) {
      const Order m = M(verts[a], verts[b]);
      if (m < 3) continue;
      ++edges;
      ++degree[a];
      ++degree[b];
      if (m == 4) ++label4;
      else if (m == 5) ++label5;
      else if (m != 3) ++label_big;
    }
  }
  // Connected with k-1 edges means a tree; anything else contains a cycle.
  if (edges != k - 1 || label_big > 0 || label4 + label5 > 1) return false;
  const unsigned branch = static_cast<unsigned>(std::count(degree.begin(), degree.end(), 3U));
  if (*std::max_element(degree.begin(), degree.end()) > 3 || branch > 1) return false;

  if (branch == 1) {
    if (label4 + label5 > 0) return false;
    const unsigned centre = static_cast<unsigned>(std::find(degree.begin(), degree.end(), 3U) - degree.begin());
    std::vector<unsigned> arms;
    for (unsigned start = 0; start < k; ++start) {
      if (start == centre || M(verts[centre], verts[start]) < 3) continue;
      unsigned len = 1, prev = centre, cur = start;
      for (;;) {
        unsigned next = k;
        for (unsigned v = 0; v < k; ++v)
          if (v != prev && v != cur && M(verts[cur], verts[v]) >= 3) next = v;
        if (next == k) break;
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) {
      out = {Family::D, k, 0, range_exponents(1, 2, k - 1)};
      out.exponents.push_back(k - 1);
      std::sort(out.exponents.begin(), out.exponents.end());
      return true;
    }
    if (arms[0] == 1 && arms[1] == 2) {
      if (arms[2] == 2) { out = {Family::E6, 6, 0, {1, 4, 5, 7, 8, 11}}; return true; }
      if (arms[2] == 3) { out = {Family::E7, 7, 0, {1, 5, 7, 9, 11, 13, 17}}; return true; }
      if (arms[2] == 4) { out = {Family::E8, 8, 0, {1, 7, 11, 13, 17, 19, 23, 29}}; return true; }
    }
    return false;
  }

  // Path diagram. Locate the special edge, if any, and whether it touches an end.
  if (label4 + label5 == 0) {
    out = {Family::A, k, 0, range_exponents(1, 1, k)};
    return true;
  }
  bool at_end = false;
  for (unsigned a = 0; a < k; ++a)
    for (unsigned b = a + 1; b < k; ++b) {
      const Order m = M(verts[a], verts[b]);
      if (m == 4 || m == 5) at_end = degree[a] == 1 || degree[b] == 1;
    }
  if (label4 == 1) {
    if (at_end) {
      out = {Family::B, k, 0, range_exponents(1, 2, k)};
      return true;
    }
    if (k == 4) {
      out = {Family::F4, 4, 0, {1, 5, 7, 11}};
      return true;
    }
    return false;
  }
  if (at_end && k == 3) { out = {Family::H3, 3, 0, {1, 5, 9}}; return true; }
  if (at_end && k == 4) { out = {Family::H4, 4, 0, {1, 11, 19, 29}}; return true; }
  return false;
}

}  // namespace detail

/// Decides finiteness of <J> by splitting the induced diagram into connected
/// components and matching each against the finite-type list.
inline FiniteTypeLabel classify(const CoxeterMatrix& M, GeneratorSet J) {
  FiniteTypeLabel label;
  std::vector<Generator> remaining = J.members();
  std::vector<bool> seen(M.rank(), false);
  for (Generator root : remaining) {
    if (seen[root]) continue;
    std::vector<Generator> comp{root};
    seen[root] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (Generator v : remaining)
        if (!seen[v] && M(comp[head], v) >= 3) {
          seen[v] = true;
          comp.push_back(v);
        }
    std::sort(comp.begin(), comp.end());
    IrreducibleType type;
    if (!detail::classify_component(M, comp, type)) {
      label.family = Family::Infinite;
      label.components.clear();
      label.exponents.clear();
      return label;
    }
    label.exponents.insert(label.exponents.end(), type.exponents.begin(), type.exponents.end());
    label.components.push_back(std::move(type));
  }
  std::sort(label.exponents.begin(), label.exponents.end());
  if (label.components.size() == 1)
    label.family = label.components.front().family;
  else if (label.components.size() > 1)
    label.family = Family::ReducibleProduct;
  return label;
}

struct SphericalSubset {
  GeneratorSet subset;
  FiniteTypeLabel label;
};

/// Every J (including the empty set) with <J> finite, ordered by size then
/// bitmask. Spherical subsets are downward closed, so the search only grows
/// sets that are already spherical.
inline std::vector<SphericalSubset> spherical_subsets(const CoxeterMatrix& M) {
  std::vector<SphericalSubset> out;
  std::vector<GeneratorSet> frontier{GeneratorSet{}};
  out.push_back({GeneratorSet{}, classify(M, GeneratorSet{})});
  while (!frontier.empty()) {
    std::vector<GeneratorSet> next;
    for (GeneratorSet J : frontier) {
      const Generator start = J.empty() ? 0 : 32 - std::countl_zero(J.bits());
      for (Generator s = start; s < M.rank(); ++s) {
        GeneratorSet bigger = J;
        bigger.insert(s);
        FiniteTypeLabel label = classify(M, bigger);
        if (!label.finite()) continue;
        next.push_back(bigger);
        out.push_back({bigger, std::move(label)});
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const SphericalSubset& a, const SphericalSubset& b) {
    if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
    return a.subset.bits() < b.subset.bits();
  });
  return out;
}

/// W_J(t) = prod_e (1 + t + ... + t^e).
inline Polynomial poincare_polynomial_finite(const FiniteTypeLabel& label) {
  if (!label.finite()) throw Error(ErrorCode::NotSpherical, "Poincare polynomial requested for an infinite parabolic");
  Polynomial p = Polynomial::constant(1);
  for (unsigned e : label.exponents) p *= Polynomial::q_integer(e + 1);
  return p;
}

}  // namespace coxgrowth
