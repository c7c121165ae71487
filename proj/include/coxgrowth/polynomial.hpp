#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxgrowth/error.hpp"

namespace coxgrowth {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Parses "p/q" or "p". Throws InvalidArgument on anything else.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) throw;
    throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + text + "'");
  }
}

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending degree order with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static Polynomial constant(const BigInt& c) { return Polynomial(std::vector<BigInt>{c}); }
  static Polynomial monomial(const BigInt& c, std::size_t degree) {
    std::vector<BigInt> v(degree + 1);
    v[degree] = c;
    return Polynomial(std::move(v));
  }
  /// 1 + t + ... + t^(k-1)
  static Polynomial q_integer(std::size_t k) { return Polynomial(std::vector<BigInt>(k, BigInt(1))); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }
  const BigInt& leading() const { return coeffs_.back(); }

  Polynomial& operator+=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const BigInt& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const BigInt& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }
  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Multiply by t^k.
  Polynomial shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<BigInt> v(k);
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }

  Polynomial derivative() const {
    std::vector<BigInt> v;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(coeffs_[i] * i);
    return Polynomial(std::move(v));
  }

  BigInt evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Rational evaluate(const Rational& x) const {
    // Homogenised Horner over the integers: sum a_i p^i q^(d-i), then one division.
    if (is_zero()) return Rational(0);
    const BigInt& p = boost::multiprecision::numerator(x);
    const BigInt& q = boost::multiprecision::denominator(x);
    BigInt acc = 0;
    BigInt qpow = 1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * p + *it * qpow;
      qpow *= q;
    }
    // acc = q^d * f(p/q), qpow = q^(d+1)
    return Rational(acc * q, qpow);
  }

  /// Sign of f(x) in {-1, 0, 1} without forming the rational value.
  int sign_at(const Rational& x) const {
    if (is_zero()) return 0;
    const BigInt& p = boost::multiprecision::numerator(x);
    const BigInt& q = boost::multiprecision::denominator(x);
    BigInt acc = 0;
    BigInt qpow = 1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * p + *it * qpow;
      qpow *= q;
    }
    return acc.sign();
  }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
    return g;
  }

  /// Divides out the content; the sign of the leading coefficient is kept.
  Polynomial primitive_part() const {
    if (is_zero()) return {};
    const BigInt g = content();
    std::vector<BigInt> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i] / g;
    return Polynomial(std::move(v));
  }

  std::string str(char var = 't') const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const BigInt& c = coeffs_[i];
      if (c == 0) continue;
      const BigInt mag = abs(c);
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      if (i == 0 || mag != 1) out += mag.str();
      if (i >= 1) out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// lc(b)^(deg a - deg b + 1) * a = q * b + r, computed over the integers.
/// The returned remainder is scaled by a positive constant so its sign
/// pattern matches the rational remainder.
inline Polynomial positive_pseudo_remainder(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> r = a.coefficients();
  const BigInt lc = b.leading();
  const int db = b.degree();
  int steps = 0;
  for (int k = a.degree(); k >= db; --k) {
    const BigInt top = r[k];
    for (auto& x : r) x *= lc;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= top * b.coefficient(j);
    ++steps;
  }
  Polynomial rem(std::move(r));
  if (lc < 0 && steps % 2 == 1) rem = -rem;
  return rem;
}

/// Exact division; throws InvalidArgument if b does not divide a over Z.
inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
  std::vector<BigInt> r = a.coefficients();
  std::vector<BigInt> q(a.degree() - b.degree() + 1);
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k] == 0) continue;
    if (r[k] % b.leading() != 0) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
    const BigInt factor = r[k] / b.leading();
    q[k - db] = factor;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= factor * b.coefficient(j);
  }
  for (const auto& x : r)
    if (x != 0) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
  return Polynomial(std::move(q));
}

/// Primitive gcd over Z[t], normalised to a positive leading coefficient.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  if (a.is_zero() && b.is_zero()) return {};
  a = a.primitive_part();
  b = b.primitive_part();
  while (!b.is_zero()) {
    Polynomial r = positive_pseudo_remainder(a, b).primitive_part();
    a = std::move(b);
    b = std::move(r);
  }
  if (a.leading() < 0) a = -a;
  return a;
}

/// Cyclotomic polynomial Phi_d, built by dividing t^d - 1 by Phi_e for every
/// proper divisor e of d.
inline const Polynomial& cyclotomic(unsigned d) {
  static std::map<unsigned, Polynomial> cache;
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
  Polynomial p = Polynomial::monomial(1, d) - Polynomial::constant(1);
  for (unsigned e = 1; e < d; ++e)
    if (d % e == 0) p = exact_divide(p, cyclotomic(e));
  return cache.emplace(d, std::move(p)).first->second;
}

/// A product of cyclotomic polynomials, kept factored as index -> multiplicity.
/// Poincare polynomials of finite Coxeter groups are products of q-integers
/// [e+1] = prod_{d | e+1, d > 1} Phi_d, so this representation makes least
/// common multiples exact and cheap.
class CyclotomicProduct {
 public:
  static CyclotomicProduct q_integer(unsigned k) {
    CyclotomicProduct out;
    for (unsigned d = 2; d <= k; ++d)
      if (k % d == 0) ++out.factors_[d];
    return out;
  }

  CyclotomicProduct& operator*=(const CyclotomicProduct& other) {
    for (const auto& [d, mult] : other.factors_) factors_[d] += mult;
    return *this;
  }

  CyclotomicProduct lcm(const CyclotomicProduct& other) const {
    CyclotomicProduct out = *this;
    for (const auto& [d, mult] : other.factors_) out.factors_[d] = std::max(out.factors_[d], mult);
    return out;
  }

  /// this / other; other must divide this.
  CyclotomicProduct quotient(const CyclotomicProduct& other) const {
    CyclotomicProduct out = *this;
    for (const auto& [d, mult] : other.factors_) {
      auto it = out.factors_.find(d);
      if (it == out.factors_.end() || it->second < mult)
        throw Error(ErrorCode::InvalidArgument, "cyclotomic quotient is not a polynomial");
      it->second -= mult;
      if (it->second == 0) out.factors_.erase(it);
    }
    return out;
  }

  Polynomial expand() const {
    Polynomial p = Polynomial::constant(1);
    for (const auto& [d, mult] : factors_)
      for (unsigned i = 0; i < mult; ++i) p *= cyclotomic(d);
    return p;
  }

  const std::map<unsigned, unsigned>& factors() const { return factors_; }

 private:
  std::map<unsigned, unsigned> factors_;
};

}  // namespace coxgrowth
