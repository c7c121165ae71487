#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxgrowth/error.hpp"

namespace coxgrowth {

/// Order m_st of a product of two generators; kInfinity sorts above every
/// finite order.
using Order = std::uint32_t;
inline constexpr Order kInfinity = std::numeric_limits<Order>::max();

using Generator = unsigned;

/// Rank is capped by the width of the descent bitmask.
inline constexpr unsigned kMaxRank = 32;

/// Subset of S as a bitmask over generator indices.
class GeneratorSet {
 public:
  constexpr GeneratorSet() = default;
  constexpr explicit GeneratorSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr GeneratorSet single(Generator s) { return GeneratorSet(std::uint32_t{1} << s); }
  static constexpr GeneratorSet pair(Generator s, Generator t) {
    return GeneratorSet((std::uint32_t{1} << s) | (std::uint32_t{1} << t));
  }
  static constexpr GeneratorSet all(unsigned rank) {
    return GeneratorSet(rank >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << rank) - 1);
  }

  constexpr bool contains(Generator s) const { return (bits_ >> s) & 1U; }
  constexpr void insert(Generator s) { bits_ |= std::uint32_t{1} << s; }
  constexpr void erase(Generator s) { bits_ &= ~(std::uint32_t{1} << s); }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool is_subset_of(GeneratorSet other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<Generator> members() const {
    std::vector<Generator> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Generator>(std::countr_zero(b)));
    return out;
  }

  friend constexpr bool operator==(GeneratorSet, GeneratorSet) = default;
  friend constexpr auto operator<=>(GeneratorSet, GeneratorSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Symmetric matrix (m_st) of a Coxeter system. Immutable once validated.
class CoxeterMatrix {
 public:
  unsigned rank() const { return rank_; }
  Order operator()(Generator s, Generator t) const { return entries_[s * rank_ + t]; }

  /// Uniform label m with m_st = m for every s != t, if one exists.
  std::optional<Order> uniform_label() const {
    if (rank_ < 2) return std::nullopt;
    const Order m = (*this)(0, 1);
    for (Generator s = 0; s < rank_; ++s)
      for (Generator t = s + 1; t < rank_; ++t)
        if ((*this)(s, t) != m) return std::nullopt;
    return m;
  }

  static CoxeterMatrix uniform(unsigned rank, Order m);

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  friend CoxeterMatrix validate_matrix(const std::vector<std::vector<Order>>& raw);

  unsigned rank_ = 0;
  std::vector<Order> entries_;
};

/// Checks squareness, symmetry, unit diagonal and off-diagonal >= 2.
inline CoxeterMatrix validate_matrix(const std::vector<std::vector<Order>>& raw) {
  const std::size_t n = raw.size();
  if (n == 0) throw Error(ErrorCode::NotSquare, "matrix is empty");
  if (n > kMaxRank) throw Error(ErrorCode::InvalidArgument, "rank " + std::to_string(n) + " exceeds 32");
  for (const auto& row : raw)
    if (row.size() != n) throw Error(ErrorCode::NotSquare, "row length differs from number of rows");

  for (std::size_t s = 0; s < n; ++s) {
    if (raw[s][s] != 1)
      throw Error(ErrorCode::BadDiagonal, "m_ss must be 1 at s=" + std::to_string(s));
    for (std::size_t t = 0; t < n; ++t) {
      if (raw[s][t] != raw[t][s])
        throw Error(ErrorCode::NonSymmetric,
                    "m_st != m_ts at (" + std::to_string(s) + "," + std::to_string(t) + ")");
      if (s != t && raw[s][t] < 2)
        throw Error(ErrorCode::BadOffDiagonal,
                    "m_st < 2 at (" + std::to_string(s) + "," + std::to_string(t) + ")");
    }
  }

  CoxeterMatrix m;
  m.rank_ = static_cast<unsigned>(n);
  m.entries_.reserve(n * n);
  for (const auto& row : raw) m.entries_.insert(m.entries_.end(), row.begin(), row.end());
  return m;
}

inline CoxeterMatrix CoxeterMatrix::uniform(unsigned rank, Order m) {
  std::vector<std::vector<Order>> raw(rank, std::vector<Order>(rank, m));
  for (unsigned s = 0; s < rank; ++s) raw[s][s] = 1;
  return validate_matrix(raw);
}

struct DiagramProperties {
  bool two_spherical = false;
  bool complete_diagram = false;
  std::optional<Order> uniform_label;
};

inline DiagramProperties diagram_properties(const CoxeterMatrix& M) {
  DiagramProperties props{true, true, M.uniform_label()};
  for (Generator s = 0; s < M.rank(); ++s) {
    for (Generator t = s + 1; t < M.rank(); ++t) {
      if (M(s, t) == kInfinity) props.two_spherical = false;
      if (M(s, t) < 3) props.complete_diagram = false;
    }
  }
  return props;
}

/// The reduction order: true iff some injection phi: S -> S' satisfies
/// m_st <= m'_{phi(s)phi(t)} for all s, t. Exhaustive over injections.
inline bool compare_preorder(const CoxeterMatrix& lhs, const CoxeterMatrix& rhs) {
  const unsigned n = lhs.rank();
  const unsigned n2 = rhs.rank();
  if (n > n2) return false;

  std::vector<Generator> image(n);
  std::vector<bool> used(n2, false);

  // Depth-first extension of a partial injection, pruning as soon as one
  // already-assigned pair violates the bound.
  auto extend = [&](auto&& self, unsigned s) -> bool {
    if (s == n) return true;
    for (Generator target = 0; target < n2; ++target) {
      if (used[target]) continue;
      bool ok = true;
      for (Generator prev = 0; prev < s && ok; ++prev) ok = lhs(prev, s) <= rhs(image[prev], target);
      if (!ok) continue;
      used[target] = true;
      image[s] = target;
      if (self(self, s + 1)) return true;
      used[target] = false;
    }
    return false;
  };
  return extend(extend, 0);
}

// ---------------------------------------------------------------------------
// JSON form: {"rank": n, "m": [[...]]} with "inf" or 0 for infinity, or the
// shorthand {"rank": n, "uniform": m}.

namespace detail {

inline Order order_from_json(const nlohmann::json& v) {
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf" || s == "infinity" || s == "oo") return kInfinity;
    throw Error(ErrorCode::ParseError, "unrecognised order string '" + s + "'");
  }
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x == 0) return kInfinity;
    if (x < 0 || x >= static_cast<long long>(kInfinity))
      throw Error(ErrorCode::ParseError, "order out of range: " + std::to_string(x));
    return static_cast<Order>(x);
  }
  throw Error(ErrorCode::ParseError, "matrix entries must be integers or \"inf\"");
}

}  // namespace detail

inline CoxeterMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "matrix document must be a JSON object");
  std::optional<unsigned> rank;
  if (doc.contains("rank")) {
    if (!doc["rank"].is_number_unsigned() || doc["rank"].get<unsigned>() == 0)
      throw Error(ErrorCode::ParseError, "\"rank\" must be a positive integer");
    rank = doc["rank"].get<unsigned>();
  }

  if (doc.contains("uniform")) {
    if (!rank) throw Error(ErrorCode::ParseError, "\"uniform\" requires \"rank\"");
    const Order m = detail::order_from_json(doc["uniform"]);
    std::vector<std::vector<Order>> raw(*rank, std::vector<Order>(*rank, m));
    for (unsigned s = 0; s < *rank; ++s) raw[s][s] = 1;
    return validate_matrix(raw);
  }

  if (!doc.contains("m") || !doc["m"].is_array())
    throw Error(ErrorCode::ParseError, "missing \"m\" array");
  std::vector<std::vector<Order>> raw;
  for (const auto& row : doc["m"]) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "\"m\" must be an array of arrays");
    auto& out = raw.emplace_back();
    for (const auto& v : row) out.push_back(detail::order_from_json(v));
  }
  if (rank && *rank != raw.size())
    throw Error(ErrorCode::NotSquare, "\"rank\" does not match the number of rows");
  return validate_matrix(raw);
}

inline nlohmann::ordered_json matrix_to_json(const CoxeterMatrix& M) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Generator s = 0; s < M.rank(); ++s) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Generator t = 0; t < M.rank(); ++t) {
      if (M(s, t) == kInfinity)
        row.push_back("inf");
      else
        row.push_back(M(s, t));
    }
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json out;
  out["rank"] = M.rank();
  out["m"] = std::move(rows);
  return out;
}

inline CoxeterMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON in '") + path + "': " + e.what());
  }
  return matrix_from_json(doc);
}

inline std::string order_to_string(Order m) { return m == kInfinity ? "inf" : std::to_string(m); }

}  // namespace coxgrowth
