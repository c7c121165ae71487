#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coxgrowth/coxeter_matrix.hpp"

namespace coxgrowth {

using ElementId = std::uint32_t;
inline constexpr ElementId kAbsent = std::numeric_limits<ElementId>::max();
inline constexpr std::size_t kDefaultElementCap = 10'000'000;

/// An element of W identified by its ShortLex-least reduced word.
struct GroupElement {
  std::vector<Generator> word;

  std::size_t length() const { return word.size(); }

  /// Word as an index string, e.g. "0101". Indices above 9 use letters.
  std::string str() const {
    std::string out;
    for (Generator s : word) out += static_cast<char>(s < 10 ? '0' + s : 'a' + (s - 10));
    return out;
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    if (a.word.size() != b.word.size()) return a.word.size() <=> b.word.size();
    return a.word <=> b.word;
  }
};

enum class Direction { Up, Down };

/// All elements of length <= depth, layer by layer, each layer in ShortLex
/// order. Stores for every element its right-descent set and the index of ws
/// for each generator s (kAbsent when ws lies beyond the depth).
///
/// Construction never canonicalises words by rewriting. For x = ws with s
/// ascending, and t != s, the {s,t}-parabolic factor of x is the longest
/// element of <s,t> exactly when the alternating chain w, wt, wts, ... keeps
/// descending for m_st - 1 steps. That chain lives in layers that are
/// already complete, so the full descent set of x, and every xt, is known
/// before x is stored. x is stored only when reached from its ShortLex
/// predecessor, which makes generation order equal ShortLex order.
class Ball {
 public:
  static Ball build(const CoxeterMatrix& M, unsigned depth, std::size_t cap = kDefaultElementCap);

  const CoxeterMatrix& matrix() const { return matrix_; }
  unsigned rank() const { return matrix_.rank(); }
  unsigned depth() const { return depth_; }
  std::size_t size() const { return parent_.size(); }

  std::size_t layer_begin(unsigned i) const { return offsets_[i]; }
  std::size_t layer_end(unsigned i) const { return offsets_[i + 1]; }
  std::size_t layer_size(unsigned i) const { return offsets_[i + 1] - offsets_[i]; }

  /// c_0 .. c_depth
  std::vector<std::uint64_t> sphere_sizes() const {
    std::vector<std::uint64_t> c(depth_ + 1);
    for (unsigned i = 0; i <= depth_; ++i) c[i] = layer_size(i);
    return c;
  }

  static constexpr ElementId identity() { return 0; }
  unsigned length(ElementId w) const { return length_[w]; }
  GeneratorSet descents(ElementId w) const { return GeneratorSet(descents_[w]); }
  bool is_descent(ElementId w, Generator s) const { return (descents_[w] >> s) & 1U; }
  ElementId neighbor(ElementId w, Generator s) const { return neighbors_[std::size_t{w} * rank() + s]; }
  ElementId parent(ElementId w) const { return parent_[w]; }
  Generator last_letter(ElementId w) const { return last_[w]; }

  std::vector<Generator> word(ElementId w) const {
    std::vector<Generator> out(length(w));
    for (std::size_t k = out.size(); k > 0; --k) {
      out[k - 1] = last_[w];
      w = parent_[w];
    }
    return out;
  }

  GroupElement element(ElementId w) const { return GroupElement{word(w)}; }

  /// Evaluates an arbitrary word (not necessarily reduced) from the identity.
  /// nullopt if some prefix leaves the ball.
  std::optional<ElementId> find(std::span<const Generator> letters) const { return walk(identity(), letters); }
  std::optional<ElementId> find(const GroupElement& g) const { return find(std::span<const Generator>(g.word)); }

  /// start * letters, following stored right multiplications.
  std::optional<ElementId> walk(ElementId start, std::span<const Generator> letters) const {
    ElementId cur = start;
    for (Generator s : letters) {
      if (s >= rank()) throw Error(ErrorCode::GeneratorOutOfRange, "generator " + std::to_string(s));
      cur = neighbor(cur, s);
      if (cur == kAbsent) return std::nullopt;
    }
    return cur;
  }

 private:
  CoxeterMatrix matrix_;
  unsigned depth_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<ElementId> parent_;
  std::vector<std::uint8_t> last_;
  std::vector<std::uint32_t> descents_;
  std::vector<std::uint16_t> length_;
  std::vector<ElementId> neighbors_;
};

inline Ball Ball::build(const CoxeterMatrix& M, unsigned depth, std::size_t cap) {
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "element cap must be at least 1");
  if (depth > std::numeric_limits<std::uint16_t>::max())
    throw Error(ErrorCode::InvalidArgument, "depth exceeds 65535");
  const unsigned n = M.rank();

  Ball b;
  b.matrix_ = M;
  b.depth_ = depth;
  b.offsets_ = {0, 1};
  b.parent_ = {kAbsent};
  b.last_ = {0};
  b.descents_ = {0};
  b.length_ = {0};
  b.neighbors_.assign(n, kAbsent);

  struct Image {
    Generator letter;
    ElementId target;
  };
  std::vector<Image> images;
  images.reserve(n);

  for (unsigned ell = 0; ell < depth; ++ell) {
    const auto begin = static_cast<ElementId>(b.offsets_[ell]);
    const auto end = static_cast<ElementId>(b.offsets_[ell + 1]);
    for (ElementId y = begin; y < end; ++y) {
      for (Generator s = 0; s < n; ++s) {
        if (b.is_descent(y, s)) continue;

        GeneratorSet desc = GeneratorSet::single(s);
        images.clear();
        images.push_back({s, y});
        bool canonical = true;

        for (Generator t = 0; t < n && canonical; ++t) {
          const Order m = M(s, t);
          if (t == s || m == kInfinity) continue;

          ElementId cur = y;
          Generator letter = t;
          unsigned steps = 0;
          while (steps + 1 < m && b.is_descent(cur, letter)) {
            cur = b.neighbor(cur, letter);
            letter = letter == t ? s : t;
            ++steps;
          }
          if (steps + 1 != m) continue;

          // cur is the minimal {s,t}-coset representative of x = ys, and
          // x = cur * w0(s,t). Then xt = cur * (alternating word of
          // length m-1 ending in s).
          ElementId z = cur;
          Generator up = (m - 1) % 2 == 1 ? s : t;
          for (unsigned k = 0; k + 1 < m; ++k) {
            z = b.neighbor(z, up);
            if (z == kAbsent) throw Error(ErrorCode::InvalidArgument, "internal: missing lower edge");
            up = up == t ? s : t;
          }
          desc.insert(t);
          if (z < y) canonical = false;  // x was already stored from (z, t)
          images.push_back({t, z});
        }
        if (!canonical) continue;

        if (b.parent_.size() >= cap)
          throw Error(ErrorCode::ResourceLimit,
                      "element cap " + std::to_string(cap) + " exceeded at length " + std::to_string(ell + 1));
        const auto x = static_cast<ElementId>(b.parent_.size());
        b.parent_.push_back(y);
        b.last_.push_back(static_cast<std::uint8_t>(s));
        b.descents_.push_back(desc.bits());
        b.length_.push_back(static_cast<std::uint16_t>(ell + 1));
        b.neighbors_.resize(b.neighbors_.size() + n, kAbsent);
        for (const Image& img : images) {
          b.neighbors_[std::size_t{x} * n + img.letter] = img.target;
          b.neighbors_[std::size_t{img.target} * n + img.letter] = x;
        }
      }
    }
    b.offsets_.push_back(b.parent_.size());
  }
  return b;
}

/// Canonical form of ws and whether the length went up or down.
inline std::pair<GroupElement, Direction> multiply_right(const Ball& ball, const GroupElement& w, Generator s) {
  if (s >= ball.rank()) throw Error(ErrorCode::GeneratorOutOfRange, "generator " + std::to_string(s));
  const auto id = ball.find(w);
  if (!id) throw Error(ErrorCode::DepthExceeded, "element '" + w.str() + "' is not inside the ball");
  const ElementId ws = ball.neighbor(*id, s);
  if (ws == kAbsent) throw Error(ErrorCode::DepthExceeded, "product leaves the ball");
  return {ball.element(ws), ball.is_descent(*id, s) ? Direction::Down : Direction::Up};
}

/// Standalone form: builds a ball just deep enough for the product.
inline std::pair<GroupElement, Direction> multiply_right(const CoxeterMatrix& M, const GroupElement& w, Generator s) {
  if (s >= M.rank()) throw Error(ErrorCode::GeneratorOutOfRange, "generator " + std::to_string(s));
  const Ball ball = Ball::build(M, static_cast<unsigned>(w.length() + 1));
  return multiply_right(ball, w, s);
}

inline GeneratorSet right_descents(const Ball& ball, const GroupElement& w) {
  const auto id = ball.find(w);
  if (!id) throw Error(ErrorCode::DepthExceeded, "element '" + w.str() + "' is not inside the ball");
  return ball.descents(*id);
}

inline GeneratorSet right_descents(const CoxeterMatrix& M, const GroupElement& w) {
  return right_descents(Ball::build(M, static_cast<unsigned>(w.length())), w);
}

/// JSON lines, one element per line, by layer then ShortLex:
/// {"i": length, "w": "011", "desc": [0, 1]}
inline void write_ball_jsonl(std::ostream& out, const Ball& ball) {
  for (ElementId w = 0; w < ball.size(); ++w) {
    out << "{\"i\": " << ball.length(w) << ", \"w\": \"" << ball.element(w).str() << "\", \"desc\": [";
    bool first = true;
    for (Generator s : ball.descents(w).members()) {
      out << (first ? "" : ", ") << s;
      first = false;
    }
    out << "]}\n";
  }
}

}  // namespace coxgrowth
