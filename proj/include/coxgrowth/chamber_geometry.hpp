#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxgrowth/ball.hpp"
#include "coxgrowth/classification.hpp"
#include "coxgrowth/sphere_stats.hpp"

namespace coxgrowth {

/// The chamber system of W restricted to a ball: chambers are ball elements,
/// s-adjacency is right multiplication by s. Adds left multiplication and
/// inverses on top of the ball's right-multiplication table.
class ChamberSystem {
 public:
  explicit ChamberSystem(const Ball& ball) : ball_(&ball) {
    const unsigned n = ball.rank();
    left_.assign(ball.size() * n, kAbsent);
    inverse_.assign(ball.size(), kAbsent);
    inverse_[Ball::identity()] = Ball::identity();
    for (Generator s = 0; s < n; ++s) left_[s] = ball.neighbor(Ball::identity(), s);
    // For w = p t: s w = (s p) t, and s p has length <= l(w) so lies in the ball.
    for (ElementId w = 1; w < ball.size(); ++w) {
      const ElementId p = ball.parent(w);
      const Generator t = ball.last_letter(w);
      for (Generator s = 0; s < n; ++s) left_[std::size_t{w} * n + s] = ball.neighbor(left_[std::size_t{p} * n + s], t);
      inverse_[w] = left_[std::size_t{inverse_[p]} * n + t];
    }
  }

  const Ball& ball() const { return *ball_; }

  /// s * w, or kAbsent beyond the ball.
  ElementId left(Generator s, ElementId w) const { return left_[std::size_t{w} * ball_->rank() + s]; }
  ElementId inverse(ElementId w) const { return inverse_[w]; }

  /// a * b, trying a right walk from a and a left walk from b.
  std::optional<ElementId> product(ElementId a, ElementId b) const {
    const auto bw = ball_->word(b);
    if (auto r = ball_->walk(a, bw)) return r;
    const auto aw = ball_->word(a);
    ElementId cur = b;
    for (auto it = aw.rbegin(); it != aw.rend(); ++it) {
      cur = left(*it, cur);
      if (cur == kAbsent) return std::nullopt;
    }
    return cur;
  }

  /// Gallery distance l(x^-1 y).
  std::optional<unsigned> distance(ElementId x, ElementId y) const {
    const auto g = product(inverse(x), y);
    if (!g) return std::nullopt;
    return ball_->length(*g);
  }

  /// Chambers along the ShortLex word of w, from the identity to w.
  std::vector<ElementId> minimal_gallery(ElementId w) const {
    std::vector<ElementId> out{Ball::identity()};
    for (Generator s : ball_->word(w)) out.push_back(ball_->neighbor(out.back(), s));
    return out;
  }

 private:
  const Ball* ball_;
  std::vector<ElementId> left_;
  std::vector<ElementId> inverse_;
};

// ---------------------------------------------------------------------------
// Residues

/// R_J(w) = w<J> intersected with the ball.
struct Residue {
  GeneratorSet type;
  ElementId representative = kAbsent;
  ElementId gate = kAbsent;      // unique member of minimal length, proj_R 1_W
  std::vector<ElementId> members;  // sorted
  bool complete = false;           // whole coset lies in the ball

  bool contains(ElementId w) const { return std::binary_search(members.begin(), members.end(), w); }
  friend bool operator==(const Residue& a, const Residue& b) { return a.type == b.type && a.gate == b.gate; }
};

/// Descends by J-descents to the minimal coset representative.
inline ElementId minimal_in_coset(const Ball& ball, ElementId w, GeneratorSet J) {
  for (;;) {
    const GeneratorSet down(ball.descents(w).bits() & J.bits());
    if (down.empty()) return w;
    w = ball.neighbor(w, down.members().front());
  }
}

inline Residue make_residue(const Ball& ball, GeneratorSet J, ElementId w) {
  Residue R;
  R.type = J;
  R.representative = w;
  R.gate = minimal_in_coset(ball, w, J);
  const auto gens = J.members();
  std::vector<ElementId> queue{R.gate};
  std::vector<bool> seen;
  std::map<ElementId, bool> visited{{R.gate, true}};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Generator s : gens) {
      const ElementId v = ball.neighbor(queue[head], s);
      if (v != kAbsent && visited.emplace(v, true).second) queue.push_back(v);
    }
  std::sort(queue.begin(), queue.end());
  R.members = std::move(queue);
  const FiniteTypeLabel label = classify(ball.matrix(), J);
  R.complete = label.finite() && BigInt(R.members.size()) == label.order();
  return R;
}

namespace detail {

// Gallery distance from `from` to every member of R, using only J-adjacencies
// (residues are convex, so this is the global gallery distance).
inline std::map<ElementId, unsigned> distances_within(const Ball& ball, const Residue& R, ElementId from) {
  std::map<ElementId, unsigned> dist{{from, 0}};
  std::deque<ElementId> queue{from};
  const auto gens = R.type.members();
  while (!queue.empty()) {
    const ElementId u = queue.front();
    queue.pop_front();
    for (Generator s : gens) {
      const ElementId v = ball.neighbor(u, s);
      if (v != kAbsent && dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
    }
  }
  return dist;
}

}  // namespace detail

/// proj_R x: the member nearest to x. The gate identity
/// d(x, y) = d(x, z) + d(z, y) is checked for every y in R.
inline ElementId projection(const ChamberSystem& cs, ElementId x, const Residue& R) {
  if (!R.complete) throw Error(ErrorCode::ResidueIncomplete, "projection onto a residue that leaves the ball");
  if (R.contains(x)) return x;
  std::vector<unsigned> dist;
  dist.reserve(R.members.size());
  for (ElementId y : R.members) {
    const auto d = cs.distance(x, y);
    if (!d) throw Error(ErrorCode::DepthExceeded, "gallery distance leaves the ball");
    dist.push_back(*d);
  }
  const auto best = static_cast<std::size_t>(std::min_element(dist.begin(), dist.end()) - dist.begin());
  const ElementId z = R.members[best];
  const auto inner = detail::distances_within(cs.ball(), R, z);
  for (std::size_t k = 0; k < R.members.size(); ++k)
    if (dist[k] != dist[best] + inner.at(R.members[k]))
      throw std::logic_error("gate property fails for projection onto residue");
  return z;
}

/// proj_T R = T and proj_R T = R.
inline bool parallel_check(const ChamberSystem& cs, const Residue& R, const Residue& T) {
  if (!R.complete || !T.complete) throw Error(ErrorCode::ResidueIncomplete, "parallel check needs complete residues");
  auto image = [&](const Residue& from, const Residue& onto) {
    std::vector<ElementId> out;
    for (ElementId x : from.members) out.push_back(projection(cs, x, onto));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return image(R, T) == T.members && image(T, R) == R.members;
}

// ---------------------------------------------------------------------------
// Roots

/// A root as its reflection plus a side: the positive side is the half that
/// contains 1_W, namely {w : l(r w) > l(w)}.
struct RootHandle {
  ElementId reflection = kAbsent;
  bool positive = true;

  RootHandle opposite() const { return {reflection, !positive}; }
  friend bool operator==(const RootHandle&, const RootHandle&) = default;
};

inline RootHandle simple_root(const Ball& ball, Generator s) {
  if (s >= ball.rank()) throw Error(ErrorCode::GeneratorOutOfRange, "generator " + std::to_string(s));
  return {ball.neighbor(Ball::identity(), s), true};
}

/// The root v * alpha_s, with reflection v s v^-1.
inline RootHandle root_from(const ChamberSystem& cs, ElementId v, Generator s) {
  const Ball& ball = cs.ball();
  const ElementId vs = ball.neighbor(v, s);
  if (vs == kAbsent) throw Error(ErrorCode::DepthExceeded, "v s leaves the ball");
  const auto r = cs.product(vs, cs.inverse(v));
  if (!r) throw Error(ErrorCode::DepthExceeded, "reflection v s v^-1 leaves the ball");
  // 1 in v alpha_s  <=>  l(s v^-1) > l(v^-1)  <=>  l(v s) > l(v)
  return {*r, !ball.is_descent(v, s)};
}

/// nullopt when r w leaves the ball.
inline std::optional<bool> root_contains(const ChamberSystem& cs, const RootHandle& root, ElementId w) {
  const auto rw = cs.product(root.reflection, w);
  if (!rw) return std::nullopt;
  const bool positive_side = cs.ball().length(*rw) > cs.ball().length(w);
  return root.positive ? positive_side : !positive_side;
}

enum class Trichotomy { InsideAlpha, InsideMinusAlpha, InBoundary };

inline const char* to_string(Trichotomy t) {
  switch (t) {
    case Trichotomy::InsideAlpha: return "inside_alpha";
    case Trichotomy::InsideMinusAlpha: return "inside_minus_alpha";
    case Trichotomy::InBoundary: return "in_boundary";
  }
  return "?";
}

/// Classifies a complete spherical rank-2 residue against a root, and checks
/// the boundary case against r_alpha R = R.
inline Trichotomy residue_root_trichotomy(const ChamberSystem& cs, const Residue& R, const RootHandle& alpha) {
  if (!R.complete) throw Error(ErrorCode::ResidueIncomplete, "trichotomy needs a complete residue");
  std::size_t inside = 0;
  for (ElementId w : R.members) {
    const auto in = root_contains(cs, alpha, w);
    if (!in) throw Error(ErrorCode::DepthExceeded, "root membership leaves the ball");
    inside += *in ? 1 : 0;
  }
  const Trichotomy result = inside == R.members.size() ? Trichotomy::InsideAlpha
                            : inside == 0              ? Trichotomy::InsideMinusAlpha
                                                       : Trichotomy::InBoundary;
  if (const auto image = cs.product(alpha.reflection, R.gate)) {
    const bool stabilised = R.contains(*image);
    if (stabilised != (result == Trichotomy::InBoundary))
      throw std::logic_error("trichotomy disagrees with the stabiliser test");
  }
  return result;
}

struct Panel {
  ElementId lower;  // shorter chamber
  Generator type;
  friend bool operator==(const Panel&, const Panel&) = default;
};

/// The part of the wall and of the 2-boundary of a root visible in the ball.
struct WallSample {
  std::vector<Panel> panels;
  std::vector<Residue> residues;
  std::uint64_t unknown = 0;  // chambers whose membership left the ball
};

inline WallSample wall_sample(const ChamberSystem& cs, const RootHandle& alpha) {
  const Ball& ball = cs.ball();
  const CoxeterMatrix& M = ball.matrix();
  WallSample out;
  for (ElementId w = 0; w < ball.size(); ++w) {
    for (Generator s = 0; s < ball.rank(); ++s) {
      if (ball.is_descent(w, s) || ball.neighbor(w, s) == kAbsent) continue;
      const auto a = root_contains(cs, alpha, w);
      const auto b = root_contains(cs, alpha, ball.neighbor(w, s));
      if (!a || !b) {
        ++out.unknown;
        continue;
      }
      if (*a != *b) out.panels.push_back({w, s});
    }
    for (Generator s = 0; s < ball.rank(); ++s)
      for (Generator t = s + 1; t < ball.rank(); ++t) {
        const Order m = M(s, t);
        if (m == kInfinity || ball.is_descent(w, s) || ball.is_descent(w, t) || ball.length(w) + m > ball.depth())
          continue;
        const auto image = cs.product(alpha.reflection, w);
        if (!image) continue;
        Residue R = make_residue(ball, GeneratorSet::pair(s, t), w);
        if (R.contains(*image)) out.residues.push_back(std::move(R));
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scans over the ball

namespace detail {

inline constexpr std::size_t kMaxRecordedViolations = 25;

inline void note_violation(VerificationReport& rep, long i, long lhs, long rhs, std::string detail) {
  ++rep.violations;
  if (rep.checks.size() < kMaxRecordedViolations)
    rep.checks.push_back({i, Rational(lhs), Rational(rhs), "==", false, std::move(detail)});
}

inline std::string word_of(const Ball& ball, ElementId w) {
  const auto s = ball.element(w).str();
  return s.empty() ? "1" : s;
}

inline bool has_spherical_rank3(const CoxeterMatrix& M) {
  for (const auto& sub : spherical_subsets(M))
    if (sub.subset.size() >= 3) return true;
  return false;
}

inline void require_complete_diagram(const CoxeterMatrix& M, Gate gate, const char* what) {
  const auto props = diagram_properties(M);
  if (gate == Gate::Enforce && (!props.two_spherical || !props.complete_diagram || M.rank() < 3))
    throw Error(ErrorCode::HypothesisViolated, std::string(what) + " needs a 2-spherical complete diagram of rank >= 3");
}

// Members c u of the {s,t}-residue with gate c, paired with l(u); kAbsent
// where c u leaves the ball.
inline std::vector<std::pair<ElementId, unsigned>> dihedral_members(const Ball& ball, ElementId c, Generator s,
                                                                    Generator t) {
  const Order m = ball.matrix()(s, t);
  std::vector<std::pair<ElementId, unsigned>> out{{c, 0}};
  for (Generator first : {s, t}) {
    ElementId cur = c;
    Generator letter = first;
    for (unsigned len = 1; len <= m; ++len) {
      cur = cur == kAbsent ? kAbsent : ball.neighbor(cur, letter);
      letter = letter == s ? t : s;
      if (len == m && first == t) break;  // longest element already recorded
      out.emplace_back(cur, len);
    }
  }
  return out;
}

}  // namespace detail

/// Two distinct reflections jointly stabilise at most one spherical rank-2
/// residue (systems without spherical rank-3 subsets). Scans the complete
/// rank-2 residues within `scan_depth`; `cs` may be deeper so that the
/// reflections c u c^-1 can be formed. A residue whose reflections leave cs is
/// skipped.
inline VerificationReport verify_L24_uniqueness(const ChamberSystem& cs, unsigned scan_depth,
                                                Gate gate = Gate::Enforce) {
  const Ball& ball = cs.ball();
  const CoxeterMatrix& M = ball.matrix();
  if (gate == Gate::Enforce && detail::has_spherical_rank3(M))
    throw Error(ErrorCode::HypothesisViolated, "L24 needs every rank-3 subset to be non-spherical");
  scan_depth = std::min(scan_depth, ball.depth());

  VerificationReport rep{"L24", std::pair<long, long>{0, static_cast<long>(scan_depth)}};
  rep.diagnostic = gate == Gate::Diagnostic;
  struct Shared {
    ElementId first_gate;
    GeneratorSet first_type;
    unsigned count;
  };
  std::map<std::pair<ElementId, ElementId>, Shared> pairs;

  for (ElementId c = 0; c < ball.layer_end(scan_depth); ++c)
    for (Generator s = 0; s < ball.rank(); ++s)
      for (Generator t = s + 1; t < ball.rank(); ++t) {
        const Order m = M(s, t);
        if (m == kInfinity || ball.is_descent(c, s) || ball.is_descent(c, t)) continue;
        if (ball.length(c) + m > scan_depth) {
          ++rep.skipped;
          continue;
        }
        std::vector<ElementId> reflections;
        bool keyed = true;
        for (const auto& [x, len] : detail::dihedral_members(ball, c, s, t)) {
          if (len % 2 == 0) continue;
          const auto r = cs.product(x, cs.inverse(c));
          if (!r) {
            keyed = false;
            break;
          }
          reflections.push_back(*r);
        }
        if (!keyed) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        std::sort(reflections.begin(), reflections.end());
        for (std::size_t a = 0; a < reflections.size(); ++a)
          for (std::size_t b = a + 1; b < reflections.size(); ++b) {
            auto [it, fresh] = pairs.try_emplace({reflections[a], reflections[b]}, Shared{c, GeneratorSet::pair(s, t), 0});
            if (++it->second.count == 2)
              detail::note_violation(rep, ball.length(c), 2, 1,
                                     "reflections " + detail::word_of(ball, reflections[a]) + ", " +
                                         detail::word_of(ball, reflections[b]) + " both stabilise residues at gates " +
                                         detail::word_of(ball, it->second.first_gate) + " and " +
                                         detail::word_of(ball, c));
          }
      }
  return rep;
}

/// For rank-2 residues R != T meeting in a panel P with
/// l(proj_R 1) < l(proj_T 1): proj_T 1 = proj_P 1.
inline VerificationReport verify_P29(const ChamberSystem& cs, Gate gate = Gate::Enforce) {
  const Ball& ball = cs.ball();
  const CoxeterMatrix& M = ball.matrix();
  detail::require_complete_diagram(M, gate, "P29");
  VerificationReport rep{"P29", std::pair<long, long>{0, static_cast<long>(ball.depth())}};
  rep.diagnostic = gate == Gate::Diagnostic;
  const unsigned n = ball.rank();

  for (ElementId c = 0; c < ball.size(); ++c)
    for (Generator t = 0; t < n; ++t) {
      // P = {c, ct} with c the shorter chamber, so proj_P 1 = c.
      if (ball.is_descent(c, t)) continue;
      for (Generator r = 0; r < n; ++r)
        for (Generator s = 0; s < n; ++s) {
          if (r == t || s == t || r == s) continue;
          if (M(r, t) == kInfinity || M(s, t) == kInfinity) continue;
          const ElementId gate_R = minimal_in_coset(ball, c, GeneratorSet::pair(r, t));
          const ElementId gate_T = minimal_in_coset(ball, c, GeneratorSet::pair(s, t));
          if (ball.length(gate_R) + M(r, t) > ball.depth() || ball.length(gate_T) + M(s, t) > ball.depth()) {
            ++rep.skipped;
            continue;
          }
          if (ball.length(gate_R) >= ball.length(gate_T)) continue;
          ++rep.checked;
          if (gate_T != c)
            detail::note_violation(rep, ball.length(c), ball.length(gate_T), ball.length(c),
                                   "panel " + detail::word_of(ball, c) + " type " + std::to_string(t) +
                                       ": proj_T 1 = " + detail::word_of(ball, gate_T) + " with T of type {" +
                                       std::to_string(s) + "," + std::to_string(t) + "}");
        }
    }
  return rep;
}

/// l(w w' r) = l(w) + l(w') + 1 whenever s, t ascend from w, w' in <s,t> has
/// length >= 2 and r is outside {s, t}.
inline VerificationReport verify_C210(const ChamberSystem& cs, Gate gate = Gate::Enforce) {
  const Ball& ball = cs.ball();
  const CoxeterMatrix& M = ball.matrix();
  detail::require_complete_diagram(M, gate, "C210");
  VerificationReport rep{"C210", std::pair<long, long>{0, static_cast<long>(ball.depth())}};
  rep.diagnostic = gate == Gate::Diagnostic;
  const unsigned n = ball.rank();

  for (ElementId w = 0; w < ball.size(); ++w)
    for (Generator s = 0; s < n; ++s)
      for (Generator t = s + 1; t < n; ++t) {
        if (ball.is_descent(w, s) || ball.is_descent(w, t) || M(s, t) == kInfinity) continue;
        if (ball.neighbor(w, s) == kAbsent) {
          ++rep.skipped;
          continue;
        }
        for (const auto& [x, len] : detail::dihedral_members(ball, w, s, t)) {
          if (len < 2) continue;
          if (x == kAbsent) {
            rep.skipped += n - 2;
            continue;
          }
          for (Generator r = 0; r < n; ++r) {
            if (r == s || r == t) continue;
            ++rep.checked;
            const long expected = static_cast<long>(ball.length(w) + len + 1);
            const long actual = static_cast<long>(ball.length(x)) + (ball.is_descent(x, r) ? -1 : 1);
            if (actual != expected)
              detail::note_violation(rep, ball.length(w), actual, expected,
                                     "w = " + detail::word_of(ball, w) + ", w w' = " + detail::word_of(ball, x) +
                                         ", r = " + std::to_string(r));
          }
        }
      }
  return rep;
}

/// l(w) + 2 is one of l(wsr), l(wtr) whenever s, t ascend from w and r is
/// outside {s, t}; needs m_st >= 4 everywhere. In diagnostic mode the scan
/// runs regardless and collects counterexamples.
inline VerificationReport verify_L211(const ChamberSystem& cs, Gate gate = Gate::Enforce) {
  const Ball& ball = cs.ball();
  const CoxeterMatrix& M = ball.matrix();
  if (gate == Gate::Enforce) {
    for (Generator s = 0; s < M.rank(); ++s)
      for (Generator t = s + 1; t < M.rank(); ++t)
        if (M(s, t) < 4 || M(s, t) == kInfinity)
          throw Error(ErrorCode::HypothesisViolated, "L211 needs 4 <= m_st < inf for all s != t");
  }
  VerificationReport rep{"L211", std::pair<long, long>{0, static_cast<long>(ball.depth()) - 1}};
  rep.diagnostic = gate == Gate::Diagnostic;
  const unsigned n = ball.rank();

  for (ElementId w = 0; w < ball.size(); ++w) {
    if (ball.length(w) + 1 > ball.depth()) {
      ++rep.skipped;
      continue;
    }
    for (Generator s = 0; s < n; ++s)
      for (Generator t = s + 1; t < n; ++t) {
        if (ball.is_descent(w, s) || ball.is_descent(w, t)) continue;
        const ElementId ws = ball.neighbor(w, s);
        const ElementId wt = ball.neighbor(w, t);
        for (Generator r = 0; r < n; ++r) {
          if (r == s || r == t) continue;
          ++rep.checked;
          if (ball.is_descent(ws, r) && ball.is_descent(wt, r))
            detail::note_violation(rep, ball.length(w), ball.length(w), ball.length(w) + 2,
                                   "w = " + detail::word_of(ball, w) + ", s = " + std::to_string(s) +
                                       ", t = " + std::to_string(t) + ", r = " + std::to_string(r) +
                                       ": l(wsr) = l(wtr) = l(w)");
        }
      }
  }
  return rep;
}

inline VerificationReport verify_L24_uniqueness(const ChamberSystem& cs, Gate gate = Gate::Enforce) {
  return verify_L24_uniqueness(cs, cs.ball().depth(), gate);
}

/// Scans the residues of `ball`, forming reflections in an auxiliary ball deep
/// enough to hold them all (falls back to `ball` itself past `aux_cap`).
inline VerificationReport verify_L24_uniqueness(const Ball& ball, Gate gate = Gate::Enforce,
                                                std::size_t aux_cap = 2'000'000) {
  const CoxeterMatrix& M = ball.matrix();
  Order lo = kInfinity, hi = 0;
  for (Generator s = 0; s < M.rank(); ++s)
    for (Generator t = s + 1; t < M.rank(); ++t)
      if (M(s, t) != kInfinity) {
        lo = std::min(lo, M(s, t));
        hi = std::max(hi, M(s, t));
      }
  // A complete residue has gate length <= N - m, and c u c^-1 has length
  // at most 2 l(c) + l(u) with l(u) <= m - 1.
  unsigned aux_depth = ball.depth();
  if (hi > 0 && ball.depth() >= lo) aux_depth = std::max(aux_depth, 2 * (ball.depth() - lo) + hi - 1);
  if (aux_depth > ball.depth()) {
    try {
      const Ball aux = Ball::build(M, aux_depth, aux_cap);
      return verify_L24_uniqueness(ChamberSystem(aux), ball.depth(), gate);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResourceLimit) throw;
    }
  }
  return verify_L24_uniqueness(ChamberSystem(ball), ball.depth(), gate);
}
inline VerificationReport verify_P29(const Ball& ball, Gate gate = Gate::Enforce) {
  return verify_P29(ChamberSystem(ball), gate);
}
inline VerificationReport verify_C210(const Ball& ball, Gate gate = Gate::Enforce) {
  return verify_C210(ChamberSystem(ball), gate);
}
inline VerificationReport verify_L211(const Ball& ball, Gate gate = Gate::Enforce) {
  return verify_L211(ChamberSystem(ball), gate);
}

}  // namespace coxgrowth
