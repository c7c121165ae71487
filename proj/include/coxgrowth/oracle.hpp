#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <set>
#include <vector>

#include "coxgrowth/ball.hpp"
#include "coxgrowth/coxeter_matrix.hpp"

namespace coxgrowth {

/// Tits' solution to the word problem, used only to cross-check the ball.
///
/// Closes the word under braid moves (replace an alternating factor
/// s t s ... of length m_st by t s t ...). If some word in the closure has two
/// equal adjacent letters they are deleted and the search restarts on the
/// shorter word. A closure with no such word consists exactly of the reduced
/// words of the element, and its least member is the ShortLex normal form.
/// Exponential; meant for short words.
inline GroupElement oracle_reduce(std::vector<Generator> word, const CoxeterMatrix& M,
                                  std::size_t budget = 200'000) {
  for (Generator s : word)
    if (s >= M.rank()) throw Error(ErrorCode::GeneratorOutOfRange, "generator " + std::to_string(s));

  for (;;) {
    std::set<std::vector<Generator>> closure{word};
    std::deque<std::vector<Generator>> queue{word};
    bool shortened = false;

    while (!queue.empty() && !shortened) {
      std::vector<Generator> u = std::move(queue.front());
      queue.pop_front();

      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (u[i] == u[i + 1]) {
          u.erase(u.begin() + static_cast<std::ptrdiff_t>(i), u.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          word = std::move(u);
          shortened = true;
          break;
        }
      }
      if (shortened) break;

      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const Generator s = u[i], t = u[i + 1];
        const Order m = M(s, t);
        if (m == kInfinity || i + m > u.size()) continue;
        bool alternating = true;
        for (std::size_t k = 0; k < m && alternating; ++k) alternating = u[i + k] == (k % 2 == 0 ? s : t);
        if (!alternating) continue;
        std::vector<Generator> v = u;
        for (std::size_t k = 0; k < m; ++k) v[i + k] = k % 2 == 0 ? t : s;
        if (closure.insert(v).second) {
          if (closure.size() > budget)
            throw Error(ErrorCode::OracleBudgetExceeded, "braid closure exceeded " + std::to_string(budget) + " words");
          queue.push_back(std::move(v));
        }
      }
    }
    if (!shortened) return GroupElement{*closure.begin()};
  }
}

}  // namespace coxgrowth
