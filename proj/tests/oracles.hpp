#pragma once

// Brute-force reference implementations used by the tests. Nothing here
// goes through the library: networks are plain lambdas written from the
// definitions and every quantity is counted by exhaustive iteration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Local = std::function<bool(std::uint64_t)>;
using Net = std::vector<Local>;

inline bool bit(std::uint64_t x, int i) { return (x >> i) & 1U; }

inline std::string word(std::uint64_t x, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += bit(x, i) ? '1' : '0';
  return s;
}

inline std::uint64_t from_word(const std::string& s) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') x |= std::uint64_t{1} << i;
  }
  return x;
}

// Cycle 0 -> 1 -> ... -> n-1 -> 0; the arc into automaton 0 carries the sign.
inline Net cycle(int n, bool positive) {
  Net f;
  f.push_back([n, positive](std::uint64_t x) { return bit(x, n - 1) == positive; });
  for (int i = 1; i < n; ++i) f.push_back([i](std::uint64_t x) { return bit(x, i - 1); });
  return f;
}

// Left cycle 0 -> 1 -> ... -> l-1 -> 0, right cycle 0 -> l -> ... -> l+r-2 -> 0.
inline Net double_cycle(int l, int r, bool left_positive, bool right_positive,
                        bool conjunction) {
  const int left_in = l - 1;
  const int right_in = r == 1 ? 0 : l + r - 2;
  Net f;
  f.push_back([=](std::uint64_t x) {
    const bool a = bit(x, left_in) == left_positive;
    const bool b = bit(x, right_in) == right_positive;
    return conjunction ? (a && b) : (a || b);
  });
  for (int i = 1; i < l; ++i) f.push_back([i](std::uint64_t x) { return bit(x, i - 1); });
  for (int k = 1; k < r; ++k) {
    const int pred = k == 1 ? 0 : l + k - 2;
    f.push_back([pred](std::uint64_t x) { return bit(x, pred); });
  }
  return f;
}

inline std::uint64_t update(const Net& f, std::uint64_t w, std::uint64_t x) {
  std::uint64_t y = x;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!bit(w, static_cast<int>(i))) continue;
    if (f[i](x)) {
      y |= std::uint64_t{1} << i;
    } else {
      y &= ~(std::uint64_t{1} << i);
    }
  }
  return y;
}

inline std::uint64_t parallel(const Net& f, std::uint64_t x) {
  return update(f, (std::uint64_t{1} << f.size()) - 1, x);
}

inline std::uint64_t iterate(const Net& f, std::uint64_t x, std::uint64_t p) {
  for (std::uint64_t k = 0; k < p; ++k) x = parallel(f, x);
  return x;
}

// Number of x with F^p(x) = x.
inline std::uint64_t count_periodic(const Net& f, std::uint64_t p) {
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << f.size()); ++x) {
    if (iterate(f, x, p) == x) ++count;
  }
  return count;
}

struct ParallelFacts {
  std::map<std::uint64_t, std::uint64_t> attractors_by_period;
  std::uint64_t recurring = 0;
  std::uint64_t convergence = 0;
  std::uint64_t lcm = 1;
};

inline ParallelFacts parallel_facts(const Net& f) {
  const std::uint64_t size = std::uint64_t{1} << f.size();
  ParallelFacts out;
  std::vector<std::uint64_t> period(size, 0);
  for (std::uint64_t x = 0; x < size; ++x) {
    std::uint64_t y = parallel(f, x);
    for (std::uint64_t k = 1; k <= size; ++k, y = parallel(f, y)) {
      if (y == x) {
        period[x] = k;
        break;
      }
    }
  }
  std::map<std::uint64_t, std::uint64_t> states_by_period;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (period[x] == 0) continue;
    ++out.recurring;
    ++states_by_period[period[x]];
  }
  for (const auto& [p, c] : states_by_period) {
    out.attractors_by_period[p] = c / p;
    out.lcm = std::lcm(out.lcm, p);
  }
  for (std::uint64_t x = 0; x < size; ++x) {
    std::uint64_t t = 0;
    for (std::uint64_t y = x; period[y] == 0; y = parallel(f, y)) ++t;
    out.convergence = std::max(out.convergence, t);
  }
  return out;
}

// Asynchronous successors: one unstable automaton updated.
inline std::vector<std::uint64_t> async_successors(const Net& f, std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::uint64_t y = update(f, std::uint64_t{1} << i, x);
    if (y != x) out.push_back(y);
  }
  return out;
}

using Successors = std::function<std::vector<std::uint64_t>(std::uint64_t)>;

inline Successors async_graph(const Net& f) {
  return [&f](std::uint64_t x) { return async_successors(f, x); };
}

// Every F_W(x) != x over nonempty W.
inline Successors elementary_graph(const Net& f) {
  return [&f](std::uint64_t x) {
    std::set<std::uint64_t> out;
    for (std::uint64_t w = 1; w < (std::uint64_t{1} << f.size()); ++w) {
      const std::uint64_t y = update(f, w, x);
      if (y != x) out.insert(y);
    }
    return std::vector<std::uint64_t>(out.begin(), out.end());
  };
}

inline std::vector<bool> reachable(int n, const Successors& next, std::uint64_t from) {
  std::vector<bool> seen(std::size_t{1} << n, false);
  std::vector<std::uint64_t> stack = {from};
  seen[from] = true;
  while (!stack.empty()) {
    const std::uint64_t x = stack.back();
    stack.pop_back();
    for (std::uint64_t y : next(x)) {
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

// Terminal strongly connected components, each as a sorted list of states.
inline std::set<std::vector<std::uint64_t>> terminal_components(int n, const Successors& next) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::vector<bool>> reach;
  for (std::uint64_t x = 0; x < size; ++x) reach.push_back(reachable(n, next, x));
  std::set<std::vector<std::uint64_t>> out;
  for (std::uint64_t x = 0; x < size; ++x) {
    bool terminal = true;
    std::vector<std::uint64_t> component;
    for (std::uint64_t y = 0; y < size && terminal; ++y) {
      if (!reach[x][y]) continue;
      if (!reach[y][x]) terminal = false;
      component.push_back(y);
    }
    if (terminal) out.insert(component);
  }
  return out;
}

inline std::set<std::vector<std::uint64_t>> async_attractors(const Net& f) {
  return terminal_components(static_cast<int>(f.size()), async_graph(f));
}

// Largest shortest distance from a configuration into the attractors.
inline std::uint64_t convergence(int n, const Successors& next) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<bool> recurring(size, false);
  for (const auto& c : terminal_components(n, next)) {
    for (std::uint64_t x : c) recurring[x] = true;
  }
  std::uint64_t worst = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    std::vector<std::uint64_t> layer = {x};
    std::set<std::uint64_t> seen = {x};
    std::uint64_t d = 0;
    while (true) {
      bool hit = false;
      for (std::uint64_t y : layer) hit |= recurring[y];
      if (hit) break;
      std::vector<std::uint64_t> next_layer;
      for (std::uint64_t y : layer) {
        for (std::uint64_t z : next(y)) {
          if (seen.insert(z).second) next_layer.push_back(z);
        }
      }
      layer = std::move(next_layer);
      ++d;
    }
    worst = std::max(worst, d);
  }
  return worst;
}

// Circular binary words of length n with no circular factor in `banned`.
inline std::uint64_t circular_words_avoiding(int n, const std::vector<std::string>& banned) {
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const std::string w = word(x, n);
    std::string wrapped = w;
    while (wrapped.size() < w.size() + 3) wrapped += w;
    bool ok = true;
    for (const std::string& b : banned) {
      for (int s = 0; s < n && ok; ++s) {
        if (wrapped.compare(static_cast<std::size_t>(s), b.size(), b) == 0) ok = false;
      }
    }
    if (ok) ++count;
  }
  return count;
}

inline int mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

inline std::uint64_t totient(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (std::gcd(k, n) == 1) ++count;
  }
  return count;
}

}  // namespace oracle
