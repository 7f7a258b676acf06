#include "ban/dynamics.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace ban {

// ------------------------------------------------------------ UpdateMode

UpdateMode UpdateMode::parse(const std::string& text) {
  if (text == "parallel") return parallel();
  if (text == "async" || text == "asynchronous") return asynchronous();
  if (text == "elementary") return elementary();
  if (text.rfind("blockseq", 0) == 0) {
    std::size_t start = 8;
    while (start < text.size() && (text[start] == ' ' || text[start] == ':')) ++start;
    if (start == 8 || start == text.size()) {
      throw ParseError("expected blocks after 'blockseq' in mode '" + text + "'", 1,
                       static_cast<int>(start) + 1);
    }
    return parse(text.substr(start));
  }
  std::vector<std::vector<int>> blocks(1);
  int value = -1;
  for (std::size_t pos = 0; pos <= text.size(); ++pos) {
    const char c = pos < text.size() ? text[pos] : '\0';
    if (c >= '0' && c <= '9') {
      value = (value < 0 ? 0 : value * 10) + (c - '0');
      if (value > kMaxWidth) {
        throw ParseError("automaton index too large in mode '" + text + "'", 1,
                         static_cast<int>(pos) + 1);
      }
    } else if (c == ',' || c == '|' || c == '\0') {
      if (value < 0) {
        throw ParseError("expected an automaton index in mode '" + text + "'",
                         1, static_cast<int>(pos) + 1);
      }
      blocks.back().push_back(value);
      value = -1;
      if (c == '|') blocks.emplace_back();
    } else {
      throw ParseError("unknown updating mode '" + text + "'", 1,
                       static_cast<int>(pos) + 1);
    }
  }
  return block_sequential(std::move(blocks));
}

std::string UpdateMode::to_string() const {
  switch (kind_) {
    case Kind::Parallel:
      return "parallel";
    case Kind::Asynchronous:
      return "asynchronous";
    case Kind::Elementary:
      return "elementary";
    case Kind::BlockSequential: {
      std::string out = "blockseq ";
      for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b > 0) out += '|';
        for (std::size_t k = 0; k < blocks_[b].size(); ++k) {
          if (k > 0) out += ',';
          out += std::to_string(blocks_[b][k]);
        }
      }
      return out;
    }
  }
  return {};
}

void UpdateMode::validate(int n) const {
  if (kind_ != Kind::BlockSequential) return;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& block : blocks_) {
    if (block.empty()) throw Error("block-sequential blocks must be nonempty");
    for (int i : block) {
      if (i < 0 || i >= n) {
        throw Error("block references automaton " + std::to_string(i) +
                    " outside the network");
      }
      if (seen[static_cast<std::size_t>(i)]) {
        throw Error("automaton " + std::to_string(i) +
                    " appears in two blocks");
      }
      seen[static_cast<std::size_t>(i)] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error("block-sequential blocks must cover every automaton");
  }
}

int Caps::for_mode(const UpdateMode& mode) const {
  switch (mode.kind()) {
    case UpdateMode::Kind::Parallel:
    case UpdateMode::Kind::BlockSequential:
      return deterministic;
    case UpdateMode::Kind::Asynchronous:
      return asynchronous;
    case UpdateMode::Kind::Elementary:
      return elementary;
  }
  return deterministic;
}

Caps Caps::from_environment() {
  Caps caps;
  if (const char* env = std::getenv("BAN_CAP")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value <= 30) {
      caps = uniform(static_cast<int>(value));
    }
  }
  return caps;
}

// -------------------------------------------------------- TransitionGraph

namespace {

template <typename Fn>
void parallel_for_range(std::uint64_t count, Fn&& fn) {
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const std::uint64_t chunks =
      count < (std::uint64_t{1} << 14) ? 1 : std::min<std::uint64_t>(hw, 64);
  if (chunks == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> workers;
  const std::uint64_t step = (count + chunks - 1) / chunks;
  for (std::uint64_t begin = 0; begin < count; begin += step) {
    workers.emplace_back(fn, begin, std::min(count, begin + step));
  }
  for (auto& w : workers) w.join();
}

}  // namespace

TransitionGraph::TransitionGraph(const BooleanNetwork& net, UpdateMode mode,
                                 const Caps& caps)
    : n_(net.size()), mode_(std::move(mode)) {
  const int cap = caps.for_mode(mode_);
  if (n_ > cap) {
    throw CapExceeded(mode_.to_string() + " transition graph", n_, cap);
  }
  mode_.validate(n_);
  image_.resize(vertex_count());
  if (mode_.kind() == UpdateMode::Kind::BlockSequential) {
    std::vector<AutomatonSet> masks;
    for (const auto& block : mode_.blocks()) {
      AutomatonSet m = 0;
      for (int i : block) m |= singleton(i);
      masks.push_back(m);
    }
    parallel_for_range(vertex_count(), [&](std::uint64_t b, std::uint64_t e) {
      for (std::uint64_t x = b; x < e; ++x) {
        std::uint64_t s = x;
        for (AutomatonSet m : masks) {
          s = (s & ~m) | (net.parallel_image(s) & m);
        }
        image_[x] = s;
      }
    });
  } else {
    parallel_for_range(vertex_count(), [&](std::uint64_t b, std::uint64_t e) {
      for (std::uint64_t x = b; x < e; ++x) image_[x] = net.parallel_image(x);
    });
  }
}

std::uint64_t TransitionGraph::out_degree() const {
  switch (mode_.kind()) {
    case UpdateMode::Kind::Parallel:
    case UpdateMode::Kind::BlockSequential:
      return 1;
    case UpdateMode::Kind::Asynchronous:
      return static_cast<std::uint64_t>(n_);
    case UpdateMode::Kind::Elementary:
      return vertex_count() - 1;
  }
  return 0;
}

void TransitionGraph::for_each_arc(
    std::uint64_t x,
    const std::function<void(AutomatonSet, std::uint64_t)>& visit) const {
  const std::uint64_t y = image_[x];
  switch (mode_.kind()) {
    case UpdateMode::Kind::Parallel:
    case UpdateMode::Kind::BlockSequential:
      visit(full_set(n_), y);
      return;
    case UpdateMode::Kind::Asynchronous:
      for (int i = 0; i < n_; ++i) {
        const AutomatonSet w = singleton(i);
        visit(w, (x & ~w) | (y & w));
      }
      return;
    case UpdateMode::Kind::Elementary:
      for (AutomatonSet w = 1; w <= full_set(n_); ++w) {
        visit(w, (x & ~w) | (y & w));
      }
      return;
  }
}

bool TransitionGraph::is_stable(std::uint64_t x) const {
  if (mode_.deterministic()) return image_[x] == x;
  // For the asynchronous and elementary modes every arc is a self-loop
  // exactly when F_V fixes x.
  return image_[x] == x;
}

// ------------------------------------------------------------- attractors

std::size_t AttractorReport::fixed_points() const {
  return static_cast<std::size_t>(
      std::count_if(attractors.begin(), attractors.end(),
                    [](const Attractor& a) { return a.fixed_point(); }));
}

std::size_t AttractorReport::oscillations() const {
  return attractors.size() - fixed_points();
}

namespace {

// Key whose numeric order is the lexicographic order of the text form.
std::uint64_t text_key(std::uint64_t x, int n) {
  std::uint64_t key = 0;
  for (int i = 0; i < n; ++i) {
    key = (key << 1) | ((x >> i) & 1U);
  }
  return key;
}

void finalize(AttractorReport& report, const TransitionGraph& tg,
              const std::vector<bool>& recurring) {
  const int n = report.width;
  for (Attractor& a : report.attractors) {
    std::sort(a.states.begin(), a.states.end(),
              [n](std::uint64_t p, std::uint64_t q) {
                return text_key(p, n) < text_key(q, n);
              });
    a.length = a.states.size();
    report.recurring_count += a.length;
  }
  std::sort(report.attractors.begin(), report.attractors.end(),
            [n](const Attractor& p, const Attractor& q) {
              if (p.length != q.length) return p.length < q.length;
              return text_key(p.states.front(), n) <
                     text_key(q.states.front(), n);
            });
  report.convergence_time = convergence_time(tg, recurring);
}

// Successor cursor packed into one word: for the asynchronous mode the set
// of unstable automata not yet visited, for the elementary mode the next
// submask to emit, for deterministic modes a pending flag.
struct Cursor {
  std::uint64_t state;
  std::uint64_t diff;
};

Cursor open_cursor(const TransitionGraph& tg, std::uint64_t x) {
  const std::uint64_t diff = x ^ tg.successor(x);
  return {tg.mode().deterministic() ? (diff != 0 ? 1U : 0U) : diff, diff};
}

bool next_successor(const TransitionGraph& tg, std::uint64_t x, Cursor& c,
                    std::uint64_t& out) {
  if (c.state == 0) return false;
  switch (tg.mode().kind()) {
    case UpdateMode::Kind::Parallel:
    case UpdateMode::Kind::BlockSequential:
      c.state = 0;
      out = tg.successor(x);
      return true;
    case UpdateMode::Kind::Asynchronous: {
      const std::uint64_t bit = c.state & (~c.state + 1);
      c.state ^= bit;
      out = x ^ bit;
      return true;
    }
    case UpdateMode::Kind::Elementary:
      out = x ^ c.state;
      c.state = (c.state - 1) & c.diff;
      return true;
  }
  return false;
}

constexpr std::uint32_t kUnvisited = 0xffffffffU;

}  // namespace

AttractorReport attractors(const TransitionGraph& tg) {
  if (!tg.mode().deterministic()) return attractors_by_scc(tg);
  AttractorReport report;
  report.width = tg.width();
  const std::uint64_t count = tg.vertex_count();
  // stamp[x] = id of the walk that first reached x.
  std::vector<std::uint32_t> stamp(count, kUnvisited);
  std::vector<bool> recurring(count, false);
  for (std::uint64_t start = 0; start < count; ++start) {
    if (stamp[start] != kUnvisited) continue;
    const auto id = static_cast<std::uint32_t>(start);
    std::uint64_t x = start;
    while (stamp[x] == kUnvisited) {
      stamp[x] = id;
      x = tg.successor(x);
    }
    if (stamp[x] != id) continue;
    Attractor a;
    std::uint64_t y = x;
    do {
      a.states.push_back(y);
      recurring[y] = true;
      y = tg.successor(y);
    } while (y != x);
    a.period = a.states.size();
    report.attractors.push_back(std::move(a));
  }
  finalize(report, tg, recurring);
  return report;
}

AttractorReport attractors_by_scc(const TransitionGraph& tg) {
  const std::uint64_t count = tg.vertex_count();
  std::vector<std::uint32_t> index(count, kUnvisited);
  std::vector<std::uint32_t> low(count, 0);
  std::vector<std::uint32_t> component(count, kUnvisited);
  std::vector<bool> on_stack(count, false);
  std::vector<std::uint64_t> stack;
  struct Frame {
    std::uint64_t x;
    Cursor cursor;
  };
  std::vector<Frame> frames;
  std::uint32_t next_index = 0;
  std::uint32_t next_component = 0;

  for (std::uint64_t root = 0; root < count; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, open_cursor(tg, root)});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      std::uint64_t t = 0;
      if (next_successor(tg, f.x, f.cursor, t)) {
        if (index[t] == kUnvisited) {
          index[t] = low[t] = next_index++;
          stack.push_back(t);
          on_stack[t] = true;
          frames.push_back({t, open_cursor(tg, t)});
        } else if (on_stack[t]) {
          low[f.x] = std::min(low[f.x], index[t]);
        }
        continue;
      }
      const std::uint64_t x = f.x;
      frames.pop_back();
      if (!frames.empty()) {
        const std::uint64_t parent = frames.back().x;
        low[parent] = std::min(low[parent], low[x]);
      }
      if (low[x] == index[x]) {
        std::uint64_t y = 0;
        do {
          y = stack.back();
          stack.pop_back();
          on_stack[y] = false;
          component[y] = next_component;
        } while (y != x);
        ++next_component;
      }
    }
  }

  std::vector<bool> terminal(next_component, true);
  for (std::uint64_t x = 0; x < count; ++x) {
    if (!terminal[component[x]]) continue;
    tg.for_each_distinct_successor(x, [&](std::uint64_t t) {
      if (component[t] != component[x]) terminal[component[x]] = false;
    });
  }
  AttractorReport report;
  report.width = tg.width();
  std::vector<std::int64_t> slot(next_component, -1);
  std::vector<bool> recurring(count, false);
  for (std::uint64_t x = 0; x < count; ++x) {
    const std::uint32_t c = component[x];
    if (!terminal[c]) continue;
    recurring[x] = true;
    if (slot[c] < 0) {
      slot[c] = static_cast<std::int64_t>(report.attractors.size());
      report.attractors.emplace_back();
    }
    report.attractors[static_cast<std::size_t>(slot[c])].states.push_back(x);
  }
  if (tg.mode().deterministic()) {
    for (Attractor& a : report.attractors) a.period = a.states.size();
  }
  finalize(report, tg, recurring);
  return report;
}

std::vector<bool> recurring_set(const TransitionGraph& tg) {
  std::vector<bool> recurring(tg.vertex_count(), false);
  for (const Attractor& a : attractors(tg).attractors) {
    for (std::uint64_t x : a.states) recurring[x] = true;
  }
  return recurring;
}

std::uint64_t convergence_time(const TransitionGraph& tg,
                               const std::vector<bool>& recurring) {
  const std::uint64_t count = tg.vertex_count();
  constexpr std::uint64_t kUnknown = ~std::uint64_t{0};
  std::vector<std::uint64_t> dist(count, kUnknown);
  std::vector<std::uint64_t> frontier;
  for (std::uint64_t x = 0; x < count; ++x) {
    if (recurring[x]) {
      dist[x] = 0;
      frontier.push_back(x);
    }
  }
  std::uint64_t worst = 0;
  if (tg.mode().kind() == UpdateMode::Kind::Elementary) {
    // Layered scan: reversing the implicit elementary arcs would need
    // storage quadratic in the state count.
    std::vector<std::uint64_t> pending;
    for (std::uint64_t x = 0; x < count; ++x) {
      if (!recurring[x]) pending.push_back(x);
    }
    for (std::uint64_t layer = 1; !pending.empty(); ++layer) {
      std::vector<std::uint64_t> assigned;
      std::vector<std::uint64_t> rest;
      for (std::uint64_t x : pending) {
        bool hit = false;
        tg.for_each_distinct_successor(x, [&](std::uint64_t t) {
          if (dist[t] == layer - 1) hit = true;
        });
        (hit ? assigned : rest).push_back(x);
      }
      if (assigned.empty()) throw Error("configuration cannot reach an attractor");
      for (std::uint64_t x : assigned) dist[x] = layer;
      worst = layer;
      pending.swap(rest);
    }
    return worst;
  }
  // Reverse breadth-first search over a CSR of reversed distinct arcs.
  std::vector<std::uint32_t> offsets(count + 1, 0);
  for (std::uint64_t x = 0; x < count; ++x) {
    tg.for_each_distinct_successor(x, [&](std::uint64_t t) { ++offsets[t + 1]; });
  }
  for (std::uint64_t x = 0; x < count; ++x) offsets[x + 1] += offsets[x];
  std::vector<std::uint32_t> sources(offsets[count]);
  std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::uint64_t x = 0; x < count; ++x) {
    tg.for_each_distinct_successor(x, [&](std::uint64_t t) {
      sources[fill[t]++] = static_cast<std::uint32_t>(x);
    });
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const std::uint64_t t = frontier[head];
    for (std::uint32_t k = offsets[t]; k < offsets[t + 1]; ++k) {
      const std::uint64_t s = sources[k];
      if (dist[s] != kUnknown) continue;
      dist[s] = dist[t] + 1;
      worst = std::max(worst, dist[s]);
      frontier.push_back(s);
    }
  }
  return worst;
}

std::uint64_t convergence_time(const TransitionGraph& tg) {
  return convergence_time(tg, recurring_set(tg));
}

// --------------------------------------------------------- theorem checks

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Inapplicable:
      return "inapplicable";
  }
  return "?";
}

Verdict check_robert(const BooleanNetwork& net, const Caps& caps) {
  const int n = net.size();
  const SignedDigraph g = interaction_graph(net, caps.deterministic);
  if (!g.is_acyclic()) {
    return {CheckStatus::Inapplicable, "interaction graph is not acyclic"};
  }
  const TransitionGraph parallel(net, UpdateMode::parallel(), caps);
  const AttractorReport pr = attractors(parallel);
  if (pr.attractors.size() != 1 || !pr.attractors[0].fixed_point()) {
    return {CheckStatus::Fail,
            "parallel dynamics has " + std::to_string(pr.attractors.size()) +
                " attractors, expected one fixed point"};
  }
  const std::uint64_t fixed = pr.attractors[0].states[0];
  if (pr.convergence_time > static_cast<std::uint64_t>(n)) {
    return {CheckStatus::Fail, "parallel convergence time " +
                                   std::to_string(pr.convergence_time) +
                                   " exceeds n=" + std::to_string(n)};
  }

  const TransitionGraph async(net, UpdateMode::asynchronous(), caps);
  const std::uint64_t count = async.vertex_count();
  // Kahn's algorithm on the asynchronous graph without self-loops.
  std::vector<std::uint32_t> indeg(count, 0);
  for (std::uint64_t x = 0; x < count; ++x) {
    async.for_each_distinct_successor(x, [&](std::uint64_t t) { ++indeg[t]; });
  }
  std::vector<std::uint64_t> ready;
  for (std::uint64_t x = 0; x < count; ++x) {
    if (indeg[x] == 0) ready.push_back(x);
  }
  std::uint64_t removed = 0;
  while (!ready.empty()) {
    const std::uint64_t x = ready.back();
    ready.pop_back();
    ++removed;
    async.for_each_distinct_successor(x, [&](std::uint64_t t) {
      if (--indeg[t] == 0) ready.push_back(t);
    });
  }
  if (removed != count) {
    return {CheckStatus::Fail, "asynchronous transition graph has a cycle"};
  }
  // Geodesics: asynchronous distance to the fixed point equals the Hamming
  // distance. A step changes one bit, so a path reaching the fixed point in
  // popcount(x ^ fixed) steps exists iff some unstable automaton of x moves
  // it closer, recursively.
  std::vector<bool> geodesic(count, false);
  std::vector<std::uint64_t> order(count);
  for (std::uint64_t x = 0; x < count; ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [fixed](std::uint64_t a, std::uint64_t b) {
    return __builtin_popcountll(a ^ fixed) < __builtin_popcountll(b ^ fixed);
  });
  for (std::uint64_t x : order) {
    if (x == fixed) {
      geodesic[x] = true;
      continue;
    }
    const int here = __builtin_popcountll(x ^ fixed);
    bool ok = false;
    async.for_each_distinct_successor(x, [&](std::uint64_t t) {
      if (__builtin_popcountll(t ^ fixed) == here - 1 && geodesic[t]) ok = true;
    });
    if (!ok) {
      return {CheckStatus::Fail, "no asynchronous geodesic from " +
                                     state_string(x, n) + " to " +
                                     state_string(fixed, n)};
    }
    geodesic[x] = true;
  }
  return {CheckStatus::Pass, "unique fixed point " + state_string(fixed, n)};
}

FeedbackVerdict check_feedback_necessity(const BooleanNetwork& net,
                                         const UpdateMode& mode,
                                         const Caps& caps) {
  FeedbackVerdict v;
  const TransitionGraph tg(net, mode, caps);
  const AttractorReport report = attractors(tg);
  v.stable_configurations = report.fixed_points();
  v.stable_oscillations = report.oscillations();
  const SignedDigraph g = interaction_graph(net, caps.for_mode(mode));
  for (const auto& [cycle, sign] : g.elementary_cycles()) {
    if (sign > 0) v.graph_has_positive_cycle = true;
    if (sign < 0) v.graph_has_negative_cycle = true;
  }
  if (v.stable_configurations >= 2) {
    v.positive_cycle =
        v.graph_has_positive_cycle
            ? Verdict{CheckStatus::Pass, "several stable configurations and a "
                                         "positive cycle"}
            : Verdict{CheckStatus::Fail, std::to_string(v.stable_configurations) +
                                             " stable configurations without a "
                                             "positive cycle"};
  } else {
    v.positive_cycle = {CheckStatus::Pass, "fewer than two stable configurations"};
  }
  if (mode.kind() != UpdateMode::Kind::Asynchronous) {
    v.negative_cycle = {CheckStatus::Inapplicable,
                        "oscillation/negative-cycle implication only holds for "
                        "the asynchronous mode"};
  } else if (v.stable_oscillations > 0) {
    v.negative_cycle =
        v.graph_has_negative_cycle
            ? Verdict{CheckStatus::Pass, "stable oscillation and a negative cycle"}
            : Verdict{CheckStatus::Fail,
                      "stable oscillation without a negative cycle"};
  } else {
    v.negative_cycle = {CheckStatus::Pass, "no stable oscillation"};
  }
  return v;
}

}  // namespace ban
