#pragma once

// Transition graphs under the parallel, block-sequential, asynchronous and
// elementary updating modes, attractor extraction and convergence times.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ban/core.hpp"

namespace ban {

class UpdateMode {
 public:
  enum class Kind { Parallel, Asynchronous, Elementary, BlockSequential };

  static UpdateMode parallel() { return UpdateMode(Kind::Parallel, {}); }
  static UpdateMode asynchronous() {
    return UpdateMode(Kind::Asynchronous, {});
  }
  static UpdateMode elementary() { return UpdateMode(Kind::Elementary, {}); }
  /// Blocks are applied in order within one step. Whether they partition V
  /// is checked when a graph is built.
  static UpdateMode block_sequential(std::vector<std::vector<int>> blocks) {
    return UpdateMode(Kind::BlockSequential, std::move(blocks));
  }
  /// "parallel", "async", "asynchronous", "elementary", or a block list
  /// such as "0,1|2".
  static UpdateMode parse(const std::string& text);

  Kind kind() const { return kind_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  bool deterministic() const {
    return kind_ == Kind::Parallel || kind_ == Kind::BlockSequential;
  }
  std::string to_string() const;

  /// Throws unless the blocks are nonempty, disjoint and cover 0..n-1.
  void validate(int n) const;

 private:
  UpdateMode(Kind kind, std::vector<std::vector<int>> blocks)
      : kind_(kind), blocks_(std::move(blocks)) {}

  Kind kind_;
  std::vector<std::vector<int>> blocks_;
};

struct Caps {
  int deterministic = 20;
  int asynchronous = 20;
  int elementary = 14;

  int for_mode(const UpdateMode& mode) const;
  /// Defaults, overridden by the BAN_CAP environment variable when set.
  static Caps from_environment();
  static Caps uniform(int cap) { return {cap, cap, cap}; }
};

/// Transition graph over B^n for one updating mode.
///
/// Only the image of each configuration under the mode's global map is
/// stored (F_V for the parallel, asynchronous and elementary modes, the
/// composed block sweep for block-sequential modes); labelled arcs are
/// generated on demand from it. An arc is (source, label W, target) with
/// target = F_W(source); self-loops are arcs.
class TransitionGraph {
 public:
  TransitionGraph(const BooleanNetwork& net, UpdateMode mode,
                  const Caps& caps = Caps{});

  int width() const { return n_; }
  std::uint64_t vertex_count() const { return std::uint64_t{1} << n_; }
  const UpdateMode& mode() const { return mode_; }
  /// Number of labelled arcs leaving each vertex.
  std::uint64_t out_degree() const;

  /// Successor under a deterministic mode.
  std::uint64_t successor(std::uint64_t x) const { return image_[x]; }

  /// Calls visit(label, target) for every labelled arc leaving x.
  void for_each_arc(
      std::uint64_t x,
      const std::function<void(AutomatonSet, std::uint64_t)>& visit) const;

  /// Calls visit(target) once per distinct target != x.
  template <typename Visit>
  void for_each_distinct_successor(std::uint64_t x, Visit&& visit) const {
    const std::uint64_t y = image_[x];
    switch (mode_.kind()) {
      case UpdateMode::Kind::Parallel:
      case UpdateMode::Kind::BlockSequential:
        if (y != x) visit(y);
        return;
      case UpdateMode::Kind::Asynchronous: {
        std::uint64_t diff = x ^ y;
        while (diff != 0) {
          const std::uint64_t bit = diff & (~diff + 1);
          visit(x ^ bit);
          diff ^= bit;
        }
        return;
      }
      case UpdateMode::Kind::Elementary: {
        // Distinct targets of F_W are x with any nonempty subset of the
        // unstable automata flipped.
        const std::uint64_t diff = x ^ y;
        for (std::uint64_t s = diff; s != 0; s = (s - 1) & diff) visit(x ^ s);
        return;
      }
    }
  }

  /// Configurations whose only arcs are self-loops.
  bool is_stable(std::uint64_t x) const;

 private:
  int n_;
  UpdateMode mode_;
  std::vector<std::uint64_t> image_;
};

struct Attractor {
  /// Members sorted by their text form.
  std::vector<std::uint64_t> states;
  std::uint64_t length = 0;
  /// Minimal period, for deterministic modes.
  std::optional<std::uint64_t> period;

  bool fixed_point() const { return length == 1; }
};

struct AttractorReport {
  int width = 0;
  /// Sorted by (length, least member in text order).
  std::vector<Attractor> attractors;
  std::uint64_t recurring_count = 0;
  std::uint64_t convergence_time = 0;

  std::size_t fixed_points() const;
  std::size_t oscillations() const;
};

/// Attractors as terminal strongly connected components. Deterministic
/// modes use functional-graph cycle detection.
AttractorReport attractors(const TransitionGraph& tg);

/// Same result computed with Tarjan's algorithm for every mode.
AttractorReport attractors_by_scc(const TransitionGraph& tg);

/// Membership flags of the union of all attractors.
std::vector<bool> recurring_set(const TransitionGraph& tg);

/// Greatest, over all configurations, shortest trajectory length into the
/// recurring set.
std::uint64_t convergence_time(const TransitionGraph& tg,
                               const std::vector<bool>& recurring);
std::uint64_t convergence_time(const TransitionGraph& tg);

// ------------------------------------------------------ theorem checks

enum class CheckStatus { Pass, Fail, Inapplicable };
const char* to_string(CheckStatus s);

struct Verdict {
  CheckStatus status = CheckStatus::Pass;
  std::string detail;

  bool passed() const { return status == CheckStatus::Pass; }
};

/// Acyclic interaction graph implies: a unique attractor which is a fixed
/// point; parallel trajectories reach it within n steps; the asynchronous
/// graph without self-loops is acyclic and holds a geodesic from every
/// configuration to the fixed point. Inapplicable when the interaction
/// graph has a cycle.
Verdict check_robert(const BooleanNetwork& net, const Caps& caps = Caps{});

struct FeedbackVerdict {
  /// Several stable configurations imply a positive cycle.
  Verdict positive_cycle;
  /// Under the asynchronous mode, a stable oscillation implies a negative
  /// cycle. Inapplicable for other modes.
  Verdict negative_cycle;
  std::size_t stable_configurations = 0;
  std::size_t stable_oscillations = 0;
  bool graph_has_positive_cycle = false;
  bool graph_has_negative_cycle = false;

  bool passed() const {
    return positive_cycle.status != CheckStatus::Fail &&
           negative_cycle.status != CheckStatus::Fail;
  }
};

FeedbackVerdict check_feedback_necessity(const BooleanNetwork& net,
                                         const UpdateMode& mode,
                                         const Caps& caps = Caps{});

}  // namespace ban
