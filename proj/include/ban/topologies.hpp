#pragma once

// Canonical cycles and double-cycles, tangential double-cycles, and the
// conjunction/disjunction duality.

#include <cstdint>
#include <string>
#include <variant>

#include "ban/core.hpp"

namespace ban {

enum class Sign { Positive, Negative };
enum class Junction { And, Or };
enum class Side { Left, Right };

inline char sign_char(Sign s) { return s == Sign::Positive ? '+' : '-'; }
inline const char* junction_name(Junction j) {
  return j == Junction::And ? "and" : "or";
}

struct CycleDescriptor {
  int n = 1;
  Sign sign = Sign::Positive;

  friend bool operator==(const CycleDescriptor&,
                         const CycleDescriptor&) = default;
};

/// Two cycles of sizes l and r sharing automaton 0. The left cycle holds
/// automata 0..l-1, the right cycle 0 and l..l+r-2.
struct DoubleCycleDescriptor {
  int l = 1;
  int r = 1;
  Sign left = Sign::Positive;
  Sign right = Sign::Positive;
  Junction junction = Junction::Or;

  int size() const { return l + r - 1; }
  int cycle_size(Side side) const { return side == Side::Left ? l : r; }
  /// gcd(l, r).
  std::uint64_t delta() const;
  /// gcd(delta, p).
  std::uint64_t delta(std::uint64_t p) const;

  bool positive() const {
    return left == Sign::Positive && right == Sign::Positive;
  }
  bool mixed() const {
    return left == Sign::Negative && right == Sign::Positive;
  }
  bool negative() const {
    return left == Sign::Negative && right == Sign::Negative;
  }

  friend bool operator==(const DoubleCycleDescriptor&,
                         const DoubleCycleDescriptor&) = default;
};

using Descriptor = std::variant<CycleDescriptor, DoubleCycleDescriptor>;

/// Throws unless l, r >= 1 and the sign pair is (+,+), (-,+) or (-,-).
void validate(const DoubleCycleDescriptor& d);
void validate(const CycleDescriptor& d);

/// Global automaton index of position k (0 <= k < cycle size) of a cycle;
/// position 0 is the shared automaton.
int global_index(const DoubleCycleDescriptor& d, Side side, int k);

BooleanNetwork canonical_cycle(const CycleDescriptor& d);
BooleanNetwork canonical_double_cycle(const DoubleCycleDescriptor& d);
BooleanNetwork build_network(const Descriptor& d);

/// Parses the shorthand "C+:n", "C-:n", "D++:l,r[:or|and]",
/// "D-+:l,r[:...]", "D--:l,r[:...]". When the junction is omitted,
/// `default_junction` is used.
Descriptor parse_descriptor(const std::string& text,
                            Junction default_junction = Junction::Or);
std::string to_string(const Descriptor& d);

/// Tangential double-cycle: two cycles sharing a path p_0 -> ... -> p_{m-1}
/// where p_0 has arity 2 and the rest arity 1. `l` and `r` count the
/// automata of each cycle once the shared path is contracted to p_0, so
/// m = 1 is the canonical double-cycle D_{l,r}.
///
/// Automata: 0..m-1 are the path, then the l-1 private automata of the
/// left cycle, then the r-1 private automata of the right cycle.
struct TangentialDescriptor {
  int l = 1;
  int r = 1;
  int m = 1;
  Sign left = Sign::Positive;
  Sign right = Sign::Positive;
  Junction junction = Junction::Or;

  int size() const { return l + r - 1 + (m - 1); }
};

BooleanNetwork tangential_network(const TangentialDescriptor& t);

/// The canonical double-cycle equivalent to `t`: every shared automaton of
/// arity 1 is split into one copy per cycle, so both cycles grow by m - 1.
DoubleCycleDescriptor canonicalize_tangential(const TangentialDescriptor& t);

/// Embedding of tangential configurations into the canonical double-cycle
/// obtained by canonicalize_tangential: each path automaton p_k, k >= 1,
/// is written to both of its copies.
std::uint64_t duplicate_path_state(const TangentialDescriptor& t,
                                   std::uint64_t state);

}  // namespace ban
