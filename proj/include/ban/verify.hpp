#pragma once

// Oracle-equivalence drivers: enumeration against closed forms, sequence
// bounds, duality and the feedback-cycle theorems, reported as a matrix.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ban/combinatorics.hpp"
#include "ban/dynamics.hpp"
#include "ban/io.hpp"
#include "ban/sequence_vm.hpp"
#include "ban/topologies.hpp"

namespace ban {

using Status = RecordStatus;

/// Period statistics of a parallel network obtained by enumeration.
struct ParallelCensus {
  int width = 0;
  std::uint64_t lcm_period = 1;
  std::map<std::uint64_t, std::uint64_t> attractors_by_period;
  std::uint64_t recurring = 0;
  std::uint64_t convergence_time = 0;

  /// Number of configurations x with F^p(x) = x.
  BigInt X(std::uint64_t p) const;
  /// Table over the divisors of `omega`. Returns nullopt when some period
  /// does not divide omega.
  std::optional<QuantityTable> table(const std::string& name,
                                     std::uint64_t omega) const;
};

ParallelCensus parallel_census(const BooleanNetwork& net, const Caps& caps = Caps{});

struct MatrixRow {
  std::string subject;  // descriptor or sample id
  std::string check;
  Status status = Status::Pass;
  std::string detail;
};

struct VerifyMatrix {
  std::string family;
  std::vector<MatrixRow> rows;

  std::size_t count(Status s) const;
  /// 1 on any failure, else 4 when a paper discrepancy is present, else 0.
  int exit_code() const;
  Json to_json() const;
  std::string to_text() const;
  void append(const VerifyMatrix& other);
};

/// Parallel quantities (enumeration against the closed forms, printed sums,
/// order, bounds) and asynchronous attractors of C+_n and C-_n.
VerifyMatrix verify_cycles(int lo, int hi, const Caps& caps = Caps{});

enum class DoubleCycleFamily { Positive, Mixed, Negative, All };
DoubleCycleFamily parse_family(const std::string& text);

/// Parallel quantities of double-cycles with l + r - 1 <= max_size.
VerifyMatrix verify_double_cycles(DoubleCycleFamily family, int max_size,
                                  const Caps& caps = Caps{});

/// Builtin sequences of asynchronous double-cycles with l, r in lo..hi
/// (conjunctive junction), plus the attractor of negative double-cycles
/// against the unreachable-set count.
VerifyMatrix verify_sequences(int lo, int hi, const Caps& caps = Caps{});

/// Attractor structure of asynchronous negative double-cycles with
/// l + r - 1 <= max_size: one terminal component of size 2^n - |I|.
VerifyMatrix verify_negative_async(int max_size, const Caps& caps = Caps{});

/// Conjunction/disjunction duality for every sign pattern with
/// l + r - 1 <= max_size under the parallel, asynchronous, elementary
/// (within its cap) and sequential 0|1|...|n-1 modes.
VerifyMatrix verify_duality(int max_size, const Caps& caps = Caps{});

/// Random network whose every local function reads only lower-indexed
/// automata, each at most once, through and/or/not.
BooleanNetwork random_acyclic_network(std::mt19937_64& rng, int n);
/// Random network of read-once and/or/not formulas over any automata.
BooleanNetwork random_unate_network(std::mt19937_64& rng, int n);

VerifyMatrix verify_robert(int samples, std::uint64_t seed, int max_n = 8,
                           const Caps& caps = Caps{});
VerifyMatrix verify_thomas(int samples, std::uint64_t seed, int max_n = 6,
                           const Caps& caps = Caps{});

}  // namespace ban
