#pragma once

// Interpreter for update instructions on asynchronous double-cycles, the
// built-in update sequences and their step bounds.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ban/core.hpp"
#include "ban/dynamics.hpp"
#include "ban/topologies.hpp"

namespace ban {

class InapplicableBuiltin : public Error {
 public:
  /// `presupposition` is set when a min/max search of the sequence has an
  /// empty domain, as opposed to a wrong network or missing argument.
  InapplicableBuiltin(const std::string& msg, bool presupposition = false)
      : Error(msg), presupposition_(presupposition) {}
  bool presupposition() const { return presupposition_; }

 private:
  bool presupposition_;
};

/// One single-automaton update performed by the machine.
struct UpdateStep {
  int automaton;
  std::uint64_t pre;
  std::uint64_t post;
};

/// Configuration of a double-cycle seen as the two cycle words x^l, x^r,
/// which share position 0 (automaton c = 0). Positions are local to a
/// cycle: position k of the right cycle is automaton l-1+k for k >= 1.
class VmState {
 public:
  VmState(const DoubleCycleDescriptor& d, std::uint64_t x);

  const DoubleCycleDescriptor& descriptor() const { return desc_; }
  const BooleanNetwork& network() const { return *net_; }
  int width() const { return desc_.size(); }
  std::uint64_t x() const { return x_; }
  std::uint64_t steps() const { return steps_; }
  int cycle_size(Side side) const { return desc_.cycle_size(side); }

  /// x^m_k.
  bool at(Side side, int k) const;
  /// The cycle word x^m, position 0 first.
  std::string word(Side side) const;

  /// Updates automaton c.
  void sync();
  /// Updates position k (1 <= k < size) of a cycle.
  void update(Side side, int k);

  /// Single updates are appended here when recording is on.
  void set_recording(bool on) { recording_ = on; }
  const std::vector<UpdateStep>& log() const { return log_; }

 private:
  void update_automaton(int g);

  DoubleCycleDescriptor desc_;
  std::shared_ptr<const BooleanNetwork> net_;
  std::uint64_t x_;
  std::uint64_t steps_ = 0;
  bool recording_ = false;
  std::vector<UpdateStep> log_;
};

/// Number of circular factors 01 of one cycle word.
int expressiveness(const VmState& s, Side side);
/// Summed over both cycle words.
int expressiveness(const VmState& s);

struct Instruction {
  enum class Op { Sync, Update, IncUp, Erase, Expand, DecUp, Shift };

  Op op = Op::Sync;
  Side cycle = Side::Left;
  int i = 0;
  int j = 0;
  /// Expand only: the bound was resolved from an empty boundary set and the
  /// instruction performs no update.
  bool empty_expand = false;

  static Instruction sync() { return {}; }
  static Instruction update(Side m, int k) { return {Op::Update, m, k, k}; }
  static Instruction inc_up(Side m, int i, int j) {
    return {Op::IncUp, m, i, j};
  }
  static Instruction dec_up(Side m, int i, int j) {
    return {Op::DecUp, m, i, j};
  }
  static Instruction erase(Side m) { return {Op::Erase, m}; }
  static Instruction shift(Side m) { return {Op::Shift, m}; }
  /// Expand with its upper index left unresolved; exec computes kappa.
  static Instruction expand(Side m) { return {Op::Expand, m, 1, -1}; }

  std::string name() const;
  std::string to_string() const;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// kappa of expand on the current state, or nullopt when the defining set
/// is empty.
std::optional<int> expand_kappa(const VmState& s, Side side);

/// Executes one instruction. An unresolved expand is resolved against the
/// current state. Throws Error on an index that addresses automaton c or
/// lies outside the cycle.
void exec(VmState& s, const Instruction& instr);

/// Instruction with every data-dependent index fixed against `s`.
Instruction resolve(const VmState& s, const Instruction& instr);

enum class Lemma1Hypothesis { None, Alternating, AlternatingLastAgrees, AlternatingSomeDiffers };
const char* to_string(Lemma1Hypothesis h);

/// First hypothesis of the copy lemma satisfied by cycle `side` of x
/// relative to the target x'.
Lemma1Hypothesis copy_hypothesis(const DoubleCycleDescriptor& d,
                                 std::uint64_t x, std::uint64_t target,
                                 Side side);

struct Program {
  std::string builtin;
  DoubleCycleDescriptor descriptor;
  std::uint64_t start = 0;
  std::optional<std::uint64_t> target;
  std::vector<Instruction> instructions;  // fully resolved
  std::uint64_t final_state = 0;
  std::uint64_t steps = 0;
  std::vector<std::string> notes;
};

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "copy_c", "copy", "copy_p", "fix0", "fix1", "simp", "comp1", "comp2", "comp"};
  return names;
}

/// Generates a builtin sequence from `start`, resolving its branches and
/// searches along the induced trajectory. copy_c acts on `side`; the copy
/// family needs `target`.
Program compile_builtin(const std::string& name, const DoubleCycleDescriptor& d,
                        std::uint64_t start,
                        std::optional<std::uint64_t> target = std::nullopt,
                        Side side = Side::Left);

/// Folds exec over the program from its start configuration.
VmState run(const Program& program, bool record = false);
VmState run(VmState state, const std::vector<Instruction>& program);

/// Stated update-count bound of a builtin on a descriptor, if any.
std::optional<std::int64_t> step_bound(const std::string& name,
                                       const DoubleCycleDescriptor& d);

/// The configuration ((10)^{l/2}, (10)^{r/2}) of an even double-cycle.
std::uint64_t alternating_state(const DoubleCycleDescriptor& d);
/// Configuration with cycle words wl and wr (which must agree at 0).
std::uint64_t from_words(const DoubleCycleDescriptor& d, const std::string& wl,
                         const std::string& wr);

// ------------------------------------------------------------ verifier

enum class RecordStatus { Pass, Fail, PaperDiscrepancy, Excluded };
const char* to_string(RecordStatus s);

struct SequenceRecord {
  std::string builtin;
  std::uint64_t start = 0;
  std::optional<std::uint64_t> target;
  std::uint64_t expected = 0;
  std::uint64_t final_state = 0;
  std::uint64_t steps = 0;
  std::optional<std::int64_t> bound;
  RecordStatus status = RecordStatus::Pass;
  std::string note;
};

struct SequenceReport {
  DoubleCycleDescriptor descriptor;
  std::vector<SequenceRecord> records;  // sorted by builtin, start, target
  /// Largest step count observed per builtin over its admissible runs.
  std::vector<std::pair<std::string, std::uint64_t>> worst_steps;
  bool closure_checked = false;
  bool closure_holds = true;
  /// Every single update of every run is an arc of the asynchronous graph.
  bool transitions_legal = true;
  std::vector<std::string> notes;

  std::size_t count(RecordStatus s) const;
  std::size_t count(const std::string& builtin, RecordStatus s) const;
};

/// Runs every builtin applicable to the descriptor from every start (and
/// for copy_p every target), checking final configurations, step bounds
/// and, on even negative double-cycles, copy_p(comp(simp(x)), x') = x'.
/// A disjunctive descriptor is checked on its conjunctive dual through
/// the complement map.
SequenceReport verify_sequence_theorems(const DoubleCycleDescriptor& d,
                                        const Caps& caps = Caps{});

// --------------------------------------------------------------- traces

/// One JSON object per instruction: instr, cycle, indices, pre, post,
/// steps_so_far, expressiveness.
std::string trace_jsonl(const Program& program);

struct ReplayResult {
  bool ok = true;
  std::size_t records = 0;
  std::string error;
  std::uint64_t final_state = 0;
};

/// Re-executes a trace on `d` and checks every record.
ReplayResult replay_trace(const DoubleCycleDescriptor& d,
                          const std::string& jsonl);

}  // namespace ban
