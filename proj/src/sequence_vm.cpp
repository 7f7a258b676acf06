#include "ban/sequence_vm.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ban/duality.hpp"
#include "json.hpp"

namespace ban {

// ---------------------------------------------------------------- state

VmState::VmState(const DoubleCycleDescriptor& d, std::uint64_t x)
    : desc_(d),
      net_(std::make_shared<const BooleanNetwork>(canonical_double_cycle(d))),
      x_(x) {
  if ((x & ~full_set(d.size())) != 0) {
    throw Error("configuration wider than the double-cycle");
  }
}

bool VmState::at(Side side, int k) const {
  return (x_ >> global_index(desc_, side, k)) & 1U;
}

std::string VmState::word(Side side) const {
  std::string w;
  for (int k = 0; k < cycle_size(side); ++k) w += at(side, k) ? '1' : '0';
  return w;
}

void VmState::update_automaton(int g) {
  const std::uint64_t pre = x_;
  x_ = net_->apply_update(singleton(g), Configuration(width(), x_)).bits();
  ++steps_;
  if (recording_) log_.push_back({g, pre, x_});
}

void VmState::sync() { update_automaton(0); }

void VmState::update(Side side, int k) {
  if (k < 1 || k >= cycle_size(side)) {
    throw Error("update index " + std::to_string(k) +
                " must address a non-shared automaton of the cycle");
  }
  update_automaton(global_index(desc_, side, k));
}

int expressiveness(const VmState& s, Side side) {
  const int size = s.cycle_size(side);
  int count = 0;
  for (int k = 0; k < size; ++k) {
    if (!s.at(side, k) && s.at(side, (k + 1) % size)) ++count;
  }
  return count;
}

int expressiveness(const VmState& s) {
  return expressiveness(s, Side::Left) + expressiveness(s, Side::Right);
}

// --------------------------------------------------------- instructions

namespace {

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

}  // namespace

std::string Instruction::name() const {
  switch (op) {
    case Op::Sync:
      return "sync";
    case Op::Update:
      return "update";
    case Op::IncUp:
      return "incUp";
    case Op::Erase:
      return "erase";
    case Op::Expand:
      return "expand";
    case Op::DecUp:
      return "decUp";
    case Op::Shift:
      return "shift";
  }
  return "?";
}

std::string Instruction::to_string() const {
  const std::string c = side_name(cycle);
  switch (op) {
    case Op::Sync:
      return "sync";
    case Op::Update:
      return "update(" + c + "," + std::to_string(i) + ")";
    case Op::IncUp:
    case Op::DecUp:
      return name() + "(" + c + "," + std::to_string(i) + "," +
             std::to_string(j) + ")";
    case Op::Expand:
      if (j < 0) return "expand(" + c + ")";
      return "expand(" + c + ")=incUp(" + std::to_string(i) + "," +
             std::to_string(j) + ")" + (empty_expand ? "[empty]" : "");
    case Op::Erase:
    case Op::Shift:
      return name() + "(" + c + ")";
  }
  return "?";
}

std::optional<int> expand_kappa(const VmState& s, Side side) {
  const int size = s.cycle_size(side);
  const bool c = s.at(side, 0);
  for (int k = 1; k < size; ++k) {
    const bool here = s.at(side, k);
    const bool next = s.at(side, (k + 1) % size);
    if (c ? (!here && next) : (here && !next)) return k;
  }
  return std::nullopt;
}

Instruction resolve(const VmState& s, const Instruction& instr) {
  if (instr.op != Instruction::Op::Expand || instr.j >= 0) return instr;
  Instruction r = instr;
  r.i = 1;
  if (const auto kappa = expand_kappa(s, instr.cycle)) {
    r.j = *kappa - 1;
  } else {
    r.j = 0;
    r.empty_expand = true;
  }
  return r;
}

namespace {

void check_range(const VmState& s, Side side, int i, int j) {
  if (j < i) return;
  if (i < 1 || j >= s.cycle_size(side)) {
    throw Error("indices " + std::to_string(i) + ".." + std::to_string(j) +
                " outside 1.." + std::to_string(s.cycle_size(side) - 1) +
                " of the " + side_name(side) + " cycle");
  }
}

void inc_up(VmState& s, Side side, int i, int j) {
  check_range(s, side, i, j);
  for (int k = i; k <= j; ++k) s.update(side, k);
}

void dec_up(VmState& s, Side side, int i, int j) {
  check_range(s, side, i, j);
  for (int k = j; k >= i; --k) s.update(side, k);
}

}  // namespace

void exec(VmState& s, const Instruction& instr) {
  const Side m = instr.cycle;
  switch (instr.op) {
    case Instruction::Op::Sync:
      s.sync();
      return;
    case Instruction::Op::Update:
      s.update(m, instr.i);
      return;
    case Instruction::Op::IncUp:
      inc_up(s, m, instr.i, instr.j);
      return;
    case Instruction::Op::Erase:
      inc_up(s, m, 1, s.cycle_size(m) - 1);
      return;
    case Instruction::Op::Expand: {
      const Instruction r = resolve(s, instr);
      inc_up(s, m, r.i, r.j);
      return;
    }
    case Instruction::Op::DecUp:
      dec_up(s, m, instr.i, instr.j);
      return;
    case Instruction::Op::Shift:
      dec_up(s, m, 1, s.cycle_size(m) - 1);
      return;
  }
}

// ------------------------------------------------------------ copy lemma

const char* to_string(Lemma1Hypothesis h) {
  switch (h) {
    case Lemma1Hypothesis::None:
      return "none";
    case Lemma1Hypothesis::Alternating:
      return "alternating";
    case Lemma1Hypothesis::AlternatingLastAgrees:
      return "alternating-last-agrees";
    case Lemma1Hypothesis::AlternatingSomeDiffers:
      return "alternating-some-differs";
  }
  return "?";
}

Lemma1Hypothesis copy_hypothesis(const DoubleCycleDescriptor& d,
                                 std::uint64_t x, std::uint64_t target,
                                 Side side) {
  const int size = d.cycle_size(side);
  auto bit = [&](std::uint64_t s, int k) {
    return static_cast<bool>((s >> global_index(d, side, k)) & 1U);
  };
  auto alternates_upto = [&](int last) {
    for (int i = 1; i <= last; ++i) {
      if (bit(x, i) == bit(x, i - 1)) return false;
    }
    return true;
  };
  if (alternates_upto(size - 1)) return Lemma1Hypothesis::Alternating;
  if (!alternates_upto(size - 2)) return Lemma1Hypothesis::None;
  if (bit(x, size - 1) == bit(target, size - 1)) {
    return Lemma1Hypothesis::AlternatingLastAgrees;
  }
  for (int p = 1; p <= size - 2; ++p) {
    if (bit(x, p) != bit(target, p)) {
      return Lemma1Hypothesis::AlternatingSomeDiffers;
    }
  }
  return Lemma1Hypothesis::None;
}

// -------------------------------------------------------------- builtins

namespace {

class Builder {
 public:
  Builder(const std::string& name, const DoubleCycleDescriptor& d,
          std::uint64_t start, std::optional<std::uint64_t> target)
      : state_(d, start) {
    program_.builtin = name;
    program_.descriptor = d;
    program_.start = start;
    program_.target = target;
  }

  VmState& state() { return state_; }
  const DoubleCycleDescriptor& desc() const { return program_.descriptor; }
  void note(std::string text) { program_.notes.push_back(std::move(text)); }

  void emit(const Instruction& instr) {
    const Instruction r = resolve(state_, instr);
    if (r.empty_expand) {
      note("expand(" + std::string(side_name(r.cycle)) +
           ") found no boundary and performed no update");
    }
    exec(state_, r);
    program_.instructions.push_back(r);
  }

  Program finish() {
    program_.final_state = state_.x();
    program_.steps = state_.steps();
    return std::move(program_);
  }

 private:
  VmState state_;
  Program program_;
};

std::optional<int> first_position(const VmState& s, Side side, bool value) {
  for (int k = 0; k < s.cycle_size(side); ++k) {
    if (s.at(side, k) == value) return k;
  }
  return std::nullopt;
}

void require(bool condition, const std::string& msg) {
  if (!condition) throw InapplicableBuiltin(msg);
}

void require_conjunctive(const DoubleCycleDescriptor& d,
                         const std::string& name) {
  require(d.junction == Junction::And,
          name + " is stated for the conjunctive junction");
}

void fix0(Builder& b) {
  const auto& d = b.desc();
  require(d.positive(), "fix0 needs a positive double-cycle");
  require_conjunctive(d, "fix0");
  VmState& s = b.state();
  if (s.at(Side::Left, 0)) {
    const auto i = first_position(s, Side::Left, false);
    if (!i) {
      throw InapplicableBuiltin(
          "fix0: the left cycle has no automaton at 0 for i <- min{k | x^l_k = 0}",
          true);
    }
    b.emit(Instruction::inc_up(Side::Left, *i + 1, d.l - 1));
    b.emit(Instruction::sync());
  }
  b.emit(Instruction::erase(Side::Left));
  b.emit(Instruction::erase(Side::Right));
}

void fix1(Builder& b) {
  const auto& d = b.desc();
  require(d.positive(), "fix1 needs a positive double-cycle");
  require_conjunctive(d, "fix1");
  VmState& s = b.state();
  if (!s.at(Side::Left, 0)) {
    const auto i = first_position(s, Side::Left, true);
    if (!i) {
      throw InapplicableBuiltin(
          "fix1: the left cycle has no automaton at 1 for i <- min{k | x^l_k = 1}",
          true);
    }
    b.emit(Instruction::inc_up(Side::Left, *i + 1, d.l - 1));
    const auto j = first_position(s, Side::Right, true);
    if (!j) {
      throw InapplicableBuiltin(
          "fix1: the right cycle has no automaton at 1 for j <- min{k | x^r_k = 1}",
          true);
    }
    b.emit(Instruction::inc_up(Side::Right, *j + 1, d.r - 1));
    b.emit(Instruction::sync());
  }
  b.emit(Instruction::erase(Side::Left));
  b.emit(Instruction::erase(Side::Right));
}

void simp(Builder& b) {
  const auto& d = b.desc();
  require(d.mixed() || d.negative(),
          "simp needs a mixed or negative double-cycle");
  require_conjunctive(d, "simp");
  if (b.state().at(Side::Left, 0)) {
    b.emit(Instruction::erase(Side::Left));
    b.emit(Instruction::sync());
  }
  b.emit(Instruction::erase(Side::Left));
  b.emit(Instruction::erase(Side::Right));
}

void require_even_negative(const DoubleCycleDescriptor& d,
                           const std::string& name) {
  require(d.negative() && d.l % 2 == 0 && d.r % 2 == 0,
          name + " needs an even negative double-cycle");
  require_conjunctive(d, name);
}

void comp1(Builder& b) {
  require_even_negative(b.desc(), "comp1");
  for (int i = 1; i <= b.desc().l - 1; ++i) {
    b.emit(Instruction::sync());
    b.emit(Instruction::expand(Side::Left));
    b.emit(Instruction::erase(Side::Right));
  }
}

void comp2(Builder& b) {
  require_even_negative(b.desc(), "comp2");
  const VmState& s = b.state();
  if (s.word(Side::Right) == std::string(static_cast<std::size_t>(b.desc().r), '1')) {
    b.emit(Instruction::sync());
    b.emit(Instruction::erase(Side::Right));
  }
  b.emit(Instruction::sync());
  b.emit(Instruction::expand(Side::Right));
  for (int i = 1; i <= b.desc().r - 2; ++i) {
    b.emit(Instruction::shift(Side::Left));
    b.emit(Instruction::sync());
    b.emit(Instruction::expand(Side::Right));
  }
}

void copy_c(Builder& b, std::uint64_t target, Side m) {
  const auto& d = b.desc();
  const VmState& s = b.state();
  const int eta = d.cycle_size(m);
  auto goal = [&](int k) {
    return static_cast<bool>((target >> global_index(d, m, k)) & 1U);
  };
  int j = eta;
  if (eta >= 2 && s.at(m, eta - 1) == s.at(m, eta - 2) &&
      s.at(m, eta - 1) != goal(eta - 1)) {
    int found = -1;
    for (int k = 0; k < eta - 1; ++k) {
      if (s.at(m, k) != goal(k)) found = k;
    }
    if (found < 0) {
      throw InapplicableBuiltin(
          std::string("copy_c: no k < eta-1 with x_k != x'_k on the ") +
              side_name(m) + " cycle",
          true);
    }
    j = found;
  }
  for (int k = eta - 1; k >= j + 1; --k) {
    if (k - 1 == 0) {
      throw InapplicableBuiltin(
          std::string("copy_c: update of c^m_0 requested on the ") +
              side_name(m) + " cycle",
          true);
    }
    b.emit(Instruction::update(m, k - 1));
    b.emit(Instruction::update(m, k));
  }
  for (int k = j - 1; k >= 1; --k) {
    if (s.at(m, k) != goal(k)) b.emit(Instruction::update(m, k));
  }
}

void note_hypotheses(Builder& b, std::uint64_t target) {
  for (Side m : {Side::Left, Side::Right}) {
    const auto h = copy_hypothesis(b.desc(), b.state().x(), target, m);
    b.note(std::string("copy hypothesis on the ") + side_name(m) +
           " cycle: " + to_string(h));
  }
}

void require_copy_hypotheses(Builder& b, std::uint64_t target,
                             const std::vector<Side>& sides) {
  const VmState& s = b.state();
  require(!(((s.x() ^ target) & 1U) != 0), "copy requires x_0 = x'_0");
  for (Side m : sides) {
    const auto h = copy_hypothesis(b.desc(), s.x(), target, m);
    require(h != Lemma1Hypothesis::None,
            std::string("no copy hypothesis holds on the ") + side_name(m) +
                " cycle");
  }
  note_hypotheses(b, target);
}

}  // namespace

Program compile_builtin(const std::string& name, const DoubleCycleDescriptor& d,
                        std::uint64_t start, std::optional<std::uint64_t> target,
                        Side side) {
  validate(d);
  Builder b(name, d, start, target);
  const bool copy_family = name == "copy_c" || name == "copy" || name == "copy_p";
  if (copy_family) {
    require(target.has_value(), name + " needs a target configuration");
    require((*target & ~full_set(d.size())) == 0,
            "target wider than the double-cycle");
  }
  if (name == "fix0") {
    fix0(b);
  } else if (name == "fix1") {
    fix1(b);
  } else if (name == "simp") {
    simp(b);
  } else if (name == "comp1") {
    comp1(b);
  } else if (name == "comp2") {
    comp2(b);
  } else if (name == "comp") {
    comp1(b);
    comp2(b);
  } else if (name == "copy_c") {
    require_copy_hypotheses(b, *target, {side});
    copy_c(b, *target, side);
  } else if (name == "copy") {
    require_copy_hypotheses(b, *target, {Side::Left, Side::Right});
    copy_c(b, *target, Side::Left);
    copy_c(b, *target, Side::Right);
  } else if (name == "copy_p") {
    if (((b.state().x() ^ *target) & 1U) != 0) {
      b.emit(Instruction::shift(Side::Left));
      b.emit(Instruction::shift(Side::Right));
      b.emit(Instruction::sync());
    }
    note_hypotheses(b, *target);
    copy_c(b, *target, Side::Left);
    copy_c(b, *target, Side::Right);
  } else {
    throw InapplicableBuiltin("unknown builtin '" + name + "'");
  }
  return b.finish();
}

VmState run(VmState state, const std::vector<Instruction>& program) {
  for (const auto& instr : program) exec(state, instr);
  return state;
}

VmState run(const Program& program, bool record) {
  VmState s(program.descriptor, program.start);
  s.set_recording(record);
  return run(std::move(s), program.instructions);
}

std::optional<std::int64_t> step_bound(const std::string& name,
                                       const DoubleCycleDescriptor& d) {
  const std::int64_t l = d.l;
  const std::int64_t r = d.r;
  if (name == "fix0" || name == "fix1") return 2 * (l + r) - 5;
  if (name == "simp") return 2 * l + r - 2;
  if (name == "comp1") return (l - 1) * (l + r - 2);
  if (name == "comp2") return (r - 2) * (l + r - 2) + (2 * r - 1);
  if (name == "comp") return (l + r) * (l + r) - 5 * (l - 1) - 3 * r;
  if (name == "copy_p") return 3 * (l + r - 4) - 1;
  if (name == "copy") return 2 * (l + r - 6);
  return std::nullopt;
}

std::uint64_t from_words(const DoubleCycleDescriptor& d, const std::string& wl,
                         const std::string& wr) {
  if (static_cast<int>(wl.size()) != d.l || static_cast<int>(wr.size()) != d.r ||
      wl[0] != wr[0]) {
    throw Error("cycle words '" + wl + "', '" + wr +
                "' do not fit the double-cycle");
  }
  std::uint64_t x = 0;
  for (Side side : {Side::Left, Side::Right}) {
    const std::string& w = side == Side::Left ? wl : wr;
    for (int k = 0; k < d.cycle_size(side); ++k) {
      if (w[static_cast<std::size_t>(k)] == '1') x |= singleton(global_index(d, side, k));
    }
  }
  return x;
}

namespace {

std::string alternating_word(int size) {
  std::string w;
  for (int k = 0; k < size; ++k) w += k % 2 == 0 ? '1' : '0';
  return w;
}

}  // namespace

std::uint64_t alternating_state(const DoubleCycleDescriptor& d) {
  return from_words(d, alternating_word(d.l), alternating_word(d.r));
}

// -------------------------------------------------------------- verifier

const char* to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::Pass:
      return "pass";
    case RecordStatus::Fail:
      return "fail";
    case RecordStatus::PaperDiscrepancy:
      return "paper-discrepancy";
    case RecordStatus::Excluded:
      return "excluded";
  }
  return "?";
}

std::size_t SequenceReport::count(RecordStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(),
      [s](const SequenceRecord& r) { return r.status == s; }));
}

std::size_t SequenceReport::count(const std::string& builtin,
                                  RecordStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [&](const SequenceRecord& r) {
        return r.builtin == builtin && r.status == s;
      }));
}

namespace {

class Verifier {
 public:
  Verifier(const DoubleCycleDescriptor& d, const Caps& caps, SequenceReport& report)
      : d_(d),
        async_(canonical_double_cycle(d), UpdateMode::asynchronous(), caps),
        report_(report) {}

  // Runs a builtin and appends its record. Returns the final state when the
  // program could be generated.
  std::optional<std::uint64_t> check(const std::string& name, std::uint64_t start,
                                     std::optional<std::uint64_t> target,
                                     std::uint64_t expected) {
    SequenceRecord rec;
    rec.builtin = name;
    rec.start = start;
    rec.target = target;
    rec.expected = expected;
    rec.bound = step_bound(name, d_);
    Program p;
    try {
      p = compile_builtin(name, d_, start, target);
    } catch (const InapplicableBuiltin& e) {
      rec.status = e.presupposition() ? RecordStatus::PaperDiscrepancy
                                      : RecordStatus::Fail;
      rec.note = e.what();
      report_.records.push_back(std::move(rec));
      return std::nullopt;
    }
    const VmState replayed = run(p, true);
    check_transitions(replayed);
    rec.final_state = p.final_state;
    rec.steps = p.steps;
    if (replayed.x() != p.final_state || replayed.steps() != p.steps) {
      rec.status = RecordStatus::Fail;
      rec.note = "replay diverged from generation";
    } else if (p.final_state != expected) {
      rec.status = RecordStatus::Fail;
      rec.note = "final configuration differs from the stated one";
    } else if (rec.bound && static_cast<std::int64_t>(p.steps) > *rec.bound) {
      rec.status = RecordStatus::Fail;
      rec.note = "update count exceeds the stated bound";
    }
    auto& worst = worst_[name];
    worst = std::max(worst, p.steps);
    report_.records.push_back(std::move(rec));
    return p.final_state;
  }

  void exclude(const std::string& name, std::uint64_t start, const std::string& why) {
    SequenceRecord rec;
    rec.builtin = name;
    rec.start = start;
    rec.status = RecordStatus::Excluded;
    rec.note = why;
    report_.records.push_back(std::move(rec));
  }

  bool stable(std::uint64_t x) const { return async_.is_stable(x); }

  void finish() {
    for (const auto& [name, steps] : worst_) report_.worst_steps.emplace_back(name, steps);
  }

 private:
  void check_transitions(const VmState& s) {
    for (const UpdateStep& u : s.log()) {
      const AutomatonSet w = singleton(u.automaton);
      const std::uint64_t expected = (u.pre & ~w) | (async_.successor(u.pre) & w);
      if (u.post != expected) report_.transitions_legal = false;
    }
  }

  DoubleCycleDescriptor d_;
  TransitionGraph async_;
  SequenceReport& report_;
  std::map<std::string, std::uint64_t> worst_;
};

constexpr int kCopyPairCap = 10;

}  // namespace

SequenceReport verify_sequence_theorems(const DoubleCycleDescriptor& given,
                                        const Caps& caps) {
  validate(given);
  SequenceReport report;
  report.descriptor = given;
  DoubleCycleDescriptor d = given;
  if (d.junction == Junction::Or) {
    d.junction = Junction::And;
    const auto dual = check_and_or_duality(d.l, d.r, d.left, d.right,
                                           UpdateMode::asynchronous(), caps);
    report.notes.push_back(
        "checked on the conjunctive dual; complement map is an asynchronous "
        "isomorphism: " + std::string(dual.isomorphic ? "yes" : "no"));
    if (!dual.isomorphic) report.transitions_legal = false;
  }
  const int n = d.size();
  if (n > caps.asynchronous) throw CapExceeded("sequence verification", n, caps.asynchronous);
  const std::uint64_t count = std::uint64_t{1} << n;
  const std::uint64_t zeros = 0;
  const std::uint64_t ones = full_set(n);
  Verifier v(d, caps, report);

  if (d.positive()) {
    for (std::uint64_t x = 0; x < count; ++x) {
      if (x == ones) continue;  // no automaton at 0
      if (v.stable(x)) {
        v.exclude("fix0", x, "stable start");
      } else {
        v.check("fix0", x, std::nullopt, zeros);
      }
    }
    for (std::uint64_t x = 0; x < count; ++x) {
      const VmState s(d, x);
      if (s.word(Side::Left).find('1') == std::string::npos ||
          s.word(Side::Right).find('1') == std::string::npos) {
        continue;
      }
      if (v.stable(x)) {
        v.exclude("fix1", x, "stable start");
      } else {
        v.check("fix1", x, std::nullopt, ones);
      }
    }
  }
  if (d.mixed() || d.negative()) {
    for (std::uint64_t x = 0; x < count; ++x) v.check("simp", x, std::nullopt, zeros);
  }
  if (d.negative() && d.l % 2 == 0 && d.r % 2 == 0) {
    const std::uint64_t alt = alternating_state(d);
    const std::uint64_t half =
        from_words(d, alternating_word(d.l), std::string(static_cast<std::size_t>(d.r), '1'));
    v.check("comp1", zeros, std::nullopt, half);
    v.check("comp2", half, std::nullopt, alt);
    v.check("comp", zeros, std::nullopt, alt);
    std::vector<bool> reached(count, false);
    for (std::uint64_t t = 0; t < count; ++t) {
      const auto out = v.check("copy_p", alt, t, t);
      reached[t] = out && *out == t;
    }
    // Closure: every start reaches alt through simp then comp, from which
    // every target was reached above.
    report.closure_checked = true;
    for (std::uint64_t x = 0; x < count && report.closure_holds; ++x) {
      const Program s = compile_builtin("simp", d, x);
      const Program c = compile_builtin("comp", d, s.final_state);
      if (c.final_state != alt) report.closure_holds = false;
    }
    for (std::uint64_t t = 0; t < count; ++t) {
      if (!reached[t]) report.closure_holds = false;
    }
  }
  if (n <= kCopyPairCap) {
    for (std::uint64_t x = 0; x < count; ++x) {
      for (std::uint64_t t = 0; t < count; ++t) {
        if (((x ^ t) & 1U) != 0) continue;
        if (copy_hypothesis(d, x, t, Side::Left) == Lemma1Hypothesis::None ||
            copy_hypothesis(d, x, t, Side::Right) == Lemma1Hypothesis::None) {
          continue;
        }
        v.check("copy", x, t, t);
      }
    }
  } else {
    report.notes.push_back("copy pairs skipped above width " +
                           std::to_string(kCopyPairCap));
  }
  v.finish();
  return report;
}

// ----------------------------------------------------------------- trace

namespace {

Instruction::Op op_from_name(const std::string& name) {
  using Op = Instruction::Op;
  static const std::map<std::string, Op> ops = {
      {"sync", Op::Sync},   {"update", Op::Update}, {"incUp", Op::IncUp},
      {"erase", Op::Erase}, {"expand", Op::Expand}, {"decUp", Op::DecUp},
      {"shift", Op::Shift}};
  const auto it = ops.find(name);
  if (it == ops.end()) throw Error("unknown instruction '" + name + "'");
  return it->second;
}

}  // namespace

std::string trace_jsonl(const Program& program) {
  std::ostringstream out;
  VmState s(program.descriptor, program.start);
  const int n = s.width();
  for (const Instruction& instr : program.instructions) {
    const std::uint64_t pre = s.x();
    exec(s, instr);
    nlohmann::ordered_json rec;
    rec["instr"] = instr.name();
    rec["cycle"] = instr.op == Instruction::Op::Sync
                       ? nlohmann::ordered_json(nullptr)
                       : nlohmann::ordered_json(side_name(instr.cycle));
    rec["indices"] = nlohmann::ordered_json::array({instr.i, instr.j});
    if (instr.empty_expand) rec["empty_expand"] = true;
    rec["pre"] = state_string(pre, n);
    rec["post"] = state_string(s.x(), n);
    rec["steps_so_far"] = s.steps();
    rec["expressiveness"] = expressiveness(s);
    out << rec.dump() << '\n';
  }
  return out.str();
}

ReplayResult replay_trace(const DoubleCycleDescriptor& d, const std::string& jsonl) {
  ReplayResult result;
  std::istringstream in(jsonl);
  std::string line;
  std::optional<VmState> s;
  int line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto rec = nlohmann::json::parse(line);
      if (rec.contains("manifest")) continue;
      const std::uint64_t pre = Configuration::parse(rec.at("pre").get<std::string>()).bits();
      if (!s) s.emplace(d, pre);
      if (s->x() != pre) throw Error("pre configuration does not match");
      Instruction instr;
      instr.op = op_from_name(rec.at("instr").get<std::string>());
      if (!rec.at("cycle").is_null()) {
        const auto c = rec.at("cycle").get<std::string>();
        if (c != "left" && c != "right") throw Error("unknown cycle '" + c + "'");
        instr.cycle = c == "left" ? Side::Left : Side::Right;
      }
      instr.i = rec.at("indices").at(0).get<int>();
      instr.j = rec.at("indices").at(1).get<int>();
      instr.empty_expand = rec.value("empty_expand", false);
      if (instr.op == Instruction::Op::Expand) {
        const Instruction fresh = resolve(*s, Instruction::expand(instr.cycle));
        if (fresh.j != instr.j || fresh.empty_expand != instr.empty_expand) {
          throw Error("expand bound does not match the configuration");
        }
      }
      exec(*s, instr);
      if (state_string(s->x(), s->width()) != rec.at("post").get<std::string>()) {
        throw Error("post configuration does not match");
      }
      if (s->steps() != rec.at("steps_so_far").get<std::uint64_t>()) {
        throw Error("step count does not match");
      }
      if (expressiveness(*s) != rec.at("expressiveness").get<int>()) {
        throw Error("expressiveness does not match");
      }
      ++result.records;
    }
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = "line " + std::to_string(line_no) + ": " + e.what();
  }
  if (s) result.final_state = s->x();
  return result;
}

}  // namespace ban
