#pragma once

// Boolean automata networks: configurations, local transition functions,
// single-step updates and the signed interaction graph.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ban {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured state-space cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string what, int n, int cap)
      : Error(what + ": n=" + std::to_string(n) + " exceeds cap " +
              std::to_string(cap)),
        n_(n),
        cap_(cap) {}
  int n() const { return n_; }
  int cap() const { return cap_; }

 private:
  int n_;
  int cap_;
};

/// Input text could not be parsed. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A pair (i, j) realises both an activating and an inhibiting interaction.
class NonSimpleInteraction : public Error {
 public:
  NonSimpleInteraction(int source, int target)
      : Error("interaction " + std::to_string(source) + "->" +
              std::to_string(target) + " is both activating and inhibiting"),
        source_(source),
        target_(target) {}
  int source() const { return source_; }
  int target() const { return target_; }

 private:
  int source_;
  int target_;
};

/// Largest supported network width. Configurations are packed into 64 bits.
inline constexpr int kMaxWidth = 63;

/// Set of automata, bit i standing for automaton i.
using AutomatonSet = std::uint64_t;

inline constexpr AutomatonSet singleton(int i) { return AutomatonSet{1} << i; }
inline constexpr AutomatonSet full_set(int n) {
  return n >= 64 ? ~AutomatonSet{0} : (AutomatonSet{1} << n) - 1;
}

/// A vertex of the n-cube. Bit i of `bits()` is the state of automaton i;
/// the text form lists automaton 0 first.
class Configuration {
 public:
  Configuration() = default;
  Configuration(int width, std::uint64_t bits);

  static Configuration zeros(int width) { return {width, 0}; }
  static Configuration ones(int width) { return {width, full_set(width)}; }
  /// Parses a word such as "011" (automaton 0 leftmost).
  static Configuration parse(std::string_view word);

  int width() const { return width_; }
  std::uint64_t bits() const { return bits_; }
  bool operator[](int i) const { return (bits_ >> i) & 1U; }

  Configuration with(int i, bool value) const;
  /// Flips every automaton of `w`; an involution.
  Configuration flipped(AutomatonSet w) const { return {width_, bits_ ^ w}; }
  Configuration complement() const { return flipped(full_set(width_)); }

  std::string to_string() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int width_ = 0;
  std::uint64_t bits_ = 0;
};

/// Text form of a packed state of width n (automaton 0 first).
std::string state_string(std::uint64_t bits, int n);

/// Expression tree over automaton variables, negation, conjunction and
/// disjunction. Used for human-authored local functions.
class Expr {
 public:
  enum class Kind { Const, Var, Not, And, Or };

  static Expr constant(bool value);
  static Expr var(int index);
  static Expr negate(Expr operand);
  static Expr conj(Expr lhs, Expr rhs);
  static Expr disj(Expr lhs, Expr rhs);

  /// Grammar: or := and ("or" and)*; and := unary ("and" unary)*;
  /// unary := "not" unary | atom; atom := x<i> | 0 | 1 | "(" or ")".
  static Expr parse(std::string_view text, int line = 1);

  Kind kind() const { return kind_; }
  bool value() const { return value_; }
  int index() const { return index_; }
  const Expr& lhs() const { return *children_.at(0); }
  const Expr& rhs() const { return *children_.at(1); }

  bool eval(std::uint64_t state) const;
  /// Sorted, deduplicated variable indices.
  std::vector<int> variables() const;
  std::string to_string() const;

 private:
  Kind kind_ = Kind::Const;
  bool value_ = false;
  int index_ = 0;
  std::vector<std::shared_ptr<const Expr>> children_;
};

/// A local transition function, stored as a truth table over its declared
/// support. Entry k of the table is the output when support[b] has state
/// bit b of k.
class LocalFunction {
 public:
  /// Largest support for which a truth table is stored.
  static constexpr int kMaxArity = 20;

  LocalFunction() = default;
  LocalFunction(std::vector<int> support, std::vector<bool> table);
  static LocalFunction compile(const Expr& expr);
  static LocalFunction constant(bool value);

  const std::vector<int>& support() const { return support_; }
  int arity() const { return static_cast<int>(support_.size()); }
  const std::vector<bool>& table() const { return table_; }
  const std::optional<Expr>& expression() const { return expr_; }

  bool eval(std::uint64_t state) const {
    std::uint32_t key = 0;
    for (std::size_t b = 0; b < support_.size(); ++b) {
      key |= static_cast<std::uint32_t>((state >> support_[b]) & 1U) << b;
    }
    return table_[key];
  }

  /// The expression text if one was given, otherwise a sum of minterms.
  std::string to_string() const;

 private:
  std::vector<int> support_;
  std::vector<bool> table_;
  std::optional<Expr> expr_;
};

/// An ordered set of n local transition functions over n Boolean automata.
class BooleanNetwork {
 public:
  BooleanNetwork() = default;
  explicit BooleanNetwork(std::vector<LocalFunction> locals);
  static BooleanNetwork from_expressions(const std::vector<Expr>& exprs);

  int size() const { return static_cast<int>(locals_.size()); }
  const LocalFunction& local(int i) const { return locals_.at(i); }
  const std::vector<LocalFunction>& locals() const { return locals_; }

  /// f_i(x).
  bool eval_local(int i, const Configuration& x) const;
  /// F_W(x): automata in W take f_i(x), the others keep x_i. W must be
  /// nonempty.
  Configuration apply_update(AutomatonSet w, const Configuration& x) const;
  /// F_V(x) on packed states, without validation.
  std::uint64_t parallel_image(std::uint64_t state) const;

 private:
  void check_width(const Configuration& x) const;

  std::vector<LocalFunction> locals_;
};

/// s(b) = b - (not b).
inline constexpr int bit_sign(bool b) { return b ? 1 : -1; }

/// sign_x(i, j) = s(x_i) * (f_j(x) - f_j(x with i flipped)), in {-1, 0, +1}.
int interaction_sign(const BooleanNetwork& net, const Configuration& x, int i,
                     int j);

struct SignedArc {
  int source;
  int target;
  int sign;

  friend bool operator==(const SignedArc&, const SignedArc&) = default;
  friend auto operator<=>(const SignedArc&, const SignedArc&) = default;
};

/// Simple signed digraph on vertices 0..n-1, at most one arc per ordered pair.
class SignedDigraph {
 public:
  SignedDigraph() = default;
  SignedDigraph(int n, std::vector<SignedArc> arcs);

  int size() const { return n_; }
  /// Arcs sorted by (source, target).
  const std::vector<SignedArc>& arcs() const { return arcs_; }
  /// 0 when there is no arc i -> j.
  int sign(int source, int target) const;
  int in_degree(int target) const;

  /// True when there is no cycle, self-loops included.
  bool is_acyclic() const;
  /// Signs of all elementary cycles (product of arc signs), each listed as
  /// the vertex sequence starting from its smallest vertex.
  std::vector<std::pair<std::vector<int>, int>> elementary_cycles(
      std::size_t limit = 1'000'000) const;
  bool has_cycle_of_sign(int sign) const;

 private:
  int n_ = 0;
  std::vector<SignedArc> arcs_;
  std::vector<std::vector<std::pair<int, int>>> out_;
};

inline constexpr int kDefaultInteractionCap = 20;

/// The union over all configurations of the effective signed interactions.
SignedDigraph interaction_graph(const BooleanNetwork& net,
                                int cap = kDefaultInteractionCap);

}  // namespace ban
