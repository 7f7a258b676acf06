#include "ban/core.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace ban {

Configuration::Configuration(int width, std::uint64_t bits)
    : width_(width), bits_(bits) {
  if (width < 0 || width > kMaxWidth) {
    throw Error("configuration width " + std::to_string(width) +
                " out of range");
  }
  if ((bits & ~full_set(width)) != 0) {
    throw Error("configuration bits exceed width " + std::to_string(width));
  }
}

Configuration Configuration::parse(std::string_view word) {
  if (word.size() > static_cast<std::size_t>(kMaxWidth)) {
    throw ParseError("configuration too wide", 1, 1);
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == '1') {
      bits |= singleton(static_cast<int>(i));
    } else if (word[i] != '0') {
      throw ParseError(std::string("expected '0' or '1', got '") + word[i] +
                           "'",
                       1, static_cast<int>(i) + 1);
    }
  }
  return {static_cast<int>(word.size()), bits};
}

Configuration Configuration::with(int i, bool value) const {
  if (i < 0 || i >= width_) throw Error("automaton index out of range");
  return {width_, value ? (bits_ | singleton(i)) : (bits_ & ~singleton(i))};
}

std::string Configuration::to_string() const {
  return state_string(bits_, width_);
}

std::string state_string(std::uint64_t bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((bits >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

// ---------------------------------------------------------------- Expr

Expr Expr::constant(bool value) {
  Expr e;
  e.kind_ = Kind::Const;
  e.value_ = value;
  return e;
}

Expr Expr::var(int index) {
  if (index < 0 || index >= kMaxWidth) {
    throw Error("variable index " + std::to_string(index) + " out of range");
  }
  Expr e;
  e.kind_ = Kind::Var;
  e.index_ = index;
  return e;
}

Expr Expr::negate(Expr operand) {
  Expr e;
  e.kind_ = Kind::Not;
  e.children_.push_back(std::make_shared<const Expr>(std::move(operand)));
  return e;
}

Expr Expr::conj(Expr lhs, Expr rhs) {
  Expr e;
  e.kind_ = Kind::And;
  e.children_.push_back(std::make_shared<const Expr>(std::move(lhs)));
  e.children_.push_back(std::make_shared<const Expr>(std::move(rhs)));
  return e;
}

Expr Expr::disj(Expr lhs, Expr rhs) {
  Expr e;
  e.kind_ = Kind::Or;
  e.children_.push_back(std::make_shared<const Expr>(std::move(lhs)));
  e.children_.push_back(std::make_shared<const Expr>(std::move(rhs)));
  return e;
}

namespace {

struct Token {
  enum class Type { Var, Const, Not, And, Or, LParen, RParen, End };
  Type type;
  int value = 0;
  int column = 0;
};

std::vector<Token> tokenize(std::string_view text, int line) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    const int column = static_cast<int>(pos) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else if (c == '(') {
      tokens.push_back({Token::Type::LParen, 0, column});
      ++pos;
    } else if (c == ')') {
      tokens.push_back({Token::Type::RParen, 0, column});
      ++pos;
    } else if (c == '0' || c == '1') {
      tokens.push_back({Token::Type::Const, c - '0', column});
      ++pos;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos;
      while (end < text.size() &&
             std::isalnum(static_cast<unsigned char>(text[end]))) {
        ++end;
      }
      const std::string_view word = text.substr(pos, end - pos);
      if (word == "not") {
        tokens.push_back({Token::Type::Not, 0, column});
      } else if (word == "and") {
        tokens.push_back({Token::Type::And, 0, column});
      } else if (word == "or") {
        tokens.push_back({Token::Type::Or, 0, column});
      } else if (word.size() > 1 && word[0] == 'x' &&
                 std::all_of(word.begin() + 1, word.end(), [](char d) {
                   return std::isdigit(static_cast<unsigned char>(d));
                 })) {
        if (word.size() > 4) throw ParseError("variable index too large", line, column);
        tokens.push_back(
            {Token::Type::Var, std::stoi(std::string(word.substr(1))), column});
      } else {
        throw ParseError("unknown token '" + std::string(word) + "'", line,
                         column);
      }
      pos = end;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       column);
    }
  }
  tokens.push_back({Token::Type::End, 0, static_cast<int>(text.size()) + 1});
  return tokens;
}

class ExprParser {
 public:
  ExprParser(std::vector<Token> tokens, int line)
      : tokens_(std::move(tokens)), line_(line) {}

  Expr parse() {
    Expr e = parse_or();
    if (peek().type != Token::Type::End) fail("trailing input");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, peek().column);
  }

  Expr parse_or() {
    Expr e = parse_and();
    while (peek().type == Token::Type::Or) {
      ++pos_;
      e = Expr::disj(std::move(e), parse_and());
    }
    return e;
  }

  Expr parse_and() {
    Expr e = parse_unary();
    while (peek().type == Token::Type::And) {
      ++pos_;
      e = Expr::conj(std::move(e), parse_unary());
    }
    return e;
  }

  Expr parse_unary() {
    if (peek().type == Token::Type::Not) {
      ++pos_;
      return Expr::negate(parse_unary());
    }
    return parse_atom();
  }

  Expr parse_atom() {
    const Token t = peek();
    switch (t.type) {
      case Token::Type::Var:
        ++pos_;
        if (t.value >= kMaxWidth) fail("variable index out of range");
        return Expr::var(t.value);
      case Token::Type::Const:
        ++pos_;
        return Expr::constant(t.value != 0);
      case Token::Type::LParen: {
        ++pos_;
        Expr e = parse_or();
        if (peek().type != Token::Type::RParen) fail("expected ')'");
        ++pos_;
        return e;
      }
      default:
        fail("expected a variable, constant or '('");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace

Expr Expr::parse(std::string_view text, int line) {
  return ExprParser(tokenize(text, line), line).parse();
}

bool Expr::eval(std::uint64_t state) const {
  switch (kind_) {
    case Kind::Const:
      return value_;
    case Kind::Var:
      return (state >> index_) & 1U;
    case Kind::Not:
      return !lhs().eval(state);
    case Kind::And:
      return lhs().eval(state) && rhs().eval(state);
    case Kind::Or:
      return lhs().eval(state) || rhs().eval(state);
  }
  return false;
}

std::vector<int> Expr::variables() const {
  std::vector<int> out;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (e.kind_ == Kind::Var) out.push_back(e.index_);
    for (const auto& c : e.children_) walk(*c);
  };
  walk(*this);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Expr::to_string() const {
  switch (kind_) {
    case Kind::Const:
      return value_ ? "1" : "0";
    case Kind::Var:
      return "x" + std::to_string(index_);
    case Kind::Not: {
      const bool wrap = lhs().kind() == Kind::And || lhs().kind() == Kind::Or;
      return wrap ? "not (" + lhs().to_string() + ")"
                  : "not " + lhs().to_string();
    }
    case Kind::And: {
      auto side = [](const Expr& e) {
        return e.kind() == Kind::Or ? "(" + e.to_string() + ")"
                                    : e.to_string();
      };
      return side(lhs()) + " and " + side(rhs());
    }
    case Kind::Or:
      return lhs().to_string() + " or " + rhs().to_string();
  }
  return {};
}

// ------------------------------------------------------- LocalFunction

LocalFunction::LocalFunction(std::vector<int> support, std::vector<bool> table)
    : support_(std::move(support)), table_(std::move(table)) {
  if (support_.size() > static_cast<std::size_t>(kMaxArity)) {
    throw Error("local function arity exceeds " + std::to_string(kMaxArity));
  }
  for (std::size_t a = 0; a < support_.size(); ++a) {
    if (support_[a] < 0 || support_[a] >= kMaxWidth) {
      throw Error("support variable out of range");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (support_[a] == support_[b]) throw Error("duplicate support variable");
    }
  }
  if (table_.size() != (std::size_t{1} << support_.size())) {
    throw Error("truth table size does not match support");
  }
}

LocalFunction LocalFunction::compile(const Expr& expr) {
  std::vector<int> support = expr.variables();
  std::vector<bool> table(std::size_t{1} << support.size());
  for (std::size_t key = 0; key < table.size(); ++key) {
    std::uint64_t state = 0;
    for (std::size_t b = 0; b < support.size(); ++b) {
      if ((key >> b) & 1U) state |= singleton(support[b]);
    }
    table[key] = expr.eval(state);
  }
  LocalFunction f(std::move(support), std::move(table));
  f.expr_ = expr;
  return f;
}

LocalFunction LocalFunction::constant(bool value) {
  return compile(Expr::constant(value));
}

std::string LocalFunction::to_string() const {
  if (expr_) return expr_->to_string();
  std::string out;
  for (std::size_t key = 0; key < table_.size(); ++key) {
    if (!table_[key]) continue;
    std::string term;
    for (std::size_t b = 0; b < support_.size(); ++b) {
      if (!term.empty()) term += " and ";
      if (!((key >> b) & 1U)) term += "not ";
      term += "x" + std::to_string(support_[b]);
    }
    if (term.empty()) term = "1";
    if (!out.empty()) out += " or ";
    out += support_.size() > 1 && table_.size() > 2 ? "(" + term + ")" : term;
  }
  return out.empty() ? "0" : out;
}

// ------------------------------------------------------ BooleanNetwork

BooleanNetwork::BooleanNetwork(std::vector<LocalFunction> locals)
    : locals_(std::move(locals)) {
  if (locals_.size() > static_cast<std::size_t>(kMaxWidth)) {
    throw Error("network too large");
  }
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int v : locals_[i].support()) {
      if (v >= n) {
        throw Error("local function " + std::to_string(i) +
                    " references x" + std::to_string(v) +
                    " outside a network of size " + std::to_string(n));
      }
    }
  }
}

BooleanNetwork BooleanNetwork::from_expressions(
    const std::vector<Expr>& exprs) {
  std::vector<LocalFunction> locals;
  locals.reserve(exprs.size());
  for (const Expr& e : exprs) locals.push_back(LocalFunction::compile(e));
  return BooleanNetwork(std::move(locals));
}

void BooleanNetwork::check_width(const Configuration& x) const {
  if (x.width() != size()) {
    throw Error("configuration width " + std::to_string(x.width()) +
                " does not match network size " + std::to_string(size()));
  }
}

bool BooleanNetwork::eval_local(int i, const Configuration& x) const {
  if (i < 0 || i >= size()) {
    throw Error("automaton index " + std::to_string(i) + " out of range");
  }
  check_width(x);
  return locals_[static_cast<std::size_t>(i)].eval(x.bits());
}

Configuration BooleanNetwork::apply_update(AutomatonSet w,
                                           const Configuration& x) const {
  check_width(x);
  if (w == 0) throw Error("update set must be nonempty");
  if ((w & ~full_set(size())) != 0) {
    throw Error("update set references automata outside the network");
  }
  const std::uint64_t image = parallel_image(x.bits());
  return {size(), (x.bits() & ~w) | (image & w)};
}

std::uint64_t BooleanNetwork::parallel_image(std::uint64_t state) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < locals_.size(); ++i) {
    if (locals_[i].eval(state)) out |= singleton(static_cast<int>(i));
  }
  return out;
}

// --------------------------------------------------- interaction graph

int interaction_sign(const BooleanNetwork& net, const Configuration& x, int i,
                     int j) {
  const int n = net.size();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw Error("automaton index out of range");
  }
  const int here = net.eval_local(j, x) ? 1 : 0;
  const int there = net.eval_local(j, x.flipped(singleton(i))) ? 1 : 0;
  return bit_sign(x[i]) * (here - there);
}

SignedDigraph::SignedDigraph(int n, std::vector<SignedArc> arcs)
    : n_(n), arcs_(std::move(arcs)), out_(static_cast<std::size_t>(n)) {
  std::sort(arcs_.begin(), arcs_.end());
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    const SignedArc& a = arcs_[k];
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n) {
      throw Error("arc endpoint out of range");
    }
    if (a.sign != 1 && a.sign != -1) throw Error("arc sign must be +1 or -1");
    if (k > 0 && arcs_[k - 1].source == a.source &&
        arcs_[k - 1].target == a.target) {
      throw NonSimpleInteraction(a.source, a.target);
    }
    out_[static_cast<std::size_t>(a.source)].emplace_back(a.target, a.sign);
  }
}

int SignedDigraph::sign(int source, int target) const {
  for (const auto& [t, s] : out_.at(static_cast<std::size_t>(source))) {
    if (t == target) return s;
  }
  return 0;
}

int SignedDigraph::in_degree(int target) const {
  return static_cast<int>(std::count_if(
      arcs_.begin(), arcs_.end(),
      [target](const SignedArc& a) { return a.target == target; }));
}

bool SignedDigraph::is_acyclic() const {
  std::vector<int> indeg(static_cast<std::size_t>(n_), 0);
  for (const auto& a : arcs_) ++indeg[static_cast<std::size_t>(a.target)];
  std::vector<int> ready;
  for (int v = 0; v < n_; ++v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  int removed = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++removed;
    for (const auto& [t, s] : out_[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(t)] == 0) ready.push_back(t);
    }
  }
  return removed == n_;
}

std::vector<std::pair<std::vector<int>, int>> SignedDigraph::elementary_cycles(
    std::size_t limit) const {
  // Each cycle is found once, from its smallest vertex, by a DFS restricted
  // to larger vertices.
  std::vector<std::pair<std::vector<int>, int>> cycles;
  std::vector<int> path;
  std::vector<bool> on_path(static_cast<std::size_t>(n_), false);
  std::function<void(int, int, int)> dfs = [&](int start, int v, int sign) {
    for (const auto& [t, s] : out_[static_cast<std::size_t>(v)]) {
      if (cycles.size() >= limit) return;
      if (t == start) {
        cycles.emplace_back(path, sign * s);
      } else if (t > start && !on_path[static_cast<std::size_t>(t)]) {
        on_path[static_cast<std::size_t>(t)] = true;
        path.push_back(t);
        dfs(start, t, sign * s);
        path.pop_back();
        on_path[static_cast<std::size_t>(t)] = false;
      }
    }
  };
  for (int start = 0; start < n_; ++start) {
    path.assign(1, start);
    on_path[static_cast<std::size_t>(start)] = true;
    dfs(start, start, 1);
    on_path[static_cast<std::size_t>(start)] = false;
  }
  if (cycles.size() >= limit) throw Error("elementary cycle limit reached");
  return cycles;
}

bool SignedDigraph::has_cycle_of_sign(int sign) const {
  for (const auto& [cycle, s] : elementary_cycles()) {
    if (s == sign) return true;
  }
  return false;
}

SignedDigraph interaction_graph(const BooleanNetwork& net, int cap) {
  const int n = net.size();
  if (n > cap) throw CapExceeded("interaction graph", n, cap);
  // observed[(i, j)] holds bit 0 for +1 and bit 1 for -1.
  std::map<std::pair<int, int>, unsigned> observed;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (int j = 0; j < n; ++j) {
    const LocalFunction& f = net.local(j);
    for (int i : f.support()) {
      unsigned seen = 0;
      for (std::uint64_t s = 0; s < count && seen != 3U; ++s) {
        const int diff = static_cast<int>(f.eval(s)) -
                         static_cast<int>(f.eval(s ^ singleton(i)));
        const int sign = bit_sign((s >> i) & 1U) * diff;
        if (sign > 0) seen |= 1U;
        if (sign < 0) seen |= 2U;
      }
      if (seen == 3U) throw NonSimpleInteraction(i, j);
      if (seen != 0) observed[{i, j}] = seen;
    }
  }
  std::vector<SignedArc> arcs;
  for (const auto& [key, seen] : observed) {
    arcs.push_back({key.first, key.second, seen == 1U ? 1 : -1});
  }
  return SignedDigraph(n, std::move(arcs));
}

}  // namespace ban
