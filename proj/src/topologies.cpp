#include "ban/topologies.hpp"

#include <charconv>
#include <numeric>

namespace ban {

std::uint64_t DoubleCycleDescriptor::delta() const {
  return std::gcd(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(r));
}

std::uint64_t DoubleCycleDescriptor::delta(std::uint64_t p) const {
  return std::gcd(delta(), p);
}

void validate(const CycleDescriptor& d) {
  if (d.n < 1) throw Error("cycle size must be at least 1");
  if (d.n > kMaxWidth) throw Error("cycle size too large");
}

void validate(const DoubleCycleDescriptor& d) {
  if (d.l < 1 || d.r < 1) throw Error("double-cycle sizes must be at least 1");
  if (d.size() > kMaxWidth) throw Error("double-cycle too large");
  if (d.left == Sign::Positive && d.right == Sign::Negative) {
    throw Error("sign pattern (+,-) is written (-,+): the left cycle carries "
                "the negation");
  }
}

int global_index(const DoubleCycleDescriptor& d, Side side, int k) {
  const int size = d.cycle_size(side);
  if (k < 0 || k >= size) {
    throw Error("cycle position " + std::to_string(k) + " out of range");
  }
  if (k == 0) return 0;
  return side == Side::Left ? k : d.l - 1 + k;
}

namespace {

Expr signed_var(int index, Sign sign) {
  Expr v = Expr::var(index);
  return sign == Sign::Negative ? Expr::negate(std::move(v)) : v;
}

Expr combine(Expr a, Expr b, Junction j) {
  return j == Junction::And ? Expr::conj(std::move(a), std::move(b))
                            : Expr::disj(std::move(a), std::move(b));
}

}  // namespace

BooleanNetwork canonical_cycle(const CycleDescriptor& d) {
  validate(d);
  std::vector<Expr> exprs;
  exprs.push_back(signed_var(d.n - 1, d.sign));
  for (int i = 1; i < d.n; ++i) exprs.push_back(Expr::var(i - 1));
  return BooleanNetwork::from_expressions(exprs);
}

BooleanNetwork canonical_double_cycle(const DoubleCycleDescriptor& d) {
  validate(d);
  std::vector<Expr> exprs(static_cast<std::size_t>(d.size()),
                          Expr::constant(false));
  exprs[0] = combine(signed_var(global_index(d, Side::Left, d.l - 1), d.left),
                     signed_var(global_index(d, Side::Right, d.r - 1), d.right),
                     d.junction);
  for (Side side : {Side::Left, Side::Right}) {
    for (int k = 1; k < d.cycle_size(side); ++k) {
      exprs[static_cast<std::size_t>(global_index(d, side, k))] =
          Expr::var(global_index(d, side, k - 1));
    }
  }
  return BooleanNetwork::from_expressions(exprs);
}

BooleanNetwork build_network(const Descriptor& d) {
  return std::visit(
      [](const auto& desc) {
        if constexpr (std::is_same_v<std::decay_t<decltype(desc)>,
                                     CycleDescriptor>) {
          return canonical_cycle(desc);
        } else {
          return canonical_double_cycle(desc);
        }
      },
      d);
}

namespace {

int parse_int(const std::string& text, std::size_t& pos, int column_base) {
  int value = 0;
  const char* first = text.data() + pos;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) {
    throw ParseError("expected an integer in descriptor '" + text + "'", 1,
                     column_base + static_cast<int>(pos) + 1);
  }
  pos = static_cast<std::size_t>(ptr - text.data());
  return value;
}

Sign parse_sign(char c, const std::string& text, std::size_t pos) {
  if (c == '+') return Sign::Positive;
  if (c == '-') return Sign::Negative;
  throw ParseError("expected '+' or '-' in descriptor '" + text + "'", 1,
                   static_cast<int>(pos) + 1);
}

}  // namespace

Descriptor parse_descriptor(const std::string& text,
                            Junction default_junction) {
  auto fail = [&](const std::string& msg, std::size_t pos) -> ParseError {
    return ParseError(msg + " in descriptor '" + text + "'", 1,
                      static_cast<int>(pos) + 1);
  };
  if (text.size() < 4) throw fail("descriptor too short", 0);
  if (text[0] == 'C') {
    const Sign sign = parse_sign(text[1], text, 1);
    if (text[2] != ':') throw fail("expected ':'", 2);
    std::size_t pos = 3;
    CycleDescriptor d{parse_int(text, pos, 0), sign};
    if (pos != text.size()) throw fail("trailing input", pos);
    try {
      validate(d);
    } catch (const Error& e) {
      throw fail(e.what(), 3);
    }
    return d;
  }
  if (text[0] == 'D') {
    DoubleCycleDescriptor d;
    d.left = parse_sign(text[1], text, 1);
    d.right = parse_sign(text[2], text, 2);
    if (text[3] != ':') throw fail("expected ':'", 3);
    std::size_t pos = 4;
    d.l = parse_int(text, pos, 0);
    if (pos >= text.size() || text[pos] != ',') throw fail("expected ','", pos);
    ++pos;
    d.r = parse_int(text, pos, 0);
    d.junction = default_junction;
    if (pos < text.size()) {
      if (text[pos] != ':') throw fail("expected ':'", pos);
      const std::string junction = text.substr(pos + 1);
      if (junction == "and") {
        d.junction = Junction::And;
      } else if (junction == "or") {
        d.junction = Junction::Or;
      } else {
        throw fail("junction must be 'and' or 'or'", pos + 1);
      }
    }
    try {
      validate(d);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw fail(e.what(), 0);
    }
    return d;
  }
  throw fail("descriptor must start with 'C' or 'D'", 0);
}

std::string to_string(const Descriptor& d) {
  if (const auto* c = std::get_if<CycleDescriptor>(&d)) {
    return std::string("C") + sign_char(c->sign) + ":" + std::to_string(c->n);
  }
  const auto& dc = std::get<DoubleCycleDescriptor>(d);
  return std::string("D") + sign_char(dc.left) + sign_char(dc.right) + ":" +
         std::to_string(dc.l) + "," + std::to_string(dc.r) + ":" +
         junction_name(dc.junction);
}

// ------------------------------------------------------------ tangential

namespace {

void validate(const TangentialDescriptor& t) {
  if (t.m < 1) throw Error("shared path length must be at least 1");
  validate(DoubleCycleDescriptor{t.l, t.r, t.left, t.right, t.junction});
  if (t.size() > kMaxWidth) throw Error("tangential double-cycle too large");
}

// Index of the private automaton k (1-based) of a cycle.
int private_index(const TangentialDescriptor& t, Side side, int k) {
  return side == Side::Left ? t.m - 1 + k : t.m - 1 + (t.l - 1) + k;
}

// Last automaton of a cycle before it closes on p_0.
int cycle_tail(const TangentialDescriptor& t, Side side) {
  const int private_count = (side == Side::Left ? t.l : t.r) - 1;
  return private_count == 0 ? t.m - 1 : private_index(t, side, private_count);
}

}  // namespace

BooleanNetwork tangential_network(const TangentialDescriptor& t) {
  validate(t);
  std::vector<Expr> exprs(static_cast<std::size_t>(t.size()),
                          Expr::constant(false));
  exprs[0] = combine(signed_var(cycle_tail(t, Side::Left), t.left),
                     signed_var(cycle_tail(t, Side::Right), t.right),
                     t.junction);
  for (int k = 1; k < t.m; ++k) {
    exprs[static_cast<std::size_t>(k)] = Expr::var(k - 1);
  }
  for (Side side : {Side::Left, Side::Right}) {
    const int private_count = (side == Side::Left ? t.l : t.r) - 1;
    for (int k = 1; k <= private_count; ++k) {
      const int pred = k == 1 ? t.m - 1 : private_index(t, side, k - 1);
      exprs[static_cast<std::size_t>(private_index(t, side, k))] =
          Expr::var(pred);
    }
  }
  return BooleanNetwork::from_expressions(exprs);
}

DoubleCycleDescriptor canonicalize_tangential(const TangentialDescriptor& t) {
  validate(t);
  return {t.l + t.m - 1, t.r + t.m - 1, t.left, t.right, t.junction};
}

std::uint64_t duplicate_path_state(const TangentialDescriptor& t,
                                   std::uint64_t state) {
  const DoubleCycleDescriptor d = canonicalize_tangential(t);
  std::uint64_t out = state & 1U;
  auto put = [&](int global, bool bit) {
    if (bit) out |= singleton(global);
  };
  for (Side side : {Side::Left, Side::Right}) {
    for (int k = 1; k < t.m; ++k) {
      put(global_index(d, side, k), (state >> k) & 1U);
    }
    const int private_count = (side == Side::Left ? t.l : t.r) - 1;
    for (int k = 1; k <= private_count; ++k) {
      put(global_index(d, side, t.m - 1 + k),
          (state >> private_index(t, side, k)) & 1U);
    }
  }
  return out;
}

}  // namespace ban
