#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "ban/core.hpp"

using namespace ban;

namespace {

BooleanNetwork fig1() {
  return BooleanNetwork::from_expressions({
      Expr::parse("x0 or not x1"),
      Expr::parse("not x0 or not x1 or x2"),
      Expr::parse("not x0 or not x1 or not x2"),
  });
}

oracle::Net fig1_oracle() {
  using oracle::bit;
  return {
      [](std::uint64_t x) { return bit(x, 0) || !bit(x, 1); },
      [](std::uint64_t x) { return !bit(x, 0) || !bit(x, 1) || bit(x, 2); },
      [](std::uint64_t x) { return !bit(x, 0) || !bit(x, 1) || !bit(x, 2); },
  };
}

}  // namespace

TEST_CASE("configuration text puts automaton 0 first") {
  const Configuration c = Configuration::parse("011");
  CHECK(c.width() == 3);
  CHECK(c.bits() == 0b110);
  CHECK_FALSE(c[0]);
  CHECK(c[1]);
  CHECK(c.to_string() == "011");
  CHECK(c.complement().to_string() == "100");
  CHECK(c.with(0, true).to_string() == "111");
  CHECK(state_string(0b001, 3) == "100");
  CHECK_THROWS_AS(Configuration::parse("01a"), ParseError);
}

TEST_CASE("expressions evaluate like their truth tables") {
  const BooleanNetwork net = fig1();
  const oracle::Net ref = fig1_oracle();
  for (std::uint64_t x = 0; x < 8; ++x) {
    for (int i = 0; i < 3; ++i) {
      CHECK(net.local(i).eval(x) == ref[static_cast<std::size_t>(i)](x));
    }
  }
  CHECK(Expr::parse("x0 and (x1 or not x2)").variables() == std::vector<int>{0, 1, 2});
  CHECK(Expr::parse("1").eval(0));
  CHECK_FALSE(Expr::parse("not 1").eval(0));
}

TEST_CASE("expression parse errors carry the column") {
  try {
    Expr::parse("x0 or or x1");
    FAIL("parsed");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(Expr::parse("x0 and"), ParseError);
  CHECK_THROWS_AS(Expr::parse("(x0"), ParseError);
  CHECK_THROWS_AS(Expr::parse("y3"), ParseError);
}

TEST_CASE("F_W updates exactly the automata of W") {
  const BooleanNetwork net = fig1();
  const oracle::Net ref = fig1_oracle();
  for (std::uint64_t w = 1; w < 8; ++w) {
    for (std::uint64_t x = 0; x < 8; ++x) {
      CHECK(net.apply_update(w, Configuration(3, x)).bits() == oracle::update(ref, w, x));
    }
  }
  for (std::uint64_t x = 0; x < 8; ++x) {
    CHECK(net.parallel_image(x) == oracle::parallel(ref, x));
  }
  CHECK_THROWS_AS(net.apply_update(0, Configuration(3, 0)), Error);
  CHECK_THROWS_AS(net.apply_update(1, Configuration(2, 0)), Error);
}

TEST_CASE("interaction graph of the three-automaton example") {
  const SignedDigraph g = interaction_graph(fig1());
  // Brute-force signs: effect of raising x_i on f_j over all contexts.
  const oracle::Net ref = fig1_oracle();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      bool up = false;
      bool down = false;
      for (std::uint64_t x = 0; x < 8; ++x) {
        if (oracle::bit(x, i)) continue;
        const bool lo = ref[static_cast<std::size_t>(j)](x);
        const bool hi = ref[static_cast<std::size_t>(j)](x | (std::uint64_t{1} << i));
        up |= !lo && hi;
        down |= lo && !hi;
      }
      const int expected = up ? 1 : (down ? -1 : 0);
      CHECK(g.sign(i, j) == expected);
    }
  }
  CHECK_FALSE(g.is_acyclic());
  CHECK(g.has_cycle_of_sign(1));
  CHECK(g.has_cycle_of_sign(-1));
}

TEST_CASE("non-monotone interactions are rejected") {
  const BooleanNetwork xor_net = BooleanNetwork::from_expressions({
      Expr::parse("(x0 and not x1) or (not x0 and x1)"),
      Expr::parse("x0"),
  });
  CHECK_THROWS_AS(interaction_graph(xor_net), NonSimpleInteraction);
}

TEST_CASE("elementary cycles and their signs") {
  // 0 -> 1 -> 2 -> 0 positive, 1 -> 0 negative, 2 self-loop negative.
  const SignedDigraph g(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {1, 0, -1}, {2, 2, -1}});
  const auto cycles = g.elementary_cycles();
  CHECK(cycles.size() == 3);
  std::map<std::vector<int>, int> by_path(cycles.begin(), cycles.end());
  CHECK(by_path.at({0, 1, 2}) == 1);
  CHECK(by_path.at({0, 1}) == -1);
  CHECK(by_path.at({2}) == -1);
  CHECK(g.in_degree(0) == 2);
  CHECK(SignedDigraph(3, {{0, 1, 1}, {1, 2, -1}}).is_acyclic());
}

TEST_CASE("random read-once formulas agree with direct evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    // (a op b) op' not c over three distinct variables, as text and lambda.
    const bool op1 = coin(rng) == 1;
    const bool op2 = coin(rng) == 1;
    const std::string text = std::string("(x0 ") + (op1 ? "and" : "or") + " x2) " +
                             (op2 ? "and" : "or") + " not x1";
    const Expr e = Expr::parse(text);
    for (std::uint64_t x = 0; x < 8; ++x) {
      const bool a = op1 ? (oracle::bit(x, 0) && oracle::bit(x, 2))
                         : (oracle::bit(x, 0) || oracle::bit(x, 2));
      const bool v = op2 ? (a && !oracle::bit(x, 1)) : (a || !oracle::bit(x, 1));
      CHECK(e.eval(x) == v);
      CHECK(Expr::parse(e.to_string()).eval(x) == v);
    }
  }
}
