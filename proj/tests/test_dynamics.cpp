#include "doctest.h"
#include "oracles.hpp"

#include <cstdlib>
#include <random>

#include "ban/dynamics.hpp"
#include "ban/io.hpp"
#include "ban/topologies.hpp"
#include "ban/verify.hpp"

using namespace ban;

namespace {

BooleanNetwork fig1() {
  return parse_network_spec(
      R"({"n": 3, "locals": ["x0 or not x1", "not x0 or not x1 or x2",
                              "not x0 or not x1 or not x2"]})");
}

// The library network seen as oracle lambdas, for random networks only.
oracle::Net as_oracle(const BooleanNetwork& net) {
  oracle::Net f;
  for (int i = 0; i < net.size(); ++i) {
    const Expr e = *net.local(i).expression();
    f.push_back([e](std::uint64_t x) { return e.eval(x); });
  }
  return f;
}

std::set<std::vector<std::uint64_t>> as_sets(const AttractorReport& report) {
  std::set<std::vector<std::uint64_t>> out;
  for (const Attractor& a : report.attractors) {
    std::vector<std::uint64_t> s = a.states;
    std::sort(s.begin(), s.end());
    out.insert(s);
  }
  return out;
}

std::vector<std::string> words(const Attractor& a, int n) {
  std::vector<std::string> out;
  for (std::uint64_t s : a.states) out.push_back(state_string(s, n));
  return out;
}

}  // namespace

TEST_CASE("three-automaton example under both modes") {
  const BooleanNetwork net = fig1();
  const AttractorReport async = attractors(TransitionGraph(net, UpdateMode::asynchronous()));
  REQUIRE(async.attractors.size() == 2);
  CHECK(words(async.attractors[0], 3) == std::vector<std::string>{"011"});
  CHECK(async.attractors[1].length == 4);
  CHECK(words(async.attractors[1], 3) ==
        std::vector<std::string>{"100", "101", "110", "111"});

  const AttractorReport par = attractors(TransitionGraph(net, UpdateMode::parallel()));
  REQUIRE(par.attractors.size() == 2);
  CHECK(words(par.attractors[0], 3) == std::vector<std::string>{"011"});
  CHECK(par.attractors[1].period == 3);
  CHECK(par.fixed_points() == 1);
  CHECK(par.oscillations() == 1);
}

TEST_CASE("updating modes parse and print") {
  CHECK(UpdateMode::parse("parallel").kind() == UpdateMode::Kind::Parallel);
  CHECK(UpdateMode::parse("async").kind() == UpdateMode::Kind::Asynchronous);
  CHECK(UpdateMode::parse("elementary").kind() == UpdateMode::Kind::Elementary);
  const UpdateMode b = UpdateMode::parse("0,1|2");
  CHECK(b.blocks() == std::vector<std::vector<int>>{{0, 1}, {2}});
  CHECK(b.to_string() == "blockseq 0,1|2");
  CHECK(UpdateMode::parse(b.to_string()).blocks() == b.blocks());
  CHECK_THROWS_AS(UpdateMode::parse("0,,1"), ParseError);
  CHECK_THROWS_AS(UpdateMode::parse("sequential"), ParseError);
  CHECK_THROWS_AS(UpdateMode::parse("0|0").validate(2), Error);
  CHECK_THROWS_AS(UpdateMode::parse("0").validate(2), Error);
  CHECK_NOTHROW(UpdateMode::parse("1|0").validate(2));
}

TEST_CASE("size caps") {
  const BooleanNetwork big = canonical_cycle({15, Sign::Positive});
  CHECK_THROWS_AS(TransitionGraph(big, UpdateMode::elementary()), CapExceeded);
  CHECK_THROWS_AS(TransitionGraph(big, UpdateMode::parallel(), Caps::uniform(10)),
                  CapExceeded);
  CHECK_NOTHROW(TransitionGraph(big, UpdateMode::parallel()));

  ::setenv("BAN_CAP", "4", 1);
  const Caps env = Caps::from_environment();
  ::unsetenv("BAN_CAP");
  CHECK(env.deterministic == 4);
  CHECK(env.elementary == 4);
  CHECK(Caps::from_environment().deterministic == Caps{}.deterministic);
}

TEST_CASE("arcs follow the definition of each mode") {
  const BooleanNetwork net = fig1();
  const oracle::Net ref = as_oracle(net);

  const TransitionGraph par(net, UpdateMode::parallel());
  const TransitionGraph blocks(net, UpdateMode::parse("0,1|2"));
  const TransitionGraph async(net, UpdateMode::asynchronous());
  const TransitionGraph elem(net, UpdateMode::elementary());
  CHECK(par.out_degree() == 1);
  CHECK(async.out_degree() == 3);
  CHECK(elem.out_degree() == 7);
  for (std::uint64_t x = 0; x < 8; ++x) {
    CHECK(par.successor(x) == oracle::parallel(ref, x));
    CHECK(blocks.successor(x) == oracle::update(ref, 0b100, oracle::update(ref, 0b011, x)));
    std::set<std::pair<AutomatonSet, std::uint64_t>> got;
    elem.for_each_arc(x, [&](AutomatonSet w, std::uint64_t y) { got.insert({w, y}); });
    std::set<std::pair<AutomatonSet, std::uint64_t>> want;
    for (std::uint64_t w = 1; w < 8; ++w) want.insert({w, oracle::update(ref, w, x)});
    CHECK(got == want);
    std::set<std::uint64_t> succ;
    async.for_each_distinct_successor(x, [&](std::uint64_t y) { succ.insert(y); });
    const auto ref_succ = oracle::async_successors(ref, x);
    CHECK(succ == std::set<std::uint64_t>(ref_succ.begin(), ref_succ.end()));
  }
}

TEST_CASE("attractors of random networks agree with brute force") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    const BooleanNetwork net = random_unate_network(rng, n);
    const oracle::Net ref = as_oracle(net);
    CAPTURE(trial);

    const TransitionGraph par(net, UpdateMode::parallel());
    const AttractorReport pr = attractors(par);
    const oracle::ParallelFacts facts = oracle::parallel_facts(ref);
    std::map<std::uint64_t, std::uint64_t> by_period;
    for (const Attractor& a : pr.attractors) ++by_period[*a.period];
    CHECK(by_period == facts.attractors_by_period);
    CHECK(pr.recurring_count == facts.recurring);
    CHECK(pr.convergence_time == facts.convergence);
    CHECK(as_sets(attractors_by_scc(par)) == as_sets(pr));

    const TransitionGraph async(net, UpdateMode::asynchronous());
    const AttractorReport ar = attractors(async);
    CHECK(as_sets(ar) == oracle::async_attractors(ref));
    CHECK(ar.convergence_time == oracle::convergence(n, oracle::async_graph(ref)));

    if (n <= 5) {
      const TransitionGraph elem(net, UpdateMode::elementary());
      const AttractorReport er = attractors(elem);
      CHECK(as_sets(er) == oracle::terminal_components(n, oracle::elementary_graph(ref)));
      CHECK(er.convergence_time == oracle::convergence(n, oracle::elementary_graph(ref)));
    }
  }
}

TEST_CASE("attractor ordering is by length then least member") {
  const AttractorReport r =
      attractors(TransitionGraph(canonical_cycle({4, Sign::Positive}), UpdateMode::parallel()));
  std::vector<std::pair<std::uint64_t, std::string>> keys;
  for (const Attractor& a : r.attractors) keys.emplace_back(a.length, state_string(a.states[0], 4));
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(keys.front() == std::pair<std::uint64_t, std::string>{1, "0000"});
  CHECK(keys.size() == 6);
}

TEST_CASE("acyclic networks converge to one fixed point") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const BooleanNetwork net = random_acyclic_network(rng, 1 + trial % 7);
    const Verdict v = check_robert(net);
    CHECK_MESSAGE(v.passed(), v.detail);
  }
  CHECK(check_robert(canonical_cycle({3, Sign::Negative})).status == CheckStatus::Inapplicable);
}

TEST_CASE("feedback cycles behind multistationarity and oscillation") {
  const FeedbackVerdict pos =
      check_feedback_necessity(canonical_cycle({3, Sign::Positive}), UpdateMode::parallel());
  CHECK(pos.stable_configurations == 2);
  CHECK(pos.graph_has_positive_cycle);
  CHECK(pos.positive_cycle.passed());
  CHECK(pos.negative_cycle.status == CheckStatus::Inapplicable);

  const FeedbackVerdict neg = check_feedback_necessity(canonical_cycle({3, Sign::Negative}),
                                                       UpdateMode::asynchronous());
  CHECK(neg.stable_oscillations == 1);
  CHECK(neg.graph_has_negative_cycle);
  CHECK(neg.negative_cycle.passed());
}

TEST_CASE("transition graph exports") {
  const BooleanNetwork net = fig1();
  const TransitionGraph tg(net, UpdateMode::asynchronous());
  const AttractorReport r = attractors(tg);
  const Json j = graph_json(tg, r);
  CHECK(j["mode"] == "asynchronous");
  CHECK(j["arcs"].size() == 8 * 3);
  const std::string dot = to_dot(tg, r);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("lightgray") != std::string::npos);
  CHECK(dot == to_dot(tg, r));
}

TEST_CASE("network spec errors report line and column") {
  try {
    parse_network_spec("{\"n\": 2,\n \"locals\": [\"x0\", \"x1 and\"]}");
    FAIL("parsed");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_network_spec("{\"n\": 2, \"locals\": [\"x0\"]}"), ParseError);
  CHECK_THROWS_AS(parse_network_spec("{\"n\": 1, \"locals\": [\"x4\"]}"), ParseError);
  CHECK_THROWS_AS(parse_network_spec("{ not json"), ParseError);
}
