#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "ppfa/operators.hpp"

using namespace ppfa;
using namespace ppfa::test;

namespace {

/// Pfa with starts {s1 -> p, s2 -> 1-p}: Q1 (+_p) Q2 where Qi = ai.stop.
Pfa two_way(const std::string& p) {
  Pfa q;
  q.nodes = {"s1", "s2", "e1", "e2"};
  q.alphabet = {"a1", "a2"};
  q.start["s1"] = parse_prob(p);
  q.start["s2"] = parse_prob("1 - (" + p + ")");
  q.transitions.push_back({"s1", "a1", point("e1")});
  q.transitions.push_back({"s2", "a2", point("e2")});
  return q;
}

}  // namespace

TEST_CASE("glue substitution maps starts to product starts") {
  GlueSubstitution g = glue_substitution({"s1", "s2"}, {"s"});
  CHECK(g.mapping["s1"] == std::set<std::string>{"(s1,s)"});
  CHECK(g.mapping["s2"] == std::set<std::string>{"(s2,s)"});
  CHECK(g.mapping["s"] == std::set<std::string>{"(s1,s)", "(s2,s)"});
}

TEST_CASE("example 1: internal choice") {
  Fa r = fa_internal(example1_a(), example1_b("c"));
  CHECK(r.starts == std::set<std::string>{"s1", "s2", "s"});
  CHECK(r.nodes == std::set<std::string>{"s1", "s2", "s", "t1", "t2", "t"});
  std::set<std::tuple<std::string, std::string, std::string>> expect = {
      {"s1", "a", "t1"}, {"s2", "b", "t2"}, {"s", "c", "t"}};
  CHECK(r.transitions == expect);
  CHECK(validate_fa(r).empty());
}

TEST_CASE("example 1: external choice") {
  Fa r = fa_external(example1_a(), example1_b("c"));
  CHECK(r.starts == std::set<std::string>{"(s1,s)", "(s2,s)"});
  CHECK(r.nodes ==
        std::set<std::string>{"(s1,s)", "(s2,s)", "t1", "t2", "t"});
  std::set<std::tuple<std::string, std::string, std::string>> expect = {
      {"(s1,s)", "a", "t1"},
      {"(s2,s)", "b", "t2"},
      {"(s1,s)", "c", "t"},
      {"(s2,s)", "c", "t"}};
  CHECK(r.transitions == expect);
  CHECK(validate_fa(r).empty());
}

TEST_CASE("example 1: parallel over {a}") {
  Fa r = fa_parallel(example1_a(), example1_b("a"), {"a"});
  CHECK(r.starts == std::set<std::string>{"(s1,s)", "(s2,s)"});
  CHECK(r.nodes.size() == 8);  // full product, unreachable nodes included
  std::set<std::tuple<std::string, std::string, std::string>> expect = {
      {"(s1,s)", kTau, "(t1,t)"},
      {"(s2,s)", "b", "(t2,s)"},
      {"(s2,t)", "b", "(t2,t)"}};
  CHECK(r.transitions == expect);
  CHECK(validate_fa(r).empty());
}

TEST_CASE("fa_prefix fans out to every start of the operand") {
  Fa b;
  b.nodes = {"x", "y"};
  b.starts = {"x", "y"};
  Fa r = fa_prefix("a", b);
  REQUIRE(r.starts.size() == 1);
  std::string s = *r.starts.begin();
  std::set<std::tuple<std::string, std::string, std::string>> expect = {
      {s, "a", "x"}, {s, "a", "y"}};
  CHECK(r.transitions == expect);
  CHECK(validate_fa(r).empty());
}

TEST_CASE("pfa_prefix of stop") {
  Pfa r = pfa_prefix("a", pfa_stop());
  CHECK(r.nodes.size() == 2);
  REQUIRE(r.start.size() == 1);
  CHECK(r.start.begin()->second.is_one());
  REQUIRE(r.transitions.size() == 1);
  CHECK(r.transitions[0].action == "a");
  CHECK(r.transitions[0].dist == point("n0"));
  CHECK(validate_pfa(r).empty());
}

TEST_CASE("pfa_prefix migrates the start distribution onto the action") {
  Pfa b = two_way("3/4");
  Pfa r = pfa_prefix("a", b);
  REQUIRE(r.transitions.size() == 3);
  const PfaTransition* pre = nullptr;
  for (const auto& t : r.transitions)
    if (t.action == "a") pre = &t;
  REQUIRE(pre);
  CHECK(pre->dist == dist({{"s1", "3/4"}, {"s2", "1/4"}}));
  CHECK(validate_pfa(r).empty());

  CHECK_THROWS_AS(pfa_prefix(kTau, b), StructureError);
}

TEST_CASE("pfa_internal introduces a fresh grouped variable") {
  Pfa p = chain({"a"});
  Pfa q = chain({"b"});
  Pfa r = pfa_internal(p, q);
  // operands collide on node names, so they are renamed apart
  REQUIRE(r.start.size() == 2);
  CHECK(r.start.at("l.k0") == parse_prob("v0"));
  CHECK(r.start.at("r.k0") == parse_prob("1 - v0"));
  REQUIRE(r.groups.size() == 1);
  CHECK(r.groups[0].vars == std::vector<std::string>{"v0"});
  CHECK(validate_pfa(r).empty());
}

TEST_CASE("composing an automaton with itself keeps parameters shared") {
  Pfa p = two_way("X");
  p.groups.push_back({{"X"}});
  Pfa r = pfa_internal(p, p);
  // the fresh choice variable is new, X stays shared between both copies
  CHECK(r.free_vars() == std::set<std::string>{"X", "v0"});
  CHECK(r.start.at("l.s1") == parse_prob("v0 * X"));
  CHECK(r.start.at("r.s1") == parse_prob("(1 - v0) * X"));
  CHECK(validate_pfa(r).empty());
}

TEST_CASE("pfa_prob_choice with a bare variable matches internal choice") {
  Pfa p = chain({"a"});
  Pfa q = chain({"b"});
  Pfa ic = pfa_internal(p, q);
  Pfa pc = pfa_prob_choice(p, q, SymProb::var("Z"));
  ic.groups.clear();
  pc.groups.clear();
  CHECK(canonicalize_vars(ic) == canonicalize_vars(pc));
}

TEST_CASE("pfa_prob_choice scales and canonicalizes start weights") {
  Pfa r = pfa_prob_choice(chain({"a"}), chain({"b"}), parse_prob("3/4"));
  CHECK(r.start.at("l.k0") == parse_prob("3/4"));
  CHECK(r.start.at("r.k0") == parse_prob("1/4"));
  CHECK(validate_pfa(r).empty());

  Pfa one = pfa_prob_choice(chain({"a"}), chain({"b"}), SymProb::one());
  REQUIRE(one.start.size() == 1);
  CHECK(one.start.count("l.k0"));

  CHECK_THROWS_AS(pfa_prob_choice(chain({"a"}), chain({"b"}), parse_prob("3/2")),
                  RangeError);
  CHECK_THROWS_AS(
      pfa_prob_choice(chain({"a"}), chain({"b"}), parse_prob("2 * X")),
      RangeError);
}

TEST_CASE("pfa_external glues starts and multiplies their weights") {
  Pfa r = pfa_external(chain({"a"}), chain({"b"}));
  REQUIRE(r.start.size() == 1);
  CHECK(r.start.count("(l.k0,r.k0)"));
  CHECK(r.start.at("(l.k0,r.k0)").is_one());
  REQUIRE(r.transitions.size() == 2);
  for (const auto& t : r.transitions) CHECK(t.from == "(l.k0,r.k0)");
  CHECK(validate_pfa(r).empty());
}

TEST_CASE("pfa_external weights product starts by both operands") {
  Pfa p = two_way("X");
  p.groups.push_back({{"X"}});
  Pfa q = chain({"c"});
  Pfa r = pfa_external(p, q);
  CHECK(r.start.at("(s1,k0)") == parse_prob("X"));
  CHECK(r.start.at("(s2,k0)") == parse_prob("1 - X"));
  CHECK(validate_pfa(r).empty());
}

TEST_CASE("pfa_external rejects colliding glued transitions") {
  // both operands start with the same action: the glued start would need two
  // distributions for it
  CHECK_THROWS_AS(pfa_external(chain({"a"}), chain({"a"})), StructureError);
}

TEST_CASE("pfa_parallel: synchronisation multiplies distributions") {
  Pfa a = chain({"a"});  // k0 --a--> k1, point mass
  Pfa b;
  b.nodes = {"s", "x", "y"};
  b.alphabet = {"a"};
  b.start["s"] = SymProb::one();
  b.transitions.push_back({"s", "a", dist({{"x", "p"}, {"y", "1 - p"}})});
  b.groups.push_back({{"p"}});

  Pfa r = pfa_parallel(a, b, {"a"});
  CHECK(r.nodes.size() == 6);
  REQUIRE(r.start.size() == 1);
  CHECK(r.start.count("(k0,s)"));
  REQUIRE(r.transitions.size() == 1);
  const PfaTransition& t = r.transitions[0];
  CHECK(t.from == "(k0,s)");
  CHECK(t.action == kTau);
  CHECK(t.dist == dist({{"(k1,x)", "p"}, {"(k1,y)", "1 - p"}}));
  CHECK(validate_pfa(r).empty());
}

TEST_CASE("pfa_parallel interleaves unsynchronised actions") {
  Pfa r = pfa_parallel(chain({"a"}), chain({"b"}), {});
  CHECK(r.nodes.size() == 4);
  // a from either r.k0/r.k1 column, b from either l.k0/l.k1 column
  CHECK(r.transitions.size() == 4);
  for (const auto& t : r.transitions) CHECK(t.dist.is_point_mass());
  CHECK(validate_pfa(r).empty());
}

TEST_CASE("stop is a unit for interleaving up to isomorphism") {
  Fa a = example1_a();
  CHECK(iso_fa(fa_parallel(a, fa_stop(), {}), a));
  Pfa p = two_way("1/3");
  CHECK(iso_pfa(pfa_parallel(p, pfa_stop(), {}), p));
}

TEST_CASE("parallel composition is commutative up to isomorphism") {
  Pfa p = two_way("1/3");
  Pfa q = chain({"a1"});
  CHECK(iso_pfa(pfa_parallel(p, q, {"a1"}), pfa_parallel(q, p, {"a1"})));
  CHECK(iso_fa(fa_parallel(example1_a(), example1_b("a"), {"a"}),
               fa_parallel(example1_b("a"), example1_a(), {"a"})));
}

TEST_CASE("tau cannot be synchronised or prefixed") {
  CHECK_THROWS_AS(fa_parallel(example1_a(), example1_b(), {kTau}),
                  StructureError);
  CHECK_THROWS_AS(pfa_parallel(chain({"a"}), chain({"a"}), {kTau}),
                  StructureError);
  CHECK_THROWS_AS(fa_prefix(kTau, example1_b()), StructureError);
}
