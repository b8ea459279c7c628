#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "ppfa/operators.hpp"
#include "ppfa/refinement.hpp"

using namespace ppfa;
using namespace ppfa::test;

namespace {

TestContext single_action_context(const std::string& action,
                                  const std::set<std::string>& alphabet) {
  TestContext x;
  x.fa = fa_chain({action});
  x.fa.alphabet = alphabet;
  x.sync = alphabet;
  return x;
}

Pfa embed_like_two_way() {
  Pfa q;
  q.nodes = {"s1", "s2", "e1", "e2"};
  q.alphabet = {"a", "b"};
  q.start["s1"] = parse_prob("X");
  q.start["s2"] = parse_prob("1 - X");
  q.transitions.push_back({"s1", "a", point("e1")});
  q.transitions.push_back({"s2", "b", point("e2")});
  q.groups.push_back({{"X"}});
  return q;
}

}  // namespace

TEST_CASE("enumerate_contexts counts") {
  CHECK(enumerate_contexts({"a"}, 0).size() == 1);
  CHECK(enumerate_contexts({"a"}, 1).size() == 2);
  CHECK(enumerate_contexts({"a", "b"}, 1).size() == 4);
  CHECK(enumerate_contexts({"a"}, 2).size() == 3);  // stop, a, a.a
  for (const auto& x : enumerate_contexts({"a", "b"}, 2)) {
    CHECK(is_det_test(x.fa));
    CHECK(validate_fa(x.fa).empty());
    CHECK(is_det_test(context_pfa(x)));
  }
  CHECK(enumerate_contexts({"a", "b"}, 2).size() == 25);  // (1 + 4)^2

  // cap keeps the smallest contexts
  auto capped = enumerate_contexts({"a", "b"}, 2, 5);
  REQUIRE(capped.size() == 5);
  CHECK(capped[0].fa.nodes.size() == 1);
}

TEST_CASE("apply_context") {
  TestContext xa = single_action_context("a", {"a"});
  Fa composed = apply_context(fa_chain({"a"}), xa);
  CHECK(fa_complete_traces(composed) == std::set<Trace>{{}});
  // the only maximal path is the tau synchronization
  CHECK(fa_traces(composed) == std::set<Trace>{{}});
  REQUIRE(composed.transitions.size() == 1);
  CHECK(std::get<1>(*composed.transitions.begin()) == kTau);

  // Example 1's A constrained by a c-only context deadlocks immediately
  TestContext xc = single_action_context("c", {"a", "b", "c"});
  CHECK(fa_complete_traces(apply_context(example1_a(), xc)) ==
        std::set<Trace>{{}});

  // a fully synchronizing context folds every branch into <>
  Pfa p = embed_like_two_way();
  Pfa pc = apply_context(p, single_action_context("a", {"a", "b"}));
  TraceDist folded = complete_trace_dist(pc);
  REQUIRE(folded.size() == 1);
  CHECK(folded.at({}).is_one());

  // point-mass contexts do not disturb distribution weights: with b left
  // unsynchronized, the parameterised split stays visible
  Pfa pv = apply_context(p, single_action_context("a", {"a"}));
  TraceDist d = complete_trace_dist(pv);
  CHECK(d.at({}) == parse_prob("X"));
  CHECK(d.at({"b"}) == parse_prob("1 - X"));

  TestContext bad = single_action_context("a", {"a"});
  bad.sync = {"a", "zz"};
  CHECK_THROWS_AS(apply_context(fa_chain({"a"}), bad), StructureError);
}

TEST_CASE("fa_refines basics") {
  Fa a = fa_chain({"a"});
  Fa b = fa_chain({"b"});
  CHECK(fa_refines(a, a, 2).refines);

  Verdict v = fa_refines(a, b, 2);
  CHECK_FALSE(v.refines);
  // the witness replays
  auto allowed = fa_complete_traces(apply_context(a, v.context));
  auto seen = fa_complete_traces(apply_context(b, v.context));
  CHECK(seen.count(v.offending_trace));
  CHECK_FALSE(allowed.count(v.offending_trace));

  // resolving an internal choice is a refinement
  Fa ab = fa_internal(a, b);
  CHECK(fa_refines(ab, a, 2).refines);
  CHECK(fa_refines(ab, b, 2).refines);
  CHECK_FALSE(fa_refines(a, ab, 2).refines);

  // Example 1 operands
  Fa e = fa_internal(example1_a(), example1_b("c"));
  CHECK(fa_refines(e, example1_a(), 2).refines);
}

TEST_CASE("fa_refines is transitive on samples") {
  Fa a = fa_chain({"a"});
  Fa ab = fa_internal(a, fa_chain({"b"}));
  Fa abc = fa_internal(ab, fa_chain({"c"}));
  CHECK(fa_refines(abc, ab, 2).refines);
  CHECK(fa_refines(ab, a, 2).refines);
  CHECK(fa_refines(abc, a, 2).refines);
}

TEST_CASE("pfa_semantics") {
  auto contexts = enumerate_contexts({"a", "b"}, 1);
  // parameter-free process: exactly one distribution per context
  Pfa d = chain({"a"});
  SemanticsSet s = pfa_semantics(d, contexts, 2);
  CHECK(s.size() == contexts.size());

  // one free variable at g=2: at most 3 distributions per context
  Pfa p = embed_like_two_way();
  SemanticsSet sp = pfa_semantics(p, contexts, 2);
  CHECK(sp.size() <= 3 * contexts.size());
  std::set<size_t> per_ctx;
  for (const auto& [i, dist] : sp) per_ctx.insert(i);
  CHECK(per_ctx.size() == contexts.size());
}

TEST_CASE("probabilistic choice is idempotent under testing") {
  Pfa p = pfa_prefix("a", pfa_prob_choice(chain({"b"}), chain({"c"}),
                                          parse_prob("1/2")));
  Pfa pp = pfa_prob_choice(p, p, parse_prob("1/2"));
  CHECK(pfa_test_equal(p, pp, 2, 2));

  Pfa q = chain({"a"});
  Pfa qq = pfa_internal(q, q);
  CHECK(pfa_test_equal(q, qq, 2, 2));
}

TEST_CASE("pfa_refines distinguishes unequal branch probabilities") {
  Pfa p34 = pfa_prefix("a", pfa_prob_choice(chain({"b"}), chain({"c"}),
                                            parse_prob("3/4")));
  Pfa p14 = pfa_prefix("a", pfa_prob_choice(chain({"b"}), chain({"c"}),
                                            parse_prob("1/4")));
  Verdict v = pfa_refines(p34, p14, 2, 4);
  CHECK_FALSE(v.refines);
  // witness replays: the offending distribution really is produced by the
  // implementation and absent from the specification's set
  Pfa composed = apply_context(p14, v.context);
  RatTraceDist replay =
      instantiate_dist(complete_trace_dist(composed), v.psi);
  CHECK(replay == v.offending_dist);
  CHECK_FALSE(v.report().empty());

  CHECK(pfa_refines(p34, p34, 2, 4).refines);
}

TEST_CASE("internal choice refines to its resolutions, probabilistically") {
  Pfa a = chain({"a"});
  Pfa b = chain({"b"});
  Pfa ab = pfa_internal(a, b);
  CHECK(pfa_refines(ab, a, 2, 2).refines);
  CHECK(pfa_refines(ab, b, 2, 2).refines);
  // and to any grid-achievable mixture
  CHECK(pfa_refines(ab, pfa_prob_choice(a, b, parse_prob("1/2")), 2, 2)
            .refines);
  CHECK_FALSE(pfa_refines(a, ab, 2, 2).refines);
}
