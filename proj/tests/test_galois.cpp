#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "ppfa/corpus.hpp"
#include "ppfa/galois.hpp"
#include "ppfa/operators.hpp"

using namespace ppfa;
using namespace ppfa::test;

TEST_CASE("embed introduces variables only at nondeterministic points") {
  Pfa c = embed(fa_chain({"a", "b"}));
  CHECK(c.free_vars().empty());
  CHECK(is_dpfa(c));

  Pfa e = embed(example1_a());
  CHECK(e.start.at("s1") == parse_prob("v0"));
  CHECK(e.start.at("s2") == parse_prob("1 - v0"));
  for (const auto& t : e.transitions) CHECK(t.dist.is_point_mass());
  REQUIRE(e.groups.size() == 1);
  CHECK(e.groups[0].vars == std::vector<std::string>{"v0"});
  CHECK(validate_pfa(e).empty());
  CHECK_FALSE(is_dpfa(e));
}

TEST_CASE("embed splits a k-way successor set with k-1 variables") {
  Fa a;
  a.nodes = {"s", "m1", "m2", "m3"};
  a.alphabet = {"a"};
  a.starts = {"s"};
  a.transitions = {{"s", "a", "m1"}, {"s", "a", "m2"}, {"s", "a", "m3"}};
  Pfa e = embed(a);
  REQUIRE(e.transitions.size() == 1);
  const Distribution& d = e.transitions[0].dist;
  CHECK(d.weights.at("m1") == parse_prob("v0"));
  CHECK(d.weights.at("m2") == parse_prob("v1"));
  CHECK(d.weights.at("m3") == parse_prob("1 - v0 - v1"));
  REQUIRE(e.groups.size() == 1);
  CHECK(e.groups[0].vars == std::vector<std::string>{"v0", "v1"});
  CHECK(validate_pfa(e).empty());
}

TEST_CASE("forget extracts domains") {
  Pfa p;
  p.nodes = {"s", "t", "u", "e"};
  p.alphabet = {"a", "b"};
  p.start["s"] = SymProb::one();
  p.transitions.push_back({"s", "a", dist({{"t", "3/4"}, {"u", "1/4"}})});
  p.transitions.push_back({"t", "b", point("e")});
  Fa f = forget(p);
  CHECK(f.starts == std::set<std::string>{"s"});
  std::set<std::tuple<std::string, std::string, std::string>> expect = {
      {"s", "a", "t"}, {"s", "a", "u"}, {"t", "b", "e"}};
  CHECK(f.transitions == expect);

  // zero weights survive until canonicalization
  Pfa z = p;
  z.nodes.insert("dead");
  z.start["dead"] = SymProb::zero();
  CHECK(forget(z).starts.count("dead"));
  z.canonicalize();
  CHECK_FALSE(forget(z).starts.count("dead"));
}

TEST_CASE("unit: forget after embed is the identity") {
  CHECK(check_unit(example1_a()));
  CHECK(check_unit(example1_b()));
  CHECK(check_unit(fa_chain({"a", "b", "c"})));
  std::mt19937_64 rng(7);
  CorpusOptions opt;
  for (int i = 0; i < 30; ++i) CHECK(check_unit(random_fa(rng, opt)));
}

TEST_CASE("counit: embed after forget refines to the original") {
  // a parameter-free chain loses nothing
  Pfa c = chain({"a", "b"});
  CHECK(check_counit(c, 2, 2).refines);
  CHECK(pfa_refines(c, embed(forget(c)), 2, 2).refines);  // equality here

  // branching: the original is one instantiation of the re-embedded automaton
  Pfa branch;
  branch.nodes = {"s", "t", "u"};
  branch.alphabet = {"a"};
  branch.start["s"] = SymProb::one();
  branch.transitions.push_back({"s", "a", dist({{"t", "1/2"}, {"u", "1/2"}})});
  CHECK(check_counit(branch, 2, 2).refines);
}

TEST_CASE("adjunction agrees on hand-picked pairs") {
  AdjunctionResult refl =
      check_adjunction(example1_a(), embed(example1_a()), 2, 2);
  CHECK(refl.embed_side);
  CHECK(refl.forget_side);

  AdjunctionResult neg =
      check_adjunction(fa_chain({"a"}), embed(fa_chain({"b"})), 2, 2);
  CHECK_FALSE(neg.embed_side);
  CHECK_FALSE(neg.forget_side);
}

TEST_CASE("congruence of embed through parallel composition") {
  CHECK(check_congruence_embed(example1_a(), example1_b("a"), {"a"}));
  // empty synchronization: meaningful when no action is shared, otherwise the
  // same action interleaves from both sides and the two embeds diverge
  CHECK(check_congruence_embed(example1_a(), fa_chain({"c"}), {}));
  CHECK(check_congruence_embed(example1_a(), fa_stop(), {}));

  std::mt19937_64 rng(11);
  CorpusOptions xopt;
  xopt.alphabet = {"a", "b"};
  CorpusOptions yopt;
  yopt.alphabet = {"a", "c"};  // one action shared with x at most
  CorpusOptions dopt;
  dopt.alphabet = {"c", "d"};  // disjoint from x
  for (int i = 0; i < 50; ++i) {
    Fa x = random_det_branch_fa(rng, xopt);
    Fa y = random_det_tree(rng, yopt);
    std::set<std::string> shared;
    for (const auto& a : x.alphabet)
      if (y.alphabet.count(a)) shared.insert(a);
    CHECK(check_congruence_embed(x, y, shared));
    CHECK(check_congruence_embed(x, random_det_tree(rng, dopt), {}));
  }
}

TEST_CASE("congruence of forget through parallel composition") {
  std::mt19937_64 rng(13);
  CorpusOptions opt;
  for (int i = 0; i < 50; ++i) {
    Pfa x = random_pfa(rng, opt);
    Pfa y = random_pfa(rng, opt);
    std::set<std::string> shared;
    for (const auto& a : x.alphabet)
      if (y.alphabet.count(a)) shared.insert(a);
    CHECK(check_congruence_forget(x, y, shared));
    CHECK(check_congruence_forget(x, y, {}));
  }
}

TEST_CASE("lemma: trace containment lifts to distribution containment") {
  Fa a = fa_chain({"a"});
  Fa ab = fa_internal(a, fa_chain({"b"}));
  LemmaEmbedResult r = check_lemma_embed(a, ab, 2);
  CHECK(r.precondition);
  CHECK(r.domains_ok);
  CHECK(r.achievable);

  LemmaEmbedResult refl = check_lemma_embed(ab, ab, 2);
  CHECK(refl.precondition);
  CHECK(refl.domains_ok);
  CHECK(refl.achievable);

  Fa abc = fa_internal(ab, fa_chain({"c"}));
  LemmaEmbedResult wide = check_lemma_embed(ab, abc, 2);
  CHECK(wide.precondition);
  CHECK(wide.domains_ok);
  CHECK(wide.achievable);

  CHECK_FALSE(check_lemma_embed(abc, ab, 2).precondition);
}

TEST_CASE("galois report") {
  GaloisReport r = galois_report(example1_a(), embed(example1_a()), 2, 2);
  CHECK(r.unit_ok);
  CHECK(r.counit.refines);
  CHECK(r.adjunction.agree());
  CHECK(r.str().find("agree") != std::string::npos);
}

TEST_CASE("corpus automata are valid") {
  std::mt19937_64 rng(17);
  CorpusOptions opt;
  for (int i = 0; i < 40; ++i) {
    CHECK(validate_pfa(random_pfa(rng, opt)).empty());
    CHECK(validate_fa(random_fa(rng, opt)).empty());
    Fa det = random_det_tree(rng, opt);
    CHECK(is_det_test(det));
    Fa multi = random_det_branch_fa(rng, opt);
    CHECK(validate_fa(multi).empty());
    Fa sub = restrict_starts(multi, rng);
    CHECK(validate_fa(sub).empty());
    for (const auto& s : sub.starts) CHECK(multi.starts.count(s));
  }
}
