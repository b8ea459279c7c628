#include "ppfa/refinement.hpp"

#include <algorithm>
#include <sstream>

#include "ppfa/operators.hpp"

namespace ppfa {

namespace {

/// Tree-shaped deterministic context: per action at most one child.
struct CtxTree {
  std::map<std::string, CtxTree> children;

  size_t size() const {
    size_t n = 1;
    for (const auto& [a, c] : children) n += c.size();
    return n;
  }
};

/// All trees of depth <= depth, generated in a deterministic odometer order
/// and cut off at gen_limit before sorting by size.
std::vector<CtxTree> gen_trees(const std::vector<std::string>& alphabet,
                               unsigned depth, size_t gen_limit) {
  if (depth == 0) return {CtxTree{}};
  std::vector<CtxTree> subs = gen_trees(alphabet, depth - 1, gen_limit);
  // option 0 = no child for that action; option i>0 = subs[i-1]
  std::vector<size_t> odo(alphabet.size(), 0);
  std::vector<CtxTree> out;
  while (out.size() < gen_limit) {
    CtxTree t;
    for (size_t i = 0; i < alphabet.size(); ++i)
      if (odo[i] > 0) t.children[alphabet[i]] = subs[odo[i] - 1];
    out.push_back(std::move(t));
    size_t i = 0;
    for (; i < odo.size(); ++i) {
      if (++odo[i] <= subs.size()) break;
      odo[i] = 0;
    }
    if (i == odo.size()) break;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CtxTree& a, const CtxTree& b) {
                     return a.size() < b.size();
                   });
  return out;
}

void tree_to_fa(const CtxTree& t, const std::string& node, Fa& fa,
                unsigned& counter) {
  fa.nodes.insert(node);
  for (const auto& [a, child] : t.children) {
    std::string next = "c" + std::to_string(++counter);
    fa.transitions.insert({node, a, next});
    tree_to_fa(child, next, fa, counter);
  }
}

}  // namespace

std::vector<TestContext> enumerate_contexts(const std::set<std::string>& alphabet,
                                            unsigned depth, size_t cap) {
  std::vector<std::string> sigma(alphabet.begin(), alphabet.end());
  std::vector<CtxTree> trees = gen_trees(sigma, depth, 4 * cap);
  if (trees.size() > cap) trees.resize(cap);
  std::vector<TestContext> out;
  for (const auto& t : trees) {
    TestContext x;
    x.fa.alphabet = alphabet;
    x.fa.starts = {"c0"};
    x.sync = alphabet;
    unsigned counter = 0;
    tree_to_fa(t, "c0", x.fa, counter);
    out.push_back(std::move(x));
  }
  return out;
}

Pfa context_pfa(const TestContext& x) {
  Pfa p;
  p.nodes = x.fa.nodes;
  p.alphabet = x.fa.alphabet;
  for (const auto& s : x.fa.starts) p.start[s] = SymProb::one();
  for (const auto& [f, a, t] : x.fa.transitions) {
    Distribution d;
    d.weights[t] = SymProb::one();
    p.transitions.push_back({f, a, std::move(d)});
  }
  return p;
}

namespace {

void check_sync(const TestContext& x) {
  for (const auto& a : x.sync)
    if (!x.fa.alphabet.count(a))
      throw StructureError("synchronization action " + a +
                           " missing from context alphabet");
}

}  // namespace

Fa apply_context(const Fa& a, const TestContext& x) {
  check_sync(x);
  return fa_parallel(a, x.fa, x.sync);
}

Pfa apply_context(const Pfa& p, const TestContext& x) {
  check_sync(x);
  return pfa_parallel(p, context_pfa(x), x.sync);
}

std::string Verdict::report() const {
  std::ostringstream os;
  os << (refines ? "refines (bounded evidence)" : "counterexample") << "\n";
  os << "contexts checked: " << contexts_checked << "\n";
  if (!refines) {
    os << "context:\n" << render_fa(context.fa);
    if (!psi.empty()) os << "assignment: " << assignment_str(psi) << "\n";
    if (!offending_dist.empty())
      os << "unmatched distribution:\n" << render_rat_trace_dist(offending_dist);
    else
      os << "unmatched trace: " << render_trace(offending_trace) << "\n";
  }
  return os.str();
}

namespace {

/// Contexts for refinement checking: every action sequence over the shared
/// alphabet up to the depth bound, synchronized in full and closed by one
/// fresh unsynchronized success action. With full synchronization every
/// synchronized event is relabelled tau, so without the final observer every
/// complete trace would collapse to <> and testing would distinguish nothing.
/// Linear contexts (rather than trees) keep the composition with a
/// well-formed automaton deterministic: at each context node at most one
/// transition is enabled, so the accumulated complete-trace weights form a
/// genuine distribution over {<>, <success>} instead of double-counting
/// simultaneously enabled branches.
std::vector<TestContext> refinement_contexts(const std::set<std::string>& sigma,
                                             unsigned depth) {
  std::string obs = "w";
  while (sigma.count(obs)) obs += "'";
  std::vector<std::string> actions(sigma.begin(), sigma.end());
  std::vector<TestContext> out;
  std::vector<std::vector<std::string>> frontier = {{}};
  for (unsigned len = 0; len <= depth; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& seq : frontier) {
      TestContext x;
      x.sync = sigma;
      x.fa.alphabet = sigma;
      x.fa.alphabet.insert(obs);
      x.fa.starts = {"c0"};
      std::string node = "c0";
      x.fa.nodes.insert(node);
      for (size_t i = 0; i < seq.size(); ++i) {
        std::string to = "c" + std::to_string(i + 1);
        x.fa.nodes.insert(to);
        x.fa.transitions.insert({node, seq[i], to});
        node = to;
      }
      x.fa.nodes.insert("cw");
      x.fa.transitions.insert({node, obs, "cw"});
      out.push_back(std::move(x));
      if (len < depth)
        for (const auto& a : actions) {
          next.push_back(seq);
          next.back().push_back(a);
        }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

Verdict fa_refines(const Fa& spec, const Fa& impl, unsigned depth) {
  std::set<std::string> sigma = spec.alphabet;
  sigma.insert(impl.alphabet.begin(), impl.alphabet.end());
  return fa_refines(spec, impl, depth, sigma);
}

Verdict fa_refines(const Fa& spec, const Fa& impl, unsigned depth,
                   const std::set<std::string>& sync) {
  Verdict v;
  for (const auto& x : refinement_contexts(sync, depth)) {
    ++v.contexts_checked;
    auto allowed = fa_complete_traces(apply_context(spec, x));
    for (const auto& t : fa_complete_traces(apply_context(impl, x))) {
      if (allowed.count(t)) continue;
      v.refines = false;
      v.context = x;
      v.offending_trace = t;
      return v;
    }
  }
  return v;
}

SemanticsSet pfa_semantics(const Pfa& p, const std::vector<TestContext>& contexts,
                           unsigned granularity) {
  SemanticsSet out;
  for (size_t i = 0; i < contexts.size(); ++i) {
    Pfa composed = apply_context(p, contexts[i]);
    TraceDist d = complete_trace_dist(composed);
    for (const auto& psi : composed.grid(granularity))
      out.insert({i, instantiate_dist(d, psi)});
  }
  return out;
}

Verdict pfa_refines(const Pfa& spec, const Pfa& impl, unsigned depth,
                    unsigned granularity) {
  std::set<std::string> sigma = spec.alphabet;
  sigma.insert(impl.alphabet.begin(), impl.alphabet.end());
  return pfa_refines(spec, impl, depth, granularity, sigma);
}

Verdict pfa_refines(const Pfa& spec, const Pfa& impl, unsigned depth,
                    unsigned granularity, const std::set<std::string>& sync) {
  return pfa_refines(spec, impl, depth, granularity, granularity, sync);
}

Verdict pfa_refines(const Pfa& spec, const Pfa& impl, unsigned depth,
                    unsigned spec_granularity, unsigned impl_granularity,
                    const std::set<std::string>& sync) {
  unsigned granularity = impl_granularity;
  std::vector<TestContext> contexts = refinement_contexts(sync, depth);
  SemanticsSet allowed = pfa_semantics(spec, contexts, spec_granularity);
  Verdict v;
  v.contexts_checked = contexts.size();
  for (size_t i = 0; i < contexts.size(); ++i) {
    Pfa composed = apply_context(impl, contexts[i]);
    TraceDist d = complete_trace_dist(composed);
    for (const auto& psi : composed.grid(granularity)) {
      RatTraceDist inst = instantiate_dist(d, psi);
      if (allowed.count({i, inst})) continue;
      v.refines = false;
      v.context = contexts[i];
      v.psi = psi;
      v.offending_dist = std::move(inst);
      return v;
    }
  }
  return v;
}

bool pfa_test_equal(const Pfa& a, const Pfa& b, unsigned depth,
                    unsigned granularity) {
  return pfa_refines(a, b, depth, granularity).refines &&
         pfa_refines(b, a, depth, granularity).refines;
}

}  // namespace ppfa
