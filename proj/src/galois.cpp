#include "ppfa/galois.hpp"

#include <sstream>

#include "ppfa/operators.hpp"

namespace ppfa {

namespace {

/// Distribution over `targets` with k-1 fresh grouped variables; the group is
/// registered on `p` when variables are introduced.
Distribution var_split(Pfa& p, VarRegistry& reg,
                       const std::set<std::string>& targets) {
  Distribution d;
  if (targets.size() == 1) {
    d.weights[*targets.begin()] = SymProb::one();
    return d;
  }
  VarGroup group;
  SymProb rest = SymProb::one();
  auto it = targets.begin();
  for (size_t i = 0; i + 1 < targets.size(); ++i, ++it) {
    std::string v = reg.fresh();
    group.vars.push_back(v);
    d.weights[*it] = SymProb::var(v);
    rest = rest - SymProb::var(v);
  }
  d.weights[*it] = rest;
  p.groups.push_back(std::move(group));
  return d;
}

}  // namespace

Pfa embed(const Fa& a) {
  Pfa p;
  p.nodes = a.nodes;
  p.alphabet = a.alphabet;
  VarRegistry reg;
  p.start = var_split(p, reg, a.starts).weights;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> grouped;
  for (const auto& [f, x, t] : a.transitions) grouped[{f, x}].insert(t);
  for (const auto& [key, targets] : grouped)
    p.transitions.push_back({key.first, key.second, var_split(p, reg, targets)});
  return p;
}

Fa forget(const Pfa& p) {
  Fa a;
  a.nodes = p.nodes;
  a.alphabet = p.alphabet;
  for (const auto& [n, w] : p.start) a.starts.insert(n);
  for (const auto& t : p.transitions)
    for (const auto& [m, w] : t.dist.weights)
      a.transitions.insert({t.from, t.action, m});
  return a;
}

bool check_unit(const Fa& x) { return iso_fa(forget(embed(x)), x); }

namespace {

/// The probabilistic side of these checks instantiates the specification on a
/// grid fine enough to reach products of the implementation's grid weights.
Verdict refines_fine(const Pfa& spec, const Pfa& impl, unsigned depth,
                     unsigned granularity) {
  std::set<std::string> sync = spec.alphabet;
  sync.insert(impl.alphabet.begin(), impl.alphabet.end());
  return pfa_refines(spec, impl, depth, granularity * granularity, granularity,
                     sync);
}

}  // namespace

Verdict check_counit(const Pfa& y, unsigned depth, unsigned granularity) {
  return refines_fine(embed(forget(y)), y, depth, granularity);
}

AdjunctionResult check_adjunction(const Fa& x, const Pfa& y, unsigned depth,
                                  unsigned granularity) {
  AdjunctionResult r;
  r.embed_verdict = refines_fine(embed(x), y, depth, granularity);
  r.embed_side = r.embed_verdict.refines;
  r.forget_verdict = fa_refines(x, forget(y), depth);
  r.forget_side = r.forget_verdict.refines;
  return r;
}

bool check_congruence_embed(const Fa& x, const Fa& y,
                            const std::set<std::string>& sync) {
  Pfa lhs = embed(fa_parallel(x, y, sync));
  Pfa rhs = pfa_parallel(embed(x), embed(y), sync);
  lhs.canonicalize();
  rhs.canonicalize();
  Pfa cl = canonicalize_vars(lhs);
  Pfa cr = canonicalize_vars(rhs);
  return cl == cr || iso_pfa(cl, cr);
}

bool check_congruence_forget(const Pfa& x, const Pfa& y,
                             const std::set<std::string>& sync) {
  Fa lhs = forget(pfa_parallel(x, y, sync));
  Fa rhs = fa_parallel(forget(x), forget(y), sync);
  return lhs == rhs || iso_fa(lhs, rhs);
}

LemmaEmbedResult check_lemma_embed(const Fa& x, const Fa& y,
                                   unsigned granularity) {
  LemmaEmbedResult r;
  auto tx = fa_complete_traces(x);
  auto ty = fa_complete_traces(y);
  r.precondition = true;
  for (const auto& t : tx)
    if (!ty.count(t)) r.precondition = false;
  if (!r.precondition) return r;

  Pfa ex = embed(x);
  Pfa ey = embed(y);
  TraceDist dx = complete_trace_dist(ex);
  TraceDist dy = complete_trace_dist(ey);
  std::set<RatTraceDist> reachable;
  for (const auto& psi : ey.grid(granularity))
    reachable.insert(instantiate_dist(dy, psi));

  r.domains_ok = true;
  r.achievable = true;
  for (const auto& psi : ex.grid(granularity)) {
    RatTraceDist inst = instantiate_dist(dx, psi);
    for (const auto& [t, w] : inst)
      if (!ty.count(t)) r.domains_ok = false;
    if (!reachable.count(inst)) r.achievable = false;
  }
  return r;
}

std::string GaloisReport::str() const {
  std::ostringstream os;
  os << "unit: " << (unit_ok ? "isomorphic" : "MISMATCH") << "\n";
  os << "counit: "
     << (counit.refines ? "refines (bounded evidence)" : "COUNTEREXAMPLE")
     << "\n";
  if (!counit.refines) os << counit.report();
  os << "adjunction: embed side "
     << (adjunction.embed_side ? "refines" : "fails") << ", forget side "
     << (adjunction.forget_side ? "refines" : "fails") << " -> "
     << (adjunction.agree() ? "agree" : "DISAGREE") << "\n";
  return os.str();
}

GaloisReport galois_report(const Fa& x, const Pfa& y, unsigned depth,
                           unsigned granularity) {
  GaloisReport r;
  r.unit_ok = check_unit(x);
  r.counit = check_counit(y, depth, granularity);
  r.adjunction = check_adjunction(x, y, depth, granularity);
  return r;
}

}  // namespace ppfa
