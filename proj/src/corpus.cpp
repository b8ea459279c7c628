#include "ppfa/corpus.hpp"

#include <algorithm>

#include "ppfa/operators.hpp"

namespace ppfa {

namespace {

std::string pick_action(std::mt19937_64& rng, const CorpusOptions& opt) {
  std::uniform_int_distribution<size_t> d(0, opt.alphabet.size() - 1);
  return opt.alphabet[d(rng)];
}

Rat half_grid_constant(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 2);
  return Rat(d(rng), 2);
}

Pfa random_pfa_rec(std::mt19937_64& rng, const CorpusOptions& opt,
                   unsigned depth, bool choice_only) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (depth == 0) {
    if (coin(rng)) return pfa_stop();
    return pfa_prefix(pick_action(rng, opt), pfa_stop());
  }
  int top = choice_only ? 2 : 4;
  std::uniform_int_distribution<int> op(0, top);
  switch (op(rng)) {
    case 0:
      return pfa_prefix(pick_action(rng, opt),
                        random_pfa_rec(rng, opt, depth - 1, choice_only));
    case 1:
      return pfa_internal(random_pfa_rec(rng, opt, depth - 1, choice_only),
                          random_pfa_rec(rng, opt, depth - 1, choice_only));
    case 2:
      return pfa_prob_choice(random_pfa_rec(rng, opt, depth - 1, choice_only),
                             random_pfa_rec(rng, opt, depth - 1, choice_only),
                             SymProb::constant(half_grid_constant(rng)));
    case 3: {
      if (!opt.with_external)
        return pfa_internal(random_pfa_rec(rng, opt, depth - 1, choice_only),
                            random_pfa_rec(rng, opt, depth - 1, choice_only));
      Pfa l = random_pfa_rec(rng, opt, depth - 1, choice_only);
      Pfa r = random_pfa_rec(rng, opt, depth - 1, choice_only);
      try {
        return pfa_external(l, r);
      } catch (const StructureError&) {
        return pfa_internal(l, r);  // glued starts collided; fall back
      }
    }
    default: {
      if (!opt.with_parallel)
        return pfa_prefix(pick_action(rng, opt),
                          random_pfa_rec(rng, opt, depth - 1, choice_only));
      Pfa l = random_pfa_rec(rng, opt, depth - 1, choice_only);
      Pfa r = random_pfa_rec(rng, opt, depth - 1, choice_only);
      // synchronize the whole shared alphabet: partially synchronized shared
      // actions interleave from both sides and break per-key uniqueness
      std::set<std::string> shared;
      for (const auto& a : l.alphabet)
        if (r.alphabet.count(a)) shared.insert(a);
      Pfa par = pfa_parallel(l, r, shared);
      if (validate_pfa(par).empty()) return par;
      return pfa_internal(l, r);  // colliding tau syncs; fall back
    }
  }
}

}  // namespace

Pfa random_pfa(std::mt19937_64& rng, const CorpusOptions& opt) {
  return random_pfa_rec(rng, opt, opt.depth, false);
}

Pfa random_choice_pfa(std::mt19937_64& rng, const CorpusOptions& opt) {
  return random_pfa_rec(rng, opt, opt.depth, true);
}

namespace {

Fa random_fa_rec(std::mt19937_64& rng, const CorpusOptions& opt,
                 unsigned depth) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (depth == 0) {
    if (coin(rng)) return fa_stop();
    return fa_prefix(pick_action(rng, opt), fa_stop());
  }
  int top = 1 + (opt.with_external ? 1 : 0) + (opt.with_parallel ? 1 : 0);
  std::uniform_int_distribution<int> op(0, top);
  int k = op(rng);
  if (k == 0)
    return fa_prefix(pick_action(rng, opt),
                     random_fa_rec(rng, opt, depth - 1));
  if (k == 1)
    return fa_internal(random_fa_rec(rng, opt, depth - 1),
                       random_fa_rec(rng, opt, depth - 1));
  if (k == 2 && opt.with_external)
    return fa_external(random_fa_rec(rng, opt, depth - 1),
                       random_fa_rec(rng, opt, depth - 1));
  Fa l = random_fa_rec(rng, opt, depth - 1);
  Fa r = random_fa_rec(rng, opt, depth - 1);
  std::set<std::string> shared;
  for (const auto& a : l.alphabet)
    if (r.alphabet.count(a) && coin(rng)) shared.insert(a);
  return fa_parallel(l, r, shared);
}

}  // namespace

Fa random_fa(std::mt19937_64& rng, const CorpusOptions& opt) {
  return random_fa_rec(rng, opt, opt.depth);
}

namespace {

void build_det_tree(std::mt19937_64& rng, const CorpusOptions& opt, Fa& fa,
                    const std::string& node, unsigned depth,
                    unsigned& counter) {
  fa.nodes.insert(node);
  if (depth == 0) return;
  std::uniform_int_distribution<int> coin(0, 1);
  for (const auto& a : opt.alphabet) {
    if (!coin(rng)) continue;
    std::string child = "d" + std::to_string(++counter);
    fa.alphabet.insert(a);
    fa.transitions.insert({node, a, child});
    build_det_tree(rng, opt, fa, child, depth - 1, counter);
  }
}

}  // namespace

Fa random_det_tree(std::mt19937_64& rng, const CorpusOptions& opt) {
  Fa fa;
  fa.starts = {"d0"};
  unsigned counter = 0;
  build_det_tree(rng, opt, fa, "d0", opt.depth, counter);
  return fa;
}

Fa random_det_branch_fa(std::mt19937_64& rng, const CorpusOptions& opt) {
  std::uniform_int_distribution<int> n(1, 3);
  Fa out = random_det_tree(rng, opt);
  int extra = n(rng) - 1;
  for (int i = 0; i < extra; ++i)
    out = fa_internal(out, random_det_tree(rng, opt));
  return out;
}

Fa restrict_starts(const Fa& a, std::mt19937_64& rng) {
  std::vector<std::string> starts(a.starts.begin(), a.starts.end());
  std::uniform_int_distribution<int> coin(0, 1);
  std::set<std::string> keep;
  for (const auto& s : starts)
    if (coin(rng)) keep.insert(s);
  if (keep.empty()) {
    std::uniform_int_distribution<size_t> d(0, starts.size() - 1);
    keep.insert(starts[d(rng)]);
  }
  Fa out;
  out.alphabet = a.alphabet;
  out.starts = keep;
  // keep only what stays reachable
  std::vector<std::string> work(keep.begin(), keep.end());
  std::set<std::string> seen = keep;
  while (!work.empty()) {
    std::string n = work.back();
    work.pop_back();
    out.nodes.insert(n);
    for (const auto& [f, x, t] : a.transitions) {
      if (f != n) continue;
      out.transitions.insert({f, x, t});
      if (seen.insert(t).second) work.push_back(t);
    }
  }
  return out;
}

}  // namespace ppfa
