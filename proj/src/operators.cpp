#include "ppfa/operators.hpp"

#include <algorithm>

namespace ppfa {

std::string product_node(const std::string& l, const std::string& r) {
  return "(" + l + "," + r + ")";
}

GlueSubstitution glue_substitution(const std::set<std::string>& starts_a,
                                   const std::set<std::string>& starts_b) {
  GlueSubstitution g;
  for (const auto& sa : starts_a)
    for (const auto& sb : starts_b) {
      g.mapping[sa].insert(product_node(sa, sb));
      g.mapping[sb].insert(product_node(sa, sb));
    }
  return g;
}

namespace {

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& x : a)
    if (b.count(x)) return false;
  return true;
}

void rename_nodes(Pfa& p, const std::string& prefix) {
  auto rn = [&](const std::string& n) { return prefix + n; };
  std::set<std::string> nodes;
  for (const auto& n : p.nodes) nodes.insert(rn(n));
  p.nodes = std::move(nodes);
  std::map<std::string, SymProb> start;
  for (const auto& [n, w] : p.start) start[rn(n)] = w;
  p.start = std::move(start);
  for (auto& t : p.transitions) {
    t.from = rn(t.from);
    Distribution d;
    for (const auto& [n, w] : t.dist.weights) d.weights[rn(n)] = w;
    t.dist = std::move(d);
  }
}

void rename_nodes(Fa& a, const std::string& prefix) {
  auto rn = [&](const std::string& n) { return prefix + n; };
  std::set<std::string> nodes;
  for (const auto& n : a.nodes) nodes.insert(rn(n));
  a.nodes = std::move(nodes);
  std::set<std::string> starts;
  for (const auto& n : a.starts) starts.insert(rn(n));
  a.starts = std::move(starts);
  std::set<std::tuple<std::string, std::string, std::string>> ts;
  for (const auto& [f, x, t] : a.transitions) ts.insert({rn(f), x, rn(t)});
  a.transitions = std::move(ts);
}

std::string fresh_node(const std::set<std::string>& used, const std::string& base) {
  if (!used.count(base)) return base;
  for (unsigned i = 0;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

/// Union of variable groups; identical groups (same automaton composed with
/// itself) collapse, conflicting overlaps are rejected.
std::vector<VarGroup> merge_groups(const std::vector<VarGroup>& ga,
                                   const std::vector<VarGroup>& gb) {
  std::vector<VarGroup> out = ga;
  std::set<std::string> seen;
  for (const auto& g : out) seen.insert(g.vars.begin(), g.vars.end());
  for (const auto& g : gb) {
    if (std::find(out.begin(), out.end(), g) != out.end()) continue;
    for (const auto& v : g.vars)
      if (seen.count(v))
        throw StructureError("variable " + v +
                             " appears in conflicting groups of composed operands");
    out.push_back(g);
    seen.insert(g.vars.begin(), g.vars.end());
  }
  return out;
}

std::string fresh_choice_var(const Pfa& a, const Pfa& b) {
  std::set<std::string> used = a.free_vars();
  for (const auto& v : b.free_vars()) used.insert(v);
  for (const auto& g : a.groups) used.insert(g.vars.begin(), g.vars.end());
  for (const auto& g : b.groups) used.insert(g.vars.begin(), g.vars.end());
  return VarRegistry(used).fresh();
}

}  // namespace

void make_disjoint(Pfa& a, Pfa& b) {
  if (disjoint(a.nodes, b.nodes)) return;
  rename_nodes(a, "l.");
  rename_nodes(b, "r.");
}

void make_disjoint(Fa& a, Fa& b) {
  if (disjoint(a.nodes, b.nodes)) return;
  rename_nodes(a, "l.");
  rename_nodes(b, "r.");
}

Fa fa_prefix(const std::string& action, const Fa& b) {
  if (action == kTau) throw StructureError("prefix action must be visible");
  Fa out = b;
  std::string s = fresh_node(out.nodes, "p");
  out.nodes.insert(s);
  out.alphabet.insert(action);
  for (const auto& x : b.starts) out.transitions.insert({s, action, x});
  out.starts = {s};
  return out;
}

Pfa pfa_prefix(const std::string& action, const Pfa& b) {
  if (action == kTau) throw StructureError("prefix action must be visible");
  Pfa out = b;
  std::string s = fresh_node(out.nodes, "p");
  out.nodes.insert(s);
  out.alphabet.insert(action);
  Distribution d;
  d.weights = b.start;
  out.transitions.push_back({s, action, std::move(d)});
  out.start = {{s, SymProb::one()}};
  return out;
}

Fa fa_internal(const Fa& a, const Fa& b) {
  Fa l = a, r = b;
  make_disjoint(l, r);
  Fa out = l;
  out.nodes.insert(r.nodes.begin(), r.nodes.end());
  out.alphabet.insert(r.alphabet.begin(), r.alphabet.end());
  out.starts.insert(r.starts.begin(), r.starts.end());
  out.transitions.insert(r.transitions.begin(), r.transitions.end());
  return out;
}

namespace {

Pfa weighted_union(const Pfa& a, const Pfa& b, const SymProb& p,
                   std::vector<VarGroup> groups) {
  Pfa l = a, r = b;
  make_disjoint(l, r);
  Pfa out;
  out.nodes = l.nodes;
  out.nodes.insert(r.nodes.begin(), r.nodes.end());
  out.alphabet = l.alphabet;
  out.alphabet.insert(r.alphabet.begin(), r.alphabet.end());
  SymProb q = SymProb::one() - p;
  for (const auto& [n, w] : l.start) out.start[n] = p * w;
  for (const auto& [n, w] : r.start) out.start[n] = q * w;
  out.transitions = l.transitions;
  out.transitions.insert(out.transitions.end(), r.transitions.begin(),
                         r.transitions.end());
  out.groups = std::move(groups);
  out.canonicalize();
  return out;
}

}  // namespace

Pfa pfa_internal(const Pfa& a, const Pfa& b) {
  return pfa_internal(a, b, fresh_choice_var(a, b));
}

Pfa pfa_internal(const Pfa& a, const Pfa& b, const std::string& var) {
  for (const auto& v : a.free_vars())
    if (v == var) throw FreshnessError("choice variable " + var + " not fresh");
  for (const auto& v : b.free_vars())
    if (v == var) throw FreshnessError("choice variable " + var + " not fresh");
  auto groups = merge_groups(a.groups, b.groups);
  groups.push_back({{var}});
  return weighted_union(a, b, SymProb::var(var), std::move(groups));
}

Pfa pfa_prob_choice(const Pfa& a, const Pfa& b, const SymProb& p) {
  auto vars = p.vars();
  for (const auto& psi :
       grid_assignments({}, std::set<std::string>(vars.begin(), vars.end()), 4)) {
    Rat v = p.eval(psi);
    if (v < 0 || v > 1)
      throw RangeError("choice probability " + p.str() + " = " + rat_str(v) +
                       " at " + assignment_str(psi));
  }
  return weighted_union(a, b, p, merge_groups(a.groups, b.groups));
}

Fa fa_external(const Fa& a, const Fa& b) {
  Fa l = a, r = b;
  make_disjoint(l, r);
  Fa out;
  out.alphabet = l.alphabet;
  out.alphabet.insert(r.alphabet.begin(), r.alphabet.end());
  for (const auto& n : l.nodes)
    if (!l.starts.count(n)) out.nodes.insert(n);
  for (const auto& n : r.nodes)
    if (!r.starts.count(n)) out.nodes.insert(n);
  for (const auto& sa : l.starts)
    for (const auto& sb : r.starts) {
      std::string p = product_node(sa, sb);
      out.nodes.insert(p);
      out.starts.insert(p);
    }
  for (const auto& [f, x, t] : l.transitions) {
    if (l.starts.count(f)) {
      for (const auto& sb : r.starts)
        out.transitions.insert({product_node(f, sb), x, t});
    } else {
      out.transitions.insert({f, x, t});
    }
  }
  for (const auto& [f, x, t] : r.transitions) {
    if (r.starts.count(f)) {
      for (const auto& sa : l.starts)
        out.transitions.insert({product_node(sa, f), x, t});
    } else {
      out.transitions.insert({f, x, t});
    }
  }
  return out;
}

Pfa pfa_external(const Pfa& a, const Pfa& b) {
  Pfa l = a, r = b;
  make_disjoint(l, r);
  Pfa out;
  out.alphabet = l.alphabet;
  out.alphabet.insert(r.alphabet.begin(), r.alphabet.end());
  out.groups = merge_groups(l.groups, r.groups);
  for (const auto& n : l.nodes)
    if (!l.start.count(n)) out.nodes.insert(n);
  for (const auto& n : r.nodes)
    if (!r.start.count(n)) out.nodes.insert(n);
  for (const auto& [sa, wa] : l.start)
    for (const auto& [sb, wb] : r.start) {
      std::string p = product_node(sa, sb);
      out.nodes.insert(p);
      out.start[p] = wa * wb;
    }
  std::set<std::pair<std::string, std::string>> keys;
  auto add = [&](PfaTransition t) {
    if (!keys.insert({t.from, t.action}).second)
      throw StructureError(
          "external choice: glued start " + t.from +
          " would carry two transitions for action " + t.action +
          " (unresolved determinism)");
    out.transitions.push_back(std::move(t));
  };
  for (const auto& t : l.transitions) {
    if (l.start.count(t.from)) {
      for (const auto& [sb, wb] : r.start)
        add({product_node(t.from, sb), t.action, t.dist});
    } else {
      add(t);
    }
  }
  for (const auto& t : r.transitions) {
    if (r.start.count(t.from)) {
      for (const auto& [sa, wa] : l.start)
        add({product_node(sa, t.from), t.action, t.dist});
    } else {
      add(t);
    }
  }
  out.canonicalize();
  return out;
}

Fa fa_parallel(const Fa& a, const Fa& b, const std::set<std::string>& sync) {
  if (sync.count(kTau)) throw StructureError("tau cannot be synchronized");
  Fa out;
  out.alphabet = a.alphabet;
  out.alphabet.insert(b.alphabet.begin(), b.alphabet.end());
  for (const auto& n : a.nodes)
    for (const auto& m : b.nodes) out.nodes.insert(product_node(n, m));
  for (const auto& sa : a.starts)
    for (const auto& sb : b.starts) out.starts.insert(product_node(sa, sb));
  for (const auto& [n, x, l] : a.transitions) {
    if (sync.count(x)) {
      for (const auto& [m, y, k] : b.transitions)
        if (y == x)
          out.transitions.insert(
              {product_node(n, m), kTau, product_node(l, k)});
    } else {
      for (const auto& m : b.nodes)
        out.transitions.insert({product_node(n, m), x, product_node(l, m)});
    }
  }
  for (const auto& [m, x, k] : b.transitions) {
    if (sync.count(x)) continue;  // handled above from A's side only when x in A
    for (const auto& n : a.nodes)
      out.transitions.insert({product_node(n, m), x, product_node(n, k)});
  }
  return out;
}

Pfa pfa_parallel(const Pfa& a, const Pfa& b, const std::set<std::string>& sync) {
  if (sync.count(kTau)) throw StructureError("tau cannot be synchronized");
  Pfa out;
  out.alphabet = a.alphabet;
  out.alphabet.insert(b.alphabet.begin(), b.alphabet.end());
  out.groups = merge_groups(a.groups, b.groups);
  for (const auto& n : a.nodes)
    for (const auto& m : b.nodes) out.nodes.insert(product_node(n, m));
  for (const auto& [sa, wa] : a.start)
    for (const auto& [sb, wb] : b.start)
      out.start[product_node(sa, sb)] = wa * wb;

  for (const auto& ta : a.transitions) {
    if (sync.count(ta.action)) {
      for (const auto& tb : b.transitions) {
        if (tb.action != ta.action) continue;
        Distribution d;
        for (const auto& [x, wx] : ta.dist.weights)
          for (const auto& [y, wy] : tb.dist.weights)
            d.weights[product_node(x, y)] = wx * wy;
        out.transitions.push_back(
            {product_node(ta.from, tb.from), kTau, std::move(d)});
      }
    } else {
      for (const auto& m : b.nodes) {
        Distribution d;
        for (const auto& [x, wx] : ta.dist.weights)
          d.weights[product_node(x, m)] = wx;
        out.transitions.push_back({product_node(ta.from, m), ta.action, std::move(d)});
      }
    }
  }
  for (const auto& tb : b.transitions) {
    if (sync.count(tb.action)) continue;
    for (const auto& n : a.nodes) {
      Distribution d;
      for (const auto& [y, wy] : tb.dist.weights)
        d.weights[product_node(n, y)] = wy;
      out.transitions.push_back({product_node(n, tb.from), tb.action, std::move(d)});
    }
  }
  out.canonicalize();
  return out;
}

}  // namespace ppfa
