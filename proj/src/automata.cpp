#include "ppfa/automata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace ppfa {

std::set<std::string> Fa::successors(const std::string& node,
                                     const std::string& action) const {
  std::set<std::string> out;
  for (const auto& [f, a, t] : transitions)
    if (f == node && a == action) out.insert(t);
  return out;
}

bool Fa::has_outgoing(const std::string& node) const {
  for (const auto& [f, a, t] : transitions)
    if (f == node) return true;
  return false;
}

SymProb Distribution::sum() const {
  SymProb s;
  for (const auto& [n, w] : weights) s += w;
  return s;
}

bool Distribution::is_point_mass() const {
  return weights.size() == 1 && weights.begin()->second.is_one();
}

void Distribution::canonicalize() {
  for (auto it = weights.begin(); it != weights.end();) {
    if (it->second.is_zero())
      it = weights.erase(it);
    else
      ++it;
  }
}

std::vector<const PfaTransition*> Pfa::transitions_from(
    const std::string& node) const {
  std::vector<const PfaTransition*> out;
  for (const auto& t : transitions)
    if (t.from == node) out.push_back(&t);
  return out;
}

bool Pfa::has_outgoing(const std::string& node) const {
  for (const auto& t : transitions)
    if (t.from == node) return true;
  return false;
}

std::set<std::string> Pfa::free_vars() const {
  std::set<std::string> out;
  for (const auto& [n, w] : start)
    for (const auto& v : w.vars()) out.insert(v);
  for (const auto& t : transitions)
    for (const auto& [n, w] : t.dist.weights)
      for (const auto& v : w.vars()) out.insert(v);
  return out;
}

std::set<std::string> Pfa::ungrouped_vars() const {
  std::set<std::string> out = free_vars();
  for (const auto& g : groups)
    for (const auto& v : g.vars) out.erase(v);
  return out;
}

std::vector<ParamAssignment> Pfa::grid(unsigned granularity) const {
  // Only groups whose variables actually occur contribute to the grid.
  std::set<std::string> occurring = free_vars();
  std::vector<VarGroup> live;
  for (const auto& g : groups) {
    bool used = std::any_of(g.vars.begin(), g.vars.end(),
                            [&](const auto& v) { return occurring.count(v); });
    if (used) live.push_back(g);
  }
  return grid_assignments(live, ungrouped_vars(), granularity);
}

void Pfa::canonicalize() {
  for (auto it = start.begin(); it != start.end();) {
    if (it->second.is_zero())
      it = start.erase(it);
    else
      ++it;
  }
  for (auto& t : transitions) t.dist.canonicalize();
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()),
                    transitions.end());
  std::set<std::string> occurring = free_vars();
  std::vector<VarGroup> live;
  for (const auto& g : groups) {
    bool used = std::any_of(g.vars.begin(), g.vars.end(),
                            [&](const auto& v) { return occurring.count(v); });
    if (used) live.push_back(g);
  }
  groups = std::move(live);
}

Pfa pfa_stop() {
  Pfa p;
  p.nodes = {"n0"};
  p.start["n0"] = SymProb::one();
  return p;
}

Fa fa_stop() {
  Fa a;
  a.nodes = {"n0"};
  a.starts = {"n0"};
  return a;
}

std::string issue_str(const ValidationIssue& issue) {
  using K = ValidationIssue::Kind;
  const char* name = "";
  switch (issue.kind) {
    case K::UnknownNode: name = "unknown-node"; break;
    case K::EmptyStart: name = "empty-start"; break;
    case K::StartSum: name = "start-sum"; break;
    case K::DistSum: name = "dist-sum"; break;
    case K::DuplicateKey: name = "duplicate-key"; break;
    case K::Cycle: name = "cycle"; break;
    case K::Range: name = "range"; break;
    case K::StartIncoming: name = "start-incoming"; break;
    case K::EmptyDist: name = "empty-dist"; break;
    case K::GroupConflict: name = "group-conflict"; break;
    case K::AlphabetMismatch: name = "alphabet-mismatch"; break;
  }
  return std::string(name) + ": " + issue.detail;
}

namespace {

// Cycle check over an edge relation given as adjacency function.
bool has_cycle(const std::set<std::string>& nodes,
               const std::function<std::set<std::string>(const std::string&)>& adj) {
  std::map<std::string, int> state;  // 0 unseen, 1 in stack, 2 done
  std::function<bool(const std::string&)> dfs = [&](const std::string& n) {
    state[n] = 1;
    for (const auto& m : adj(n)) {
      int s = state.count(m) ? state[m] : 0;
      if (s == 1) return true;
      if (s == 0 && dfs(m)) return true;
    }
    state[n] = 2;
    return false;
  };
  for (const auto& n : nodes)
    if ((state.count(n) ? state[n] : 0) == 0 && dfs(n)) return true;
  return false;
}

}  // namespace

std::vector<ValidationIssue> validate_pfa(const Pfa& p, unsigned granularity) {
  using K = ValidationIssue::Kind;
  std::vector<ValidationIssue> issues;
  auto add = [&](K k, const std::string& d) { issues.push_back({k, d}); };

  if (p.start.empty()) add(K::EmptyStart, "start distribution is empty");
  for (const auto& [n, w] : p.start)
    if (!p.nodes.count(n)) add(K::UnknownNode, "start node " + n);

  std::set<std::string> groupvars;
  for (const auto& g : p.groups) {
    if (g.vars.empty()) add(K::GroupConflict, "empty variable group");
    for (const auto& v : g.vars)
      if (!groupvars.insert(v).second)
        add(K::GroupConflict, "variable " + v + " in more than one group");
  }

  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& t : p.transitions) {
    if (!p.nodes.count(t.from)) add(K::UnknownNode, "transition source " + t.from);
    if (t.action != kTau && !p.alphabet.count(t.action))
      add(K::AlphabetMismatch, "action " + t.action + " not in alphabet");
    if (t.dist.weights.empty())
      add(K::EmptyDist, "transition (" + t.from + ", " + t.action + ")");
    for (const auto& [m, w] : t.dist.weights)
      if (!p.nodes.count(m)) add(K::UnknownNode, "transition target " + m);
    if (!keys.insert({t.from, t.action}).second)
      add(K::DuplicateKey,
          "more than one transition for (" + t.from + ", " + t.action + ")");
    if (!t.dist.sum().is_one())
      add(K::DistSum, "(" + t.from + ", " + t.action + ") weights sum to " +
                          t.dist.sum().str());
  }

  SymProb ssum;
  for (const auto& [n, w] : p.start) ssum += w;
  if (!p.start.empty() && !ssum.is_one())
    add(K::StartSum, "start weights sum to " + ssum.str());

  for (const auto& t : p.transitions)
    for (const auto& [m, w] : t.dist.weights)
      if (p.start.count(m) && !w.is_zero())
        add(K::StartIncoming, "start node " + m + " has an incoming transition");

  if (has_cycle(p.nodes, [&](const std::string& n) {
        std::set<std::string> out;
        for (const auto* t : p.transitions_from(n))
          for (const auto& [m, w] : t->dist.weights) out.insert(m);
        return out;
      }))
    add(K::Cycle, "transition graph has a directed cycle");

  // Range checks on the grid; skipped when structure is already broken in a
  // way that makes the grid ill-defined.
  bool group_ok = std::none_of(issues.begin(), issues.end(), [](const auto& i) {
    return i.kind == K::GroupConflict;
  });
  if (group_ok) {
    auto grid = p.grid(granularity);
    auto check_range = [&](const SymProb& w, const std::string& where) {
      for (const auto& psi : grid) {
        Rat v = w.eval(psi);
        if (v < 0 || v > 1) {
          add(K::Range, where + ": " + w.str() + " = " + rat_str(v) + " at " +
                            assignment_str(psi));
          return;
        }
      }
    };
    for (const auto& [n, w] : p.start) check_range(w, "start weight of " + n);
    for (const auto& t : p.transitions)
      for (const auto& [m, w] : t.dist.weights)
        check_range(w, "weight of " + m + " in (" + t.from + ", " + t.action + ")");
  }
  return issues;
}

std::vector<ValidationIssue> validate_fa(const Fa& a) {
  using K = ValidationIssue::Kind;
  std::vector<ValidationIssue> issues;
  auto add = [&](K k, const std::string& d) { issues.push_back({k, d}); };
  if (a.starts.empty()) add(K::EmptyStart, "start set is empty");
  for (const auto& s : a.starts)
    if (!a.nodes.count(s)) add(K::UnknownNode, "start node " + s);
  for (const auto& [f, x, t] : a.transitions) {
    if (!a.nodes.count(f)) add(K::UnknownNode, "transition source " + f);
    if (!a.nodes.count(t)) add(K::UnknownNode, "transition target " + t);
    if (x != kTau && !a.alphabet.count(x))
      add(K::AlphabetMismatch, "action " + x + " not in alphabet");
    if (a.starts.count(t))
      add(K::StartIncoming, "start node " + t + " has an incoming transition");
  }
  if (has_cycle(a.nodes, [&](const std::string& n) {
        std::set<std::string> out;
        for (const auto& [f, x, t] : a.transitions)
          if (f == n) out.insert(t);
        return out;
      }))
    add(K::Cycle, "transition graph has a directed cycle");
  return issues;
}

void require_valid(const Pfa& p, unsigned granularity) {
  auto issues = validate_pfa(p, granularity);
  if (!issues.empty()) throw StructureError("invalid pfa: " + issue_str(issues[0]));
}

void require_valid(const Fa& a) {
  auto issues = validate_fa(a);
  if (!issues.empty()) throw StructureError("invalid fa: " + issue_str(issues[0]));
}

bool is_dpfa(const Pfa& p) {
  for (const auto& [n, w] : p.start)
    if (!w.vars().empty()) return false;
  for (const auto& t : p.transitions) {
    if (t.action == kTau) return false;
    for (const auto& [m, w] : t.dist.weights)
      if (!w.vars().empty()) return false;
  }
  return true;
}

bool is_det_test(const Fa& a) {
  if (a.starts.size() != 1) return false;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [f, x, t] : a.transitions)
    if (!seen.insert({f, x}).second) return false;
  return true;
}

bool is_det_test(const Pfa& p) {
  if (p.start.size() != 1 || !p.start.begin()->second.is_one()) return false;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& t : p.transitions) {
    if (!seen.insert({t.from, t.action}).second) return false;
    if (!t.dist.is_point_mass()) return false;
  }
  return true;
}

Pfa normal_form(const Pfa& p) {
  require_valid(p);
  Pfa out;
  out.alphabet = p.alphabet;
  out.groups = p.groups;

  unsigned counter = 0;
  // Resolved copies of a node: alternatives (weight, copy id); the copy's
  // transition distributions are all point masses.
  std::map<std::string, std::vector<std::pair<SymProb, std::string>>> memo;

  std::function<const std::vector<std::pair<SymProb, std::string>>&(
      const std::string&)>
      resolve = [&](const std::string& n) -> const auto& {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    std::vector<std::pair<SymProb, std::string>> result;
    auto outgoing = p.transitions_from(n);
    std::sort(outgoing.begin(), outgoing.end(),
              [](const auto* a, const auto* b) { return a->action < b->action; });
    if (outgoing.empty()) {
      std::string copy = n + "~" + std::to_string(counter++);
      out.nodes.insert(copy);
      result.emplace_back(SymProb::one(), copy);
    } else {
      // Per action: every (target, resolved copy of target) alternative.
      struct Option {
        SymProb weight;
        std::string target_copy;
      };
      std::vector<std::pair<std::string, std::vector<Option>>> per_action;
      for (const auto* t : outgoing) {
        std::vector<Option> opts;
        for (const auto& [m, w] : t->dist.weights) {
          for (const auto& [wc, mc] : resolve(m))
            opts.push_back({w * wc, mc});
        }
        per_action.emplace_back(t->action, std::move(opts));
      }
      std::vector<size_t> pick(per_action.size(), 0);
      for (;;) {
        SymProb weight = SymProb::one();
        std::string copy = n + "~" + std::to_string(counter++);
        out.nodes.insert(copy);
        for (size_t i = 0; i < per_action.size(); ++i) {
          const auto& opt = per_action[i].second[pick[i]];
          weight *= opt.weight;
          Distribution d;
          d.weights[opt.target_copy] = SymProb::one();
          out.transitions.push_back({copy, per_action[i].first, std::move(d)});
        }
        result.emplace_back(std::move(weight), copy);
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == per_action[i].second.size()) {
          pick[i] = 0;
          ++i;
        }
        if (i == pick.size()) break;
      }
    }
    return memo.emplace(n, std::move(result)).first->second;
  };

  for (const auto& [s, w] : p.start) {
    for (const auto& [wc, sc] : resolve(s)) {
      SymProb total = w * wc;
      auto it = out.start.find(sc);
      if (it == out.start.end())
        out.start.emplace(sc, total);
      else
        it->second += total;
    }
  }
  out.canonicalize();
  // Copies never referenced by a nonzero weight are garbage.
  std::set<std::string> reachable;
  std::function<void(const std::string&)> mark = [&](const std::string& n) {
    if (!reachable.insert(n).second) return;
    for (const auto& t : out.transitions)
      if (t.from == n)
        for (const auto& [m, w] : t.dist.weights) mark(m);
  };
  for (const auto& [s, w] : out.start) mark(s);
  std::erase_if(out.transitions,
                [&](const auto& t) { return !reachable.count(t.from); });
  out.nodes = reachable;
  return out;
}

namespace {

// Downward structural signature of a node (acyclic automata only).
class PfaSignatures {
 public:
  explicit PfaSignatures(const Pfa& p) : p_(p) {}

  const std::string& sig(const std::string& n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    std::vector<std::string> parts;
    for (const auto* t : p_.transitions_from(n)) {
      std::vector<std::string> entries;
      for (const auto& [m, w] : t->dist.weights)
        entries.push_back(w.str() + "@" + sig(m));
      std::sort(entries.begin(), entries.end());
      std::string s = t->action + ":{";
      for (const auto& e : entries) s += e + ",";
      s += "}";
      parts.push_back(std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    std::string full = "[";
    for (const auto& s : parts) full += s + ";";
    full += "]";
    return memo_.emplace(n, std::move(full)).first->second;
  }

 private:
  const Pfa& p_;
  std::map<std::string, std::string> memo_;
};

class FaSignatures {
 public:
  explicit FaSignatures(const Fa& a) : a_(a) {}

  const std::string& sig(const std::string& n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    std::map<std::string, std::vector<std::string>> per_action;
    for (const auto& [f, x, t] : a_.transitions)
      if (f == n) per_action[x].push_back(sig(t));
    std::string full = "[";
    for (auto& [x, sigs] : per_action) {
      std::sort(sigs.begin(), sigs.end());
      full += x + ":{";
      for (const auto& s : sigs) full += s + ",";
    full += "};";
    }
    full += "]";
    return memo_.emplace(n, std::move(full)).first->second;
  }

 private:
  const Fa& a_;
  std::map<std::string, std::string> memo_;
};

// Generic backtracking bijection search guided by per-node keys.
bool match_nodes(const std::vector<std::string>& an,
                 const std::vector<std::string>& bn,
                 const std::function<std::string(const std::string&, bool)>& key,
                 const std::function<bool(const std::map<std::string, std::string>&)>&
                     verify) {
  if (an.size() != bn.size()) return false;
  std::map<std::string, std::string> mapping;
  std::set<std::string> used;
  std::function<bool(size_t)> go = [&](size_t i) {
    if (i == an.size()) return verify(mapping);
    const std::string ka = key(an[i], true);
    for (const auto& b : bn) {
      if (used.count(b) || key(b, false) != ka) continue;
      mapping[an[i]] = b;
      used.insert(b);
      if (go(i + 1)) return true;
      used.erase(b);
      mapping.erase(an[i]);
    }
    return false;
  };
  return go(0);
}

}  // namespace

bool iso_fa(const Fa& a, const Fa& b) {
  if (a.nodes.size() != b.nodes.size() ||
      a.starts.size() != b.starts.size() ||
      a.transitions.size() != b.transitions.size())
    return false;
  FaSignatures sa(a), sb(b);
  std::vector<std::string> an(a.nodes.begin(), a.nodes.end());
  std::vector<std::string> bn(b.nodes.begin(), b.nodes.end());
  auto key = [&](const std::string& n, bool left) {
    const Fa& f = left ? a : b;
    return std::string(f.starts.count(n) ? "S" : "-") +
           (left ? sa.sig(n) : sb.sig(n));
  };
  auto verify = [&](const std::map<std::string, std::string>& m) {
    std::set<std::tuple<std::string, std::string, std::string>> mapped;
    for (const auto& [f, x, t] : a.transitions)
      mapped.insert({m.at(f), x, m.at(t)});
    if (mapped != b.transitions) return false;
    std::set<std::string> mstarts;
    for (const auto& s : a.starts) mstarts.insert(m.at(s));
    return mstarts == b.starts;
  };
  return match_nodes(an, bn, key, verify);
}

bool iso_pfa(const Pfa& a, const Pfa& b) {
  if (a.nodes.size() != b.nodes.size() || a.start.size() != b.start.size() ||
      a.transitions.size() != b.transitions.size())
    return false;
  PfaSignatures sa(a), sb(b);
  std::vector<std::string> an(a.nodes.begin(), a.nodes.end());
  std::vector<std::string> bn(b.nodes.begin(), b.nodes.end());
  auto key = [&](const std::string& n, bool left) {
    const Pfa& p = left ? a : b;
    auto it = p.start.find(n);
    std::string k = it == p.start.end() ? "-" : ("S" + it->second.str());
    return k + (left ? sa.sig(n) : sb.sig(n));
  };
  auto verify = [&](const std::map<std::string, std::string>& m) {
    std::map<std::string, SymProb> mstart;
    for (const auto& [n, w] : a.start) mstart[m.at(n)] = w;
    if (mstart != b.start) return false;
    std::vector<PfaTransition> mapped;
    for (const auto& t : a.transitions) {
      PfaTransition mt;
      mt.from = m.at(t.from);
      mt.action = t.action;
      for (const auto& [n, w] : t.dist.weights) mt.dist.weights[m.at(n)] = w;
      mapped.push_back(std::move(mt));
    }
    std::vector<PfaTransition> bt = b.transitions;
    std::sort(mapped.begin(), mapped.end());
    std::sort(bt.begin(), bt.end());
    return mapped == bt;
  };
  return match_nodes(an, bn, key, verify);
}

Pfa canonicalize_vars(const Pfa& p) {
  // First-appearance order over a deterministic scan: start entries by node
  // name, then transitions by (from, action, rendered distribution).
  std::vector<std::string> order;
  std::set<std::string> seen;
  auto scan = [&](const SymProb& w) {
    for (const auto& [m, c] : w.terms())
      for (const auto& [v, e] : m)
        if (seen.insert(v).second) order.push_back(v);
  };
  for (const auto& [n, w] : p.start) scan(w);
  std::vector<const PfaTransition*> ts;
  for (const auto& t : p.transitions) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(), [](const auto* a, const auto* b) {
    return std::tie(a->from, a->action) < std::tie(b->from, b->action);
  });
  for (const auto* t : ts)
    for (const auto& [m, w] : t->dist.weights) scan(w);

  std::map<std::string, std::string> rename;
  for (size_t i = 0; i < order.size(); ++i)
    rename[order[i]] = "c" + std::to_string(i);

  auto remap = [&](const SymProb& w) {
    SymProb out;
    for (const auto& [m, c] : w.terms()) {
      SymProb term = SymProb::constant(c);
      for (const auto& [v, e] : m) {
        auto it = rename.find(v);
        const std::string& nv = it == rename.end() ? v : it->second;
        for (unsigned i = 0; i < e; ++i) term *= SymProb::var(nv);
      }
      out += term;
    }
    return out;
  };

  Pfa out;
  out.nodes = p.nodes;
  out.alphabet = p.alphabet;
  for (const auto& [n, w] : p.start) out.start[n] = remap(w);
  for (const auto& t : p.transitions) {
    PfaTransition nt;
    nt.from = t.from;
    nt.action = t.action;
    for (const auto& [m, w] : t.dist.weights) nt.dist.weights[m] = remap(w);
    out.transitions.push_back(std::move(nt));
  }
  for (const auto& g : p.groups) {
    VarGroup ng;
    bool live = true;
    for (const auto& v : g.vars) {
      auto it = rename.find(v);
      if (it == rename.end()) {
        live = false;
        break;
      }
      ng.vars.push_back(it->second);
    }
    if (live) out.groups.push_back(std::move(ng));
  }
  std::sort(out.groups.begin(), out.groups.end(),
            [](const auto& a, const auto& b) { return a.vars < b.vars; });
  std::sort(out.transitions.begin(), out.transitions.end());
  return out;
}

}  // namespace ppfa
