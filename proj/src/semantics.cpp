#include "ppfa/semantics.hpp"

#include <algorithm>
#include <sstream>

namespace ppfa {

Trace erase_tau(const std::vector<std::string>& actions) {
  Trace t;
  for (const auto& a : actions)
    if (a != kTau) t.push_back(a);
  return t;
}

Trace Path::trace() const {
  std::vector<std::string> actions;
  for (const auto& s : steps) actions.push_back(s.action);
  return erase_tau(actions);
}

namespace {

/// Suffix traces reachable from a node, memoized; `complete` restricts to
/// maximal runs, otherwise every prefix is kept.
const std::set<Trace>& node_traces(const Fa& a, const std::string& node,
                                   bool complete,
                                   std::map<std::string, std::set<Trace>>& memo) {
  auto it = memo.find(node);
  if (it != memo.end()) return it->second;
  std::set<Trace> out;
  bool terminal = true;
  for (const auto& [f, x, t] : a.transitions) {
    if (f != node) continue;
    terminal = false;
    for (const auto& suffix : node_traces(a, t, complete, memo)) {
      Trace tr;
      if (x != kTau) tr.push_back(x);
      tr.insert(tr.end(), suffix.begin(), suffix.end());
      out.insert(std::move(tr));
    }
  }
  if (terminal || !complete) out.insert(Trace{});
  return memo[node] = std::move(out);
}

std::set<Trace> collect(const Fa& a, bool complete) {
  std::map<std::string, std::set<Trace>> memo;
  std::set<Trace> out;
  for (const auto& s : a.starts) {
    const auto& ts = node_traces(a, s, complete, memo);
    out.insert(ts.begin(), ts.end());
  }
  return out;
}

}  // namespace

std::set<Trace> fa_traces(const Fa& a) { return collect(a, false); }

std::set<Trace> fa_complete_traces(const Fa& a) { return collect(a, true); }

namespace {

void extend_paths(const Pfa& p, Path& cur, const std::string& node,
                  std::vector<Path>& out) {
  auto ts = p.transitions_from(node);
  if (ts.empty()) {
    out.push_back(cur);
    return;
  }
  for (const PfaTransition* t : ts) {
    for (const auto& [target, weight] : t->dist.weights) {
      if (weight.is_zero()) continue;
      cur.steps.push_back({t->action, target, weight});
      extend_paths(p, cur, target, out);
      cur.steps.pop_back();
    }
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const Pfa& p) {
  std::vector<Path> out;
  for (const auto& [s, w] : p.start) {
    if (w.is_zero()) continue;
    Path cur;
    cur.start = s;
    extend_paths(p, cur, s, out);
  }
  return out;
}

SymProb path_prob(const Pfa& p, const Path& path) {
  auto it = p.start.find(path.start);
  if (it == p.start.end())
    throw StructureError("path starts at non-start node " + path.start);
  SymProb prob = it->second;
  std::string node = path.start;
  for (const auto& step : path.steps) {
    bool found = false;
    for (const PfaTransition* t : p.transitions_from(node)) {
      if (t->action != step.action) continue;
      auto w = t->dist.weights.find(step.target);
      if (w == t->dist.weights.end() || !(w->second == step.weight)) continue;
      found = true;
      break;
    }
    if (!found)
      throw StructureError("path step " + node + " --" + step.action + "--> " +
                           step.target + " not present in automaton");
    prob = prob * step.weight;
    node = step.target;
  }
  return prob;
}

TraceDist complete_trace_dist(const Pfa& p) {
  TraceDist d;
  for (const auto& path : enumerate_paths(p)) {
    SymProb w = path_prob(p, path);
    auto [it, inserted] = d.emplace(path.trace(), w);
    if (!inserted) it->second = it->second + w;
  }
  for (auto it = d.begin(); it != d.end();)
    it = it->second.is_zero() ? d.erase(it) : std::next(it);
  return d;
}

SymProb trace_prob(const Pfa& p, const Trace& rho) {
  TraceDist d = complete_trace_dist(p);
  auto it = d.find(rho);
  return it == d.end() ? SymProb::zero() : it->second;
}

RatTraceDist instantiate_dist(const TraceDist& d, const ParamAssignment& psi) {
  RatTraceDist out;
  for (const auto& [t, w] : d) {
    Rat v = w.eval(psi);
    if (v != 0) out[t] = v;
  }
  return out;
}

std::string render_trace(const Trace& t) {
  if (t.empty()) return "<>";
  std::string out;
  for (const auto& a : t) {
    if (!out.empty()) out += ".";
    out += a;
  }
  return out;
}

std::string render_trace_dist(const TraceDist& d) {
  std::ostringstream os;
  for (const auto& [t, w] : d) os << render_trace(t) << " -> " << w.str() << "\n";
  return os.str();
}

std::string render_rat_trace_dist(const RatTraceDist& d) {
  std::ostringstream os;
  for (const auto& [t, w] : d) os << render_trace(t) << " -> " << rat_str(w) << "\n";
  return os.str();
}

}  // namespace ppfa
