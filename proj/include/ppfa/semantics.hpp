#ifndef PPFA_SEMANTICS_HPP
#define PPFA_SEMANTICS_HPP

#include "ppfa/automata.hpp"

namespace ppfa {

/// Observed (tau-erased) action sequence.
using Trace = std::vector<std::string>;

/// Finite map from observed traces to probability terms; no zero entries.
using TraceDist = std::map<Trace, SymProb>;

/// Instantiated counterpart with exact rational values.
using RatTraceDist = std::map<Trace, Rat>;

struct PathStep {
  std::string action;
  std::string target;
  SymProb weight;

  bool operator==(const PathStep&) const = default;
};

/// A maximal run: start node plus the chosen transition steps.
struct Path {
  std::string start;
  std::vector<PathStep> steps;

  bool operator==(const Path&) const = default;

  Trace trace() const;  // tau-erased action sequence
};

/// Drops tau from an action sequence.
Trace erase_tau(const std::vector<std::string>& actions);

/// All observable traces (prefix-closed, includes the empty trace).
std::set<Trace> fa_traces(const Fa& a);

/// Traces of maximal runs: those ending in a node without outgoing
/// transitions.
std::set<Trace> fa_complete_traces(const Fa& a);

/// All maximal paths from start nodes carrying nonzero weight, in a
/// deterministic order. Requires an acyclic automaton.
std::vector<Path> enumerate_paths(const Pfa& p);

/// Start weight times the step weights. Throws StructureError if the path is
/// not consistent with the automaton.
SymProb path_prob(const Pfa& p, const Path& path);

/// Summed probability of the maximal paths observed as `rho` (zero polynomial
/// if none).
SymProb trace_prob(const Pfa& p, const Trace& rho);

/// The distribution over complete traces: maximal-path probabilities
/// aggregated per observed trace, zero entries dropped.
TraceDist complete_trace_dist(const Pfa& p);

/// Evaluates every entry at `psi`, dropping entries that become zero.
RatTraceDist instantiate_dist(const TraceDist& d, const ParamAssignment& psi);

std::string render_trace(const Trace& t);  // "a.b", "<>" when empty
std::string render_trace_dist(const TraceDist& d);
std::string render_rat_trace_dist(const RatTraceDist& d);

}  // namespace ppfa

#endif
