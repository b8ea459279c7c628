#ifndef PPFA_AUTOMATA_HPP
#define PPFA_AUTOMATA_HPP

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ppfa/prob.hpp"

namespace ppfa {

/// The silent action. Synchronised events are labelled with it; it never
/// appears in an automaton's visible alphabet and is unobservable in traces.
inline const std::string kTau = "tau";

/// Plain finite automaton: start-state set and relational transitions.
struct Fa {
  std::set<std::string> nodes;
  std::set<std::string> alphabet;  // visible actions only
  std::set<std::string> starts;
  std::set<std::tuple<std::string, std::string, std::string>> transitions;

  bool operator==(const Fa&) const = default;

  std::set<std::string> successors(const std::string& node,
                                   const std::string& action) const;
  bool has_outgoing(const std::string& node) const;
};

/// Probability distribution over nodes; weights are probability terms.
struct Distribution {
  std::map<std::string, SymProb> weights;

  bool operator==(const Distribution&) const = default;
  friend bool operator<(const Distribution& a, const Distribution& b) {
    return a.weights < b.weights;
  }

  SymProb sum() const;
  bool is_point_mass() const;
  /// Drops identically-zero entries.
  void canonicalize();
};

struct PfaTransition {
  std::string from;
  std::string action;
  Distribution dist;

  bool operator==(const PfaTransition&) const = default;
  friend bool operator<(const PfaTransition& a, const PfaTransition& b) {
    return std::tie(a.from, a.action, a.dist) < std::tie(b.from, b.action, b.dist);
  }
};

/// Parameterised probabilistic finite automaton. The transition list may hold
/// several entries per (node, action) pair: parallel composition produces
/// them, and validation reports them as a uniqueness violation on automata
/// that are meant to be well formed in isolation.
struct Pfa {
  std::set<std::string> nodes;
  std::set<std::string> alphabet;
  std::map<std::string, SymProb> start;
  std::vector<PfaTransition> transitions;
  std::vector<VarGroup> groups;

  bool operator==(const Pfa&) const = default;

  std::vector<const PfaTransition*> transitions_from(const std::string& node) const;
  bool has_outgoing(const std::string& node) const;
  std::set<std::string> free_vars() const;
  /// Variables not covered by any registered group.
  std::set<std::string> ungrouped_vars() const;
  /// Grid assignments over this automaton's groups and free variables.
  std::vector<ParamAssignment> grid(unsigned granularity) const;

  /// Drops zero start weights and zero distribution entries, discards groups
  /// whose variables no longer occur, and sorts transitions.
  void canonicalize();
};

/// STOP: single anonymous node, no transitions.
Pfa pfa_stop();
Fa fa_stop();

struct ValidationIssue {
  enum class Kind {
    UnknownNode,
    EmptyStart,
    StartSum,
    DistSum,
    DuplicateKey,
    Cycle,
    Range,
    StartIncoming,
    EmptyDist,
    GroupConflict,
    AlphabetMismatch,
  };
  Kind kind;
  std::string detail;
};

std::string issue_str(const ValidationIssue& issue);

/// Report-based validation; empty result iff the automaton satisfies every
/// structural invariant. Range checks sample the grid at `granularity`.
std::vector<ValidationIssue> validate_pfa(const Pfa& p, unsigned granularity = 4);
std::vector<ValidationIssue> validate_fa(const Fa& a);

/// Throwing wrappers for places that require a valid operand.
void require_valid(const Pfa& p, unsigned granularity = 4);
void require_valid(const Fa& a);

/// No parameters and no tau transitions.
bool is_dpfa(const Pfa& p);

/// Deterministic test automaton: single start, at most one successor per
/// (node, action); for Pfa additionally point-mass distributions and no
/// parameters.
bool is_det_test(const Fa& a);
bool is_det_test(const Pfa& p);

/// Migrates all probabilistic branching into the start distribution: every
/// transition distribution of the result is a point mass. Testing-equivalent
/// to the input; exact on the level of complete-trace polynomials.
Pfa normal_form(const Pfa& p);

/// Structure-preserving isomorphism (exact probability terms must match).
bool iso_fa(const Fa& a, const Fa& b);
bool iso_pfa(const Pfa& a, const Pfa& b);

/// Renames parameters to canonical names c0, c1, ... in a deterministic
/// traversal order, so that automata differing only in variable names compare
/// equal under iso_pfa.
Pfa canonicalize_vars(const Pfa& p);

// --- interchange format (io.cpp) ---

std::string render_fa(const Fa& a);
std::string render_pfa(const Pfa& p);

struct ParsedAutomaton {
  bool is_fa = false;
  Fa fa;
  Pfa pfa;
};

/// Parses the textual interchange format; the first non-blank line selects
/// the kind ("fa" or "pfa").
ParsedAutomaton parse_automaton(const std::string& text);

}  // namespace ppfa

#endif
