#ifndef PPFA_OPERATORS_HPP
#define PPFA_OPERATORS_HPP

#include "ppfa/automata.hpp"

namespace ppfa {

/// Start-state gluing: each start node of either operand maps to the set of
/// product start nodes replacing it.
struct GlueSubstitution {
  std::map<std::string, std::set<std::string>> mapping;
};

GlueSubstitution glue_substitution(const std::set<std::string>& starts_a,
                                   const std::set<std::string>& starts_b);

std::string product_node(const std::string& l, const std::string& r);

/// Renames operand nodes apart ("l." / "r." prefixes) when the node sets
/// intersect. Variables are never renamed: composing an automaton with itself
/// deliberately shares its parameters.
void make_disjoint(Pfa& a, Pfa& b);
void make_disjoint(Fa& a, Fa& b);

Fa fa_prefix(const std::string& action, const Fa& b);
Pfa pfa_prefix(const std::string& action, const Pfa& b);

Fa fa_internal(const Fa& a, const Fa& b);
Pfa pfa_internal(const Pfa& a, const Pfa& b);
/// Internal choice with a caller-chosen fresh variable (must not occur in
/// either operand).
Pfa pfa_internal(const Pfa& a, const Pfa& b, const std::string& var);

/// Probabilistic choice with an explicit term; internal choice is this with a
/// fresh variable. Throws RangeError if p leaves [0,1] on the grid.
Pfa pfa_prob_choice(const Pfa& a, const Pfa& b, const SymProb& p);

Fa fa_external(const Fa& a, const Fa& b);
/// Throws StructureError if glued starts would need two transitions for the
/// same (node, action) pair.
Pfa pfa_external(const Pfa& a, const Pfa& b);

Fa fa_parallel(const Fa& a, const Fa& b, const std::set<std::string>& sync);
Pfa pfa_parallel(const Pfa& a, const Pfa& b, const std::set<std::string>& sync);

}  // namespace ppfa

#endif
