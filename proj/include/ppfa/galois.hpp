#ifndef PPFA_GALOIS_HPP
#define PPFA_GALOIS_HPP

#include "ppfa/refinement.hpp"

namespace ppfa {

/// Maps nondeterminism to parameterised probability: every start set and
/// every multi-target successor set becomes a distribution over fresh grouped
/// variables (k-way splits use k-1 variables); singletons stay at weight one.
Pfa embed(const Fa& a);

/// Forgets probabilities: starts and transition targets are the domains of
/// the corresponding distributions. Zero-weight entries are kept; call
/// Pfa::canonicalize first to drop them.
Fa forget(const Pfa& p);

/// forget(embed(x)) is isomorphic to x (the connection's unit, an equality).
bool check_unit(const Fa& x);

/// embed(forget(y)) refines to y (the connection's counit), checked at
/// bounded depth and grid.
Verdict check_counit(const Pfa& y, unsigned depth, unsigned granularity);

struct AdjunctionResult {
  bool embed_side = false;   // embed(x) refined by y
  bool forget_side = false;  // x refined by forget(y)
  Verdict embed_verdict;
  Verdict forget_verdict;

  bool agree() const { return embed_side == forget_side; }
};

/// Evaluates both sides of the adjunction biconditional at (depth, grid).
AdjunctionResult check_adjunction(const Fa& x, const Pfa& y, unsigned depth,
                                  unsigned granularity);

/// embed distributes through parallel composition: embed(x || y) equals
/// embed(x) || embed(y) up to variable renaming.
bool check_congruence_embed(const Fa& x, const Fa& y,
                            const std::set<std::string>& sync);

/// forget distributes through parallel composition, exactly.
bool check_congruence_forget(const Pfa& x, const Pfa& y,
                             const std::set<std::string>& sync);

struct LemmaEmbedResult {
  bool precondition = false;  // complete traces of x contained in those of y
  bool domains_ok = false;    // every instantiated domain within Tr^c(y)
  bool achievable = false;    // every instantiated dist produced by embed(y)
};

/// Trace containment lifts to distribution containment under embedding,
/// checked at the shared grid.
LemmaEmbedResult check_lemma_embed(const Fa& x, const Fa& y,
                                   unsigned granularity);

struct GaloisReport {
  bool unit_ok = false;
  Verdict counit;
  AdjunctionResult adjunction;

  std::string str() const;
};

GaloisReport galois_report(const Fa& x, const Pfa& y, unsigned depth,
                           unsigned granularity);

}  // namespace ppfa

#endif
