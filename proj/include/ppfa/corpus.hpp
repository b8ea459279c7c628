#ifndef PPFA_CORPUS_HPP
#define PPFA_CORPUS_HPP

#include <random>

#include "ppfa/automata.hpp"

namespace ppfa {

/// Seeded generators for small random automata, built by composing the
/// process operators so every sample is valid by construction.
struct CorpusOptions {
  std::vector<std::string> alphabet = {"a", "b"};
  unsigned depth = 2;          // recursion depth of the expression tree
  bool with_external = true;   // allow external choice
  bool with_parallel = true;   // allow parallel composition
};

/// Random Pfa assembled from prefix, internal, probabilistic, external and
/// parallel composition (subject to options). Constants are multiples of 1/2
/// so grid 2 reaches them.
Pfa random_pfa(std::mt19937_64& rng, const CorpusOptions& opt);

/// Random Pfa from the prefix/choice fragment only: no node ever offers two
/// actions, so the complete-trace distribution is normalized.
Pfa random_choice_pfa(std::mt19937_64& rng, const CorpusOptions& opt);

/// Random Fa assembled from the Fa operators.
Fa random_fa(std::mt19937_64& rng, const CorpusOptions& opt);

/// Random multi-start Fa whose every (node, action) pair has at most one
/// successor (nondeterminism lives in the start set only).
Fa random_det_branch_fa(std::mt19937_64& rng, const CorpusOptions& opt);

/// Single-start deterministic tree automaton.
Fa random_det_tree(std::mt19937_64& rng, const CorpusOptions& opt);

/// Keeps a random nonempty subset of the start nodes and garbage-collects
/// what becomes unreachable: the result refines the input.
Fa restrict_starts(const Fa& a, std::mt19937_64& rng);

}  // namespace ppfa

#endif
