#ifndef PPFA_REFINEMENT_HPP
#define PPFA_REFINEMENT_HPP

#include "ppfa/semantics.hpp"

namespace ppfa {

/// A deterministic tree-shaped test automaton plus the action set it
/// synchronizes over when applied.
struct TestContext {
  Fa fa;
  std::set<std::string> sync;

  bool operator==(const TestContext&) const = default;
};

/// Point-mass probabilistic image of the context (Det_FA into Det_PPFA).
Pfa context_pfa(const TestContext& x);

/// Places the process in the context: parallel composition over the context's
/// synchronization set. Throws StructureError if the synchronization set is
/// not covered by the context's alphabet.
Fa apply_context(const Fa& a, const TestContext& x);
Pfa apply_context(const Pfa& p, const TestContext& x);

/// All deterministic tree-shaped contexts of depth <= depth over the given
/// alphabet, each synchronizing over the full alphabet. Deterministic order;
/// if the full set exceeds `cap`, the smallest contexts (by node count) are
/// kept, with a deterministic generation bound.
std::vector<TestContext> enumerate_contexts(const std::set<std::string>& alphabet,
                                            unsigned depth, size_t cap = 4096);

/// Outcome of a bounded refinement check. A negative verdict is a proof and
/// carries a replayable witness; a positive verdict is evidence up to the
/// explored depth and grid.
struct Verdict {
  bool refines = true;
  size_t contexts_checked = 0;

  // witness, populated when refines is false
  TestContext context;
  ParamAssignment psi;              // Pfa checks only
  RatTraceDist offending_dist;      // Pfa checks only
  Trace offending_trace;            // Fa checks only

  std::string report() const;
};

/// Bounded check of testing refinement for FA: spec refined by impl iff every
/// enumerated context x satisfies Tr^c([impl]_x) subset of Tr^c([spec]_x).
/// Contexts synchronize over `sync` when given, otherwise over the union of
/// both alphabets, and always carry one extra unsynchronized observer action.
Verdict fa_refines(const Fa& spec, const Fa& impl, unsigned depth);
Verdict fa_refines(const Fa& spec, const Fa& impl, unsigned depth,
                   const std::set<std::string>& sync);

/// The relational semantics restricted to the given contexts: for each
/// context, every grid instantiation of the complete-trace distribution of
/// the process in that context.
using SemanticsSet = std::set<std::pair<size_t, RatTraceDist>>;
SemanticsSet pfa_semantics(const Pfa& p, const std::vector<TestContext>& contexts,
                           unsigned granularity);

/// Bounded check of probabilistic testing refinement: impl's semantic set
/// contained in spec's over shared contexts and grid granularity.
Verdict pfa_refines(const Pfa& spec, const Pfa& impl, unsigned depth,
                    unsigned granularity);
Verdict pfa_refines(const Pfa& spec, const Pfa& impl, unsigned depth,
                    unsigned granularity, const std::set<std::string>& sync);

/// Asymmetric granularities: the specification's semantics is sampled at
/// spec_granularity, the implementation's at impl_granularity. Sampling the
/// specification on a finer grid avoids spurious counterexamples when the
/// implementation's weights are products of grid values (1/2 * 1/2 = 1/4 is
/// outside grid 2); the check stays sound, since the true semantics ranges
/// over all assignments.
Verdict pfa_refines(const Pfa& spec, const Pfa& impl, unsigned depth,
                    unsigned spec_granularity, unsigned impl_granularity,
                    const std::set<std::string>& sync);

/// Mutual refinement.
bool pfa_test_equal(const Pfa& a, const Pfa& b, unsigned depth,
                    unsigned granularity);

}  // namespace ppfa

#endif
