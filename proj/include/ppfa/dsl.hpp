#ifndef PPFA_DSL_HPP
#define PPFA_DSL_HPP

#include <memory>

#include "ppfa/automata.hpp"

namespace ppfa {

/// Process-expression AST. Operators, loosest first: |~| (internal choice),
/// +[p] (probabilistic choice), [] (external choice), ||{a,b} (parallel over
/// a set), action prefix. All binary operators are left-associative.
struct ProcessExpr {
  enum class Kind { Stop, Prefix, Internal, Prob, External, Parallel, Ref };

  Kind kind = Kind::Stop;
  std::string name;             // Prefix: action; Ref: definition name
  SymProb prob;                 // Prob
  std::set<std::string> sync;   // Parallel
  std::shared_ptr<ProcessExpr> left, right;  // Prefix uses left only
  int line = 0, col = 0;
};

using ExprPtr = std::shared_ptr<ProcessExpr>;

/// A process file: `name = expr` definitions, one per line; the `main`
/// definition is the entry point.
struct ProcessFile {
  std::vector<std::pair<std::string, ExprPtr>> defs;

  const ExprPtr* find(const std::string& name) const;
};

/// Parses a single process expression.
ExprPtr parse_process(const std::string& text);

/// Parses a full definition file.
ProcessFile parse_process_file(const std::string& text);

/// Canonical rendering; parse_process(render_process(e)) reproduces e.
std::string render_process(const ProcessExpr& e);
std::string render_process_file(const ProcessFile& f);

/// Builds the automaton for `main` (or for the given definition). Each
/// reference expands to a fresh copy: node names and choice variables are
/// never shared between occurrences.
Pfa elaborate(const ProcessFile& f, const std::string& entry = "main");
Pfa elaborate_expr(const ExprPtr& e);

}  // namespace ppfa

#endif
