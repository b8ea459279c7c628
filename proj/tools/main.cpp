#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ppfa/corpus.hpp"
#include "ppfa/dsl.hpp"
#include "ppfa/galois.hpp"
#include "ppfa/operators.hpp"

namespace {

using namespace ppfa;

struct Loaded {
  bool is_fa = false;
  bool from_dsl = false;
  Fa fa;
  Pfa pfa;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool looks_like_automaton(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::string head = line.substr(b);
    while (!head.empty() && (head.back() == ' ' || head.back() == '\r'))
      head.pop_back();
    return head == "fa" || head == "pfa";
  }
  return false;
}

/// Loads an automaton file or a process file (elaborated to its automaton).
/// Structural validation failures are fatal; duplicate (node, action) keys are
/// reported as warnings because parallel composition legitimately creates them.
Loaded load(const std::string& path) {
  std::string text = slurp(path);
  Loaded out;
  if (looks_like_automaton(text)) {
    ParsedAutomaton pa = parse_automaton(text);
    out.is_fa = pa.is_fa;
    out.fa = std::move(pa.fa);
    out.pfa = std::move(pa.pfa);
  } else {
    out.from_dsl = true;
    out.pfa = elaborate(parse_process_file(text));
  }
  std::vector<ValidationIssue> issues =
      out.is_fa ? validate_fa(out.fa) : validate_pfa(out.pfa);
  bool fatal = false;
  for (const auto& i : issues) {
    if (i.kind == ValidationIssue::Kind::DuplicateKey) {
      std::cerr << path << ": warning: " << issue_str(i) << "\n";
    } else {
      std::cerr << path << ": " << issue_str(i) << "\n";
      fatal = true;
    }
  }
  if (fatal) throw Error(path + ": validation failed");
  return out;
}

Pfa as_pfa(const Loaded& l) { return l.is_fa ? embed(l.fa) : l.pfa; }
Fa as_fa(const Loaded& l) { return l.is_fa ? l.fa : forget(l.pfa); }

std::set<std::string> parse_action_list(const std::string& text) {
  std::set<std::string> out;
  std::istringstream is(text);
  std::string a;
  while (std::getline(is, a, ',')) {
    size_t b = a.find_first_not_of(" \t");
    size_t e = a.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.insert(a.substr(b, e - b + 1));
  }
  return out;
}

int cmd_parse(const std::string& path) {
  std::string text = slurp(path);
  if (looks_like_automaton(text)) {
    ParsedAutomaton pa = parse_automaton(text);
    std::cout << (pa.is_fa ? render_fa(pa.fa) : render_pfa(pa.pfa));
  } else {
    std::cout << render_process_file(parse_process_file(text));
  }
  return 0;
}

int cmd_compile(const std::string& path) {
  Loaded l = load(path);
  std::cout << (l.is_fa ? render_fa(l.fa) : render_pfa(l.pfa));
  return 0;
}

int cmd_dist(const std::string& path, int grid) {
  Pfa p = as_pfa(load(path));
  TraceDist d = complete_trace_dist(p);
  if (grid < 0) {
    std::cout << render_trace_dist(d);
    return 0;
  }
  for (const auto& psi : p.grid(unsigned(grid))) {
    std::cout << "[" << assignment_str(psi) << "]\n";
    std::cout << render_rat_trace_dist(instantiate_dist(d, psi));
  }
  return 0;
}

int cmd_traces(const std::string& path) {
  Fa a = as_fa(load(path));
  std::cout << "traces:\n";
  for (const auto& t : fa_traces(a)) std::cout << "  " << render_trace(t) << "\n";
  std::cout << "complete:\n";
  for (const auto& t : fa_complete_traces(a))
    std::cout << "  " << render_trace(t) << "\n";
  return 0;
}

int cmd_refine(const std::string& spec_path, const std::string& impl_path,
               unsigned depth, unsigned grid, const std::string& sync_arg) {
  Loaded spec = load(spec_path);
  Loaded impl = load(impl_path);
  std::set<std::string> sync;
  if (sync_arg == "auto") {
    const auto& sa = spec.is_fa ? spec.fa.alphabet : spec.pfa.alphabet;
    const auto& ia = impl.is_fa ? impl.fa.alphabet : impl.pfa.alphabet;
    for (const auto& a : sa)
      if (ia.count(a)) sync.insert(a);
  } else {
    sync = parse_action_list(sync_arg);
  }
  Verdict v = (spec.is_fa && impl.is_fa)
                  ? fa_refines(spec.fa, impl.fa, depth, sync)
                  : pfa_refines(as_pfa(spec), as_pfa(impl), depth, grid, sync);
  std::cout << v.report();
  return v.refines ? 0 : 1;
}

int cmd_equal(const std::string& a_path, const std::string& b_path,
              unsigned depth, unsigned grid) {
  bool eq = pfa_test_equal(as_pfa(load(a_path)), as_pfa(load(b_path)), depth,
                           grid);
  std::cout << (eq ? "equal" : "not equal") << "\n";
  return eq ? 0 : 1;
}

int cmd_embed(const std::string& path) {
  Loaded l = load(path);
  if (!l.is_fa) throw Error(path + ": embed expects a plain automaton (fa) file");
  std::cout << render_pfa(embed(l.fa));
  return 0;
}

int cmd_forget(const std::string& path) {
  Pfa p = as_pfa(load(path));
  p.canonicalize();
  std::cout << render_fa(forget(p));
  return 0;
}

int cmd_normal(const std::string& path) {
  std::cout << render_pfa(normal_form(as_pfa(load(path))));
  return 0;
}

int cmd_laws(const std::string& path, unsigned depth, unsigned grid) {
  Pfa p = as_pfa(load(path));
  bool all_ok = true;
  auto line = [&](const std::string& name, bool ok) {
    std::cout << "law " << name << ": " << (ok ? "ok" : "FAILED") << "\n";
    all_ok = all_ok && ok;
  };

  line("internal-choice idempotent",
       pfa_test_equal(pfa_internal(p, p), p, depth, grid));
  line("probabilistic-choice idempotent",
       pfa_test_equal(pfa_prob_choice(p, p, parse_prob("1/2")), p, depth, grid));

  std::string a = p.alphabet.empty() ? "a" : *p.alphabet.begin();
  Pfa folded = pfa_prefix(a, pfa_prob_choice(p, pfa_stop(), parse_prob("1/2")));
  Pfa spread = pfa_prob_choice(pfa_prefix(a, p), pfa_prefix(a, pfa_stop()),
                               parse_prob("1/2"));
  line("prefix migrates over probabilistic choice",
       pfa_test_equal(folded, spread, depth, grid));

  line("normal form equivalent", pfa_test_equal(normal_form(p), p, depth, grid));

  TraceDist d = complete_trace_dist(p);
  SymProb total;
  for (const auto& [t, w] : d) total += w;
  bool norm = total.is_one();
  for (const auto& psi : p.grid(grid)) {
    Rat sum = 0;
    for (const auto& [t, w] : instantiate_dist(d, psi)) {
      Rat r = w;
      norm = norm && r >= 0 && r <= 1;
      sum += r;
    }
    norm = norm && sum == 1;
  }
  line("complete-trace distribution normalized", norm);

  return all_ok ? 0 : 1;
}

int cmd_galois(unsigned seed, unsigned count, unsigned depth, unsigned grid) {
  std::mt19937_64 rng(seed);
  CorpusOptions opt;
  // Parallel-built samples carry tau transitions whose free interleaving with
  // the observer action double-counts commuting paths in the path-sum
  // semantics, so the adjunction corpus stays in the tau-free fragment.
  opt.with_parallel = false;
  unsigned unit_fail = 0, counit_fail = 0, disagree = 0;
  for (unsigned i = 0; i < count; ++i) {
    Fa x = random_fa(rng, opt);
    Pfa y = random_pfa(rng, opt);
    GaloisReport r = galois_report(x, y, depth, grid);
    if (!r.unit_ok) ++unit_fail;
    if (!r.counit.refines) ++counit_fail;
    if (!r.adjunction.agree()) ++disagree;
    std::cout << "sample " << i << ": unit " << (r.unit_ok ? "ok" : "FAILED")
              << ", counit " << (r.counit.refines ? "ok" : "FAILED")
              << ", adjunction "
              << (r.adjunction.agree() ? "agrees" : "DISAGREES") << "\n";
  }
  std::cout << "samples: " << count << ", unit failures: " << unit_fail
            << ", counit failures: " << counit_fail
            << ", adjunction disagreements: " << disagree << "\n";
  return (unit_fail || counit_fail || disagree) ? 1 : 0;
}

int cmd_contexts(const std::string& alphabet_arg, unsigned depth) {
  std::set<std::string> sigma = parse_action_list(alphabet_arg);
  std::vector<TestContext> ctxs = enumerate_contexts(sigma, depth);
  std::cout << "contexts: " << ctxs.size() << "\n";
  for (size_t i = 0; i < ctxs.size(); ++i)
    std::cout << "# context " << i << "\n" << render_fa(ctxs[i].fa);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Parameterised probabilistic automata: composition, trace semantics, "
      "testing refinement"};
  app.require_subcommand(1);

  std::string file, file2;
  unsigned depth = 2, grid = 2, seed = 1, count = 20;
  int opt_grid = -1;
  std::string sync = "auto", alphabet = "a,b";

  auto* parse = app.add_subcommand("parse", "Echo a file in canonical form");
  parse->add_option("file", file)->required();

  auto* compile =
      app.add_subcommand("compile", "Build the automaton for a process file");
  compile->add_option("file", file)->required();

  auto* dist = app.add_subcommand(
      "dist", "Complete-trace distribution, optionally instantiated on a grid");
  dist->add_option("file", file)->required();
  dist->add_option("--grid", opt_grid, "granularity of instantiation");

  auto* traces = app.add_subcommand("traces", "Traces and complete traces");
  traces->add_option("file", file)->required();

  auto* refine = app.add_subcommand("refine", "Testing refinement: spec <= impl");
  refine->add_option("spec", file)->required();
  refine->add_option("impl", file2)->required();
  refine->add_option("--depth", depth, "context depth bound");
  refine->add_option("--grid", grid, "instantiation granularity");
  refine->add_option("--sync", sync,
                     "synchronized actions: comma list, or auto = the "
                     "intersection of the two alphabets");

  auto* equal = app.add_subcommand("equal", "Mutual testing refinement");
  equal->add_option("a", file)->required();
  equal->add_option("b", file2)->required();
  equal->add_option("--depth", depth);
  equal->add_option("--grid", grid);

  auto* embed_cmd =
      app.add_subcommand("embed", "Nondeterminism to parameterised probability");
  embed_cmd->add_option("file", file)->required();

  auto* forget_cmd = app.add_subcommand("forget", "Drop probabilities");
  forget_cmd->add_option("file", file)->required();

  auto* laws = app.add_subcommand("laws", "Check the algebraic laws on a process");
  laws->add_option("file", file)->required();
  laws->add_option("--depth", depth);
  laws->add_option("--grid", grid);

  auto* galois_cmd = app.add_subcommand(
      "galois", "Unit/counit/adjunction checks on random samples");
  galois_cmd->add_option("--seed", seed);
  galois_cmd->add_option("--count", count);
  galois_cmd->add_option("--depth", depth);
  galois_cmd->add_option("--grid", grid);

  auto* contexts =
      app.add_subcommand("contexts", "Enumerate deterministic test contexts");
  contexts->add_option("--alphabet", alphabet, "comma-separated actions");
  contexts->add_option("--depth", depth);

  auto* normal = app.add_subcommand("normal", "Normal form of a process");
  normal->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (parse->parsed()) return cmd_parse(file);
    if (compile->parsed()) return cmd_compile(file);
    if (dist->parsed()) return cmd_dist(file, opt_grid);
    if (traces->parsed()) return cmd_traces(file);
    if (refine->parsed()) return cmd_refine(file, file2, depth, grid, sync);
    if (equal->parsed()) return cmd_equal(file, file2, depth, grid);
    if (embed_cmd->parsed()) return cmd_embed(file);
    if (forget_cmd->parsed()) return cmd_forget(file);
    if (laws->parsed()) return cmd_laws(file, depth, grid);
    if (galois_cmd->parsed()) return cmd_galois(seed, count, depth, grid);
    if (contexts->parsed()) return cmd_contexts(alphabet, depth);
    if (normal->parsed()) return cmd_normal(file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
