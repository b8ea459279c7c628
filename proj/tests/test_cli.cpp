#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string g_binary;
std::string g_data;

struct RunResult {
  int code = -1;
  std::string out;
};

/// Runs the tool with the given arguments, capturing stdout and the exit
/// code; stderr is folded into the stream when merge_stderr is set.
RunResult run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = "\"" + g_binary + "\" " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return g_data + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("compile and parse") {
  RunResult r = run("compile " + data("branch.proc"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("pfa\n", 0) == 0);
  CHECK(contains(r.out, "3/4"));

  r = run("parse " + data("idem.proc"));
  CHECK(r.code == 0);
  CHECK(r.out == "p = a.stop\nmain = p |~| p\n");

  r = run("parse " + data("ex1a.fa"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("fa\n", 0) == 0);
  CHECK(contains(r.out, "s1 --a--> t1"));
}

TEST_CASE("dist and traces") {
  RunResult r = run("dist " + data("branch.proc"));
  CHECK(r.code == 0);
  CHECK(r.out == "a.b -> 3/4\na.c -> 1/4\n");

  r = run("dist " + data("branch.proc") + " --grid 1");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "a.b -> 3/4"));

  r = run("traces " + data("branch.proc"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "traces:"));
  CHECK(contains(r.out, "  a.b"));
  CHECK(contains(r.out, "complete:"));
}

TEST_CASE("compiled output reloads with identical semantics") {
  RunResult compiled = run("compile " + data("branch.proc"));
  REQUIRE(compiled.code == 0);
  std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / "ppfa_cli_branch.pa";
  {
    std::ofstream out(tmp);
    out << compiled.out;
  }
  RunResult direct = run("dist " + data("branch.proc"));
  RunResult reloaded = run("dist " + tmp.string());
  CHECK(reloaded.code == 0);
  CHECK(reloaded.out == direct.out);
  std::filesystem::remove(tmp);
}

TEST_CASE("refine verdicts and exit codes") {
  RunResult r = run("refine " + data("branch.proc") + " " + data("branch.proc") +
                    " --depth 2 --grid 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "refines"));

  r = run("refine " + data("branch_q.proc") + " " + data("branch.proc") +
          " --depth 2 --grid 4");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "counterexample"));
  CHECK(contains(r.out, "context:"));

  r = run("refine " + data("single.proc") + " " + data("single.proc") +
          " --sync a");
  CHECK(r.code == 0);
}

TEST_CASE("equal") {
  RunResult r = run("equal " + data("idem.proc") + " " + data("single.proc") +
                    " --depth 2 --grid 2");
  CHECK(r.code == 0);
  CHECK(r.out == "equal\n");

  r = run("equal " + data("branch.proc") + " " + data("single.proc") +
          " --depth 2 --grid 2");
  CHECK(r.code == 1);
  CHECK(r.out == "not equal\n");
}

TEST_CASE("embed, forget, normal") {
  RunResult r = run("embed " + data("ex1a.fa"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("pfa\n", 0) == 0);
  CHECK(contains(r.out, "v0"));

  r = run("embed " + data("branch.proc"), true);
  CHECK(r.code == 2);

  r = run("forget " + data("branch.proc"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("fa\n", 0) == 0);

  r = run("normal " + data("branch.proc"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("pfa\n", 0) == 0);
}

TEST_CASE("laws") {
  RunResult r = run("laws " + data("branch.proc") + " --depth 2 --grid 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "law internal-choice idempotent: ok"));
  CHECK(contains(r.out, "law probabilistic-choice idempotent: ok"));
  CHECK(contains(r.out, "law prefix migrates over probabilistic choice: ok"));
  CHECK(contains(r.out, "law normal form equivalent: ok"));
  CHECK(contains(r.out, "law complete-trace distribution normalized: ok"));
}

TEST_CASE("galois") {
  RunResult r = run("galois --seed 1 --count 5 --depth 2 --grid 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "unit failures: 0"));
  CHECK(contains(r.out, "adjunction disagreements: 0"));
}

TEST_CASE("contexts") {
  RunResult r = run("contexts --alphabet a --depth 1");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "contexts: 2"));
}

TEST_CASE("errors exit with code 2") {
  CHECK(run("dist /nonexistent.proc", true).code == 2);
  CHECK(run("dist " + data("bad.proc"), true).code == 2);
  CHECK(run("", true).code == 2);
  CHECK(run("frobnicate", true).code == 2);
  RunResult r = run("dist " + data("bad.proc"), true);
  CHECK(contains(r.out, "error"));
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  // trailing arguments: tool binary, data directory
  if (argc >= 3) {
    g_binary = argv[argc - 2];
    g_data = argv[argc - 1];
    argc -= 2;
  }
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
