#include <algorithm>
#include <sstream>

#include "ppfa/automata.hpp"

namespace ppfa {

namespace {

std::string join(const std::set<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += " ";
    out += x;
  }
  return out;
}

std::string dist_str(const Distribution& d) {
  std::string out = "{";
  bool first = true;
  for (const auto& [n, w] : d.weights) {
    if (!first) out += ", ";
    out += n + ": " + w.str();
    first = false;
  }
  return out + "}";
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string render_fa(const Fa& a) {
  std::ostringstream os;
  os << "fa\n";
  os << "[nodes]\n" << join(a.nodes) << "\n";
  os << "[alphabet]\n" << join(a.alphabet) << "\n";
  os << "[start]\n" << join(a.starts) << "\n";
  os << "[trans]\n";
  // group relational transitions per (from, action)
  std::map<std::pair<std::string, std::string>, std::set<std::string>> grouped;
  for (const auto& [f, x, t] : a.transitions) grouped[{f, x}].insert(t);
  for (const auto& [key, targets] : grouped)
    os << key.first << " --" << key.second << "--> " << join(targets) << "\n";
  return os.str();
}

std::string render_pfa(const Pfa& p) {
  std::ostringstream os;
  os << "pfa\n";
  os << "[nodes]\n" << join(p.nodes) << "\n";
  os << "[alphabet]\n" << join(p.alphabet) << "\n";
  os << "[start]\n";
  for (const auto& [n, w] : p.start) os << n << " = " << w.str() << "\n";
  os << "[trans]\n";
  std::vector<PfaTransition> ts = p.transitions;
  std::sort(ts.begin(), ts.end());
  for (const auto& t : ts)
    os << t.from << " --" << t.action << "--> " << dist_str(t.dist) << "\n";
  os << "[vargroups]\n";
  for (const auto& g : p.groups) {
    std::string line;
    for (const auto& v : g.vars) {
      if (!line.empty()) line += " ";
      line += v;
    }
    os << line << "\n";
  }
  return os.str();
}

ParsedAutomaton parse_automaton(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::string kind;
  std::string section;
  ParsedAutomaton out;

  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("automaton file: " + msg, lineno, 1);
  };

  auto parse_trans_line = [&](const std::string& body) {
    auto arrow = body.find("--");
    if (arrow == std::string::npos) fail("expected '--action-->' in " + body);
    auto arrow_end = body.find("-->", arrow);
    if (arrow_end == std::string::npos) fail("expected '-->' in " + body);
    std::string from = trim(body.substr(0, arrow));
    std::string action = trim(body.substr(arrow + 2, arrow_end - arrow - 2));
    std::string rest = trim(body.substr(arrow_end + 3));
    if (from.empty() || action.empty()) fail("malformed transition " + body);
    if (out.is_fa) {
      for (const auto& t : split_ws(rest))
        out.fa.transitions.insert({from, action, t});
    } else {
      if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}')
        fail("expected {node: expr, ...} in " + body);
      PfaTransition t;
      t.from = from;
      t.action = action;
      std::string inner = rest.substr(1, rest.size() - 2);
      size_t pos = 0;
      while (pos < inner.size()) {
        // split on commas at paren depth zero
        int depth = 0;
        size_t end = pos;
        for (; end < inner.size(); ++end) {
          if (inner[end] == '(') ++depth;
          if (inner[end] == ')') --depth;
          if (inner[end] == ',' && depth == 0) break;
        }
        std::string entry = trim(inner.substr(pos, end - pos));
        pos = end + 1;
        if (entry.empty()) continue;
        auto colon = entry.find(':');
        if (colon == std::string::npos) fail("expected 'node: expr' in " + entry);
        std::string node = trim(entry.substr(0, colon));
        std::string expr = trim(entry.substr(colon + 1));
        try {
          t.dist.weights[node] = parse_prob(expr);
        } catch (const ParseError& e) {
          fail(std::string(e.what()));
        }
      }
      out.pfa.transitions.push_back(std::move(t));
    }
  };

  while (std::getline(is, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    if (kind.empty()) {
      if (body != "fa" && body != "pfa") fail("expected kind 'fa' or 'pfa'");
      kind = body;
      out.is_fa = kind == "fa";
      continue;
    }
    if (body.front() == '[' && body.back() == ']') {
      section = body.substr(1, body.size() - 2);
      if (section != "nodes" && section != "alphabet" && section != "start" &&
          section != "trans" && section != "vargroups")
        fail("unknown section [" + section + "]");
      if (section == "vargroups" && out.is_fa)
        fail("fa files have no [vargroups] section");
      continue;
    }
    if (section == "nodes") {
      for (const auto& n : split_ws(body)) {
        if (n.find(':') != std::string::npos) fail("':' not allowed in node id " + n);
        (out.is_fa ? out.fa.nodes : out.pfa.nodes).insert(n);
      }
    } else if (section == "alphabet") {
      for (const auto& a : split_ws(body)) {
        if (a == kTau) fail("tau cannot appear in the alphabet");
        (out.is_fa ? out.fa.alphabet : out.pfa.alphabet).insert(a);
      }
    } else if (section == "start") {
      if (out.is_fa) {
        for (const auto& s : split_ws(body)) out.fa.starts.insert(s);
      } else {
        auto eq = body.find('=');
        if (eq == std::string::npos) fail("expected 'node = expr' in [start]");
        std::string node = trim(body.substr(0, eq));
        try {
          out.pfa.start[node] = parse_prob(body.substr(eq + 1));
        } catch (const ParseError& e) {
          fail(std::string(e.what()));
        }
      }
    } else if (section == "trans") {
      parse_trans_line(body);
    } else if (section == "vargroups") {
      VarGroup g;
      g.vars = split_ws(body);
      out.pfa.groups.push_back(std::move(g));
    } else {
      fail("content before any section header");
    }
  }
  if (kind.empty()) fail("empty automaton file");
  return out;
}

}  // namespace ppfa
