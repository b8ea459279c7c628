#include "ppfa/dsl.hpp"

#include <sstream>

#include "ppfa/operators.hpp"

namespace ppfa {

namespace {

struct Token {
  enum class Kind { Ident, Stop, Dot, Internal, Prob, External, Parallel,
                    LParen, RParen, End };
  Kind kind;
  std::string text;  // identifier, probability expression, or sync list
  int line = 0, col = 0;
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '_';
}

std::vector<Token> lex(const std::string& s, int line) {
  std::vector<Token> out;
  size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("process expression: " + msg, line, int(i) + 1);
  };
  while (i < s.size()) {
    char c = s[i];
    int col = int(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (s.compare(i, 3, "|~|") == 0) {
      out.push_back({Token::Kind::Internal, "", line, col});
      i += 3;
    } else if (s.compare(i, 3, "||{") == 0) {
      size_t close = s.find('}', i + 3);
      if (close == std::string::npos) fail("unterminated synchronization set");
      out.push_back({Token::Kind::Parallel, s.substr(i + 3, close - i - 3),
                     line, col});
      i = close + 1;
    } else if (s.compare(i, 2, "+[") == 0) {
      size_t close = s.find(']', i + 2);
      if (close == std::string::npos) fail("unterminated probability");
      out.push_back({Token::Kind::Prob, s.substr(i + 2, close - i - 2), line,
                     col});
      i = close + 1;
    } else if (s.compare(i, 2, "[]") == 0) {
      out.push_back({Token::Kind::External, "", line, col});
      i += 2;
    } else if (c == '.') {
      out.push_back({Token::Kind::Dot, "", line, col});
      ++i;
    } else if (c == '(') {
      out.push_back({Token::Kind::LParen, "", line, col});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::Kind::RParen, "", line, col});
      ++i;
    } else if (ident_start(c)) {
      size_t b = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word = s.substr(b, i - b);
      if (word == "stop")
        out.push_back({Token::Kind::Stop, "", line, col});
      else if (word == kTau)
        fail("'" + kTau + "' cannot be written directly");
      else
        out.push_back({Token::Kind::Ident, word, line, col});
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::End, "", line, int(s.size()) + 1});
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  Token take() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError("process expression: " + msg, t.line, t.col);
  }

  ExprPtr make(ProcessExpr::Kind k, const Token& at) {
    auto e = std::make_shared<ProcessExpr>();
    e->kind = k;
    e->line = at.line;
    e->col = at.col;
    return e;
  }

  ExprPtr parse_internal() {
    ExprPtr l = parse_prob();
    while (peek().kind == Token::Kind::Internal) {
      Token op = take();
      ExprPtr e = make(ProcessExpr::Kind::Internal, op);
      e->left = l;
      e->right = parse_prob();
      l = e;
    }
    return l;
  }

  ExprPtr parse_prob() {
    ExprPtr l = parse_external();
    while (peek().kind == Token::Kind::Prob) {
      Token op = take();
      ExprPtr e = make(ProcessExpr::Kind::Prob, op);
      try {
        e->prob = ppfa::parse_prob(op.text);
      } catch (const ParseError& inner) {
        throw ParseError("process expression: " + std::string(inner.what()),
                         op.line, op.col);
      }
      e->left = l;
      e->right = parse_external();
      l = e;
    }
    return l;
  }

  ExprPtr parse_external() {
    ExprPtr l = parse_parallel();
    while (peek().kind == Token::Kind::External) {
      Token op = take();
      ExprPtr e = make(ProcessExpr::Kind::External, op);
      e->left = l;
      e->right = parse_parallel();
      l = e;
    }
    return l;
  }

  ExprPtr parse_parallel() {
    ExprPtr l = parse_prefix();
    while (peek().kind == Token::Kind::Parallel) {
      Token op = take();
      ExprPtr e = make(ProcessExpr::Kind::Parallel, op);
      std::istringstream is(op.text);
      std::string a;
      while (std::getline(is, a, ',')) {
        size_t b = a.find_first_not_of(" \t");
        size_t t = a.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        std::string act = a.substr(b, t - b + 1);
        if (act == kTau)
          throw ParseError("process expression: '" + kTau +
                               "' cannot be synchronized",
                           op.line, op.col);
        e->sync.insert(act);
      }
      e->left = l;
      e->right = parse_prefix();
      l = e;
    }
    return l;
  }

  ExprPtr parse_prefix() {
    if (peek().kind == Token::Kind::Ident &&
        toks[pos + 1].kind == Token::Kind::Dot) {
      Token act = take();
      take();  // dot
      ExprPtr e = make(ProcessExpr::Kind::Prefix, act);
      e->name = act.text;
      e->left = parse_prefix();
      return e;
    }
    return parse_atom();
  }

  ExprPtr parse_atom() {
    switch (peek().kind) {
      case Token::Kind::Stop:
        return make(ProcessExpr::Kind::Stop, take());
      case Token::Kind::Ident: {
        Token t = take();
        ExprPtr e = make(ProcessExpr::Kind::Ref, t);
        e->name = t.text;
        return e;
      }
      case Token::Kind::LParen: {
        take();
        ExprPtr e = parse_internal();
        if (peek().kind != Token::Kind::RParen) fail("expected ')'");
        take();
        return e;
      }
      default:
        fail("expected 'stop', a name, a prefix, or '('");
    }
  }
};

ExprPtr parse_tokens(const std::vector<Token>& toks) {
  Parser p{toks};
  ExprPtr e = p.parse_internal();
  if (p.peek().kind != Token::Kind::End) p.fail("trailing input");
  return e;
}

}  // namespace

ExprPtr parse_process(const std::string& text) {
  return parse_tokens(lex(text, 1));
}

ProcessFile parse_process_file(const std::string& text) {
  ProcessFile f;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("process file: expected 'name = expr'", lineno, 1);
    size_t e = line.find_last_not_of(" \t", eq - 1);
    if (e == std::string::npos || e < b)
      throw ParseError("process file: missing definition name", lineno, 1);
    std::string name = line.substr(b, e - b + 1);
    for (char c : name)
      if (!ident_char(c))
        throw ParseError("process file: bad definition name '" + name + "'",
                         lineno, 1);
    if (f.find(name))
      throw ParseError("process file: duplicate definition '" + name + "'",
                       lineno, 1);
    f.defs.emplace_back(name, parse_tokens(lex(line.substr(eq + 1), lineno)));
  }
  if (f.defs.empty())
    throw ParseError("process file: no definitions", lineno, 1);
  return f;
}

const ExprPtr* ProcessFile::find(const std::string& name) const {
  for (const auto& [n, e] : defs)
    if (n == name) return &e;
  return nullptr;
}

namespace {

// binding strength; higher binds tighter
int level(ProcessExpr::Kind k) {
  switch (k) {
    case ProcessExpr::Kind::Internal: return 0;
    case ProcessExpr::Kind::Prob: return 1;
    case ProcessExpr::Kind::External: return 2;
    case ProcessExpr::Kind::Parallel: return 3;
    case ProcessExpr::Kind::Prefix: return 4;
    default: return 5;
  }
}

void render(const ProcessExpr& e, std::ostringstream& os, int min_level) {
  int my = level(e.kind);
  bool parens = my < min_level;
  if (parens) os << "(";
  switch (e.kind) {
    case ProcessExpr::Kind::Stop:
      os << "stop";
      break;
    case ProcessExpr::Kind::Ref:
      os << e.name;
      break;
    case ProcessExpr::Kind::Prefix:
      os << e.name << ".";
      render(*e.left, os, my);
      break;
    case ProcessExpr::Kind::Internal:
    case ProcessExpr::Kind::Prob:
    case ProcessExpr::Kind::External:
    case ProcessExpr::Kind::Parallel: {
      render(*e.left, os, my);  // left-associative: same level allowed
      if (e.kind == ProcessExpr::Kind::Internal) {
        os << " |~| ";
      } else if (e.kind == ProcessExpr::Kind::Prob) {
        os << " +[" << e.prob.str() << "] ";
      } else if (e.kind == ProcessExpr::Kind::External) {
        os << " [] ";
      } else {
        os << " ||{";
        bool first = true;
        for (const auto& a : e.sync) {
          if (!first) os << ",";
          os << a;
          first = false;
        }
        os << "} ";
      }
      render(*e.right, os, my + 1);
      break;
    }
  }
  if (parens) os << ")";
}

}  // namespace

std::string render_process(const ProcessExpr& e) {
  std::ostringstream os;
  render(e, os, 0);
  return os.str();
}

std::string render_process_file(const ProcessFile& f) {
  std::ostringstream os;
  for (const auto& [n, e] : f.defs) os << n << " = " << render_process(*e) << "\n";
  return os.str();
}

namespace {

struct Elaborator {
  const ProcessFile& file;
  std::set<std::string> used_vars;
  std::set<std::string> active;  // definitions currently expanding

  std::string fresh_var(const Pfa& l, const Pfa& r) {
    std::set<std::string> used = used_vars;
    for (const auto& v : l.free_vars()) used.insert(v);
    for (const auto& v : r.free_vars()) used.insert(v);
    for (const auto& g : l.groups) used.insert(g.vars.begin(), g.vars.end());
    for (const auto& g : r.groups) used.insert(g.vars.begin(), g.vars.end());
    std::string v = VarRegistry(used).fresh();
    used_vars.insert(v);
    return v;
  }

  void note_vars(const Pfa& p) {
    for (const auto& v : p.free_vars()) used_vars.insert(v);
    for (const auto& g : p.groups)
      used_vars.insert(g.vars.begin(), g.vars.end());
  }

  [[noreturn]] void fail(const ProcessExpr& e, const std::string& msg) {
    throw ParseError("process expression: " + msg, e.line, e.col);
  }

  Pfa go(const ProcessExpr& e) {
    switch (e.kind) {
      case ProcessExpr::Kind::Stop:
        return pfa_stop();
      case ProcessExpr::Kind::Prefix: {
        Pfa b = go(*e.left);
        return pfa_prefix(e.name, b);
      }
      case ProcessExpr::Kind::Internal: {
        Pfa l = go(*e.left);
        Pfa r = go(*e.right);
        Pfa out = pfa_internal(l, r, fresh_var(l, r));
        note_vars(out);
        return out;
      }
      case ProcessExpr::Kind::Prob: {
        Pfa l = go(*e.left);
        Pfa r = go(*e.right);
        for (const auto& v : e.prob.vars()) used_vars.insert(v);
        try {
          Pfa out = pfa_prob_choice(l, r, e.prob);
          note_vars(out);
          return out;
        } catch (const RangeError& err) {
          fail(e, err.what());
        }
      }
      case ProcessExpr::Kind::External: {
        Pfa l = go(*e.left);
        Pfa r = go(*e.right);
        try {
          Pfa out = pfa_external(l, r);
          note_vars(out);
          return out;
        } catch (const StructureError& err) {
          fail(e, err.what());
        }
      }
      case ProcessExpr::Kind::Parallel: {
        Pfa l = go(*e.left);
        Pfa r = go(*e.right);
        try {
          Pfa out = pfa_parallel(l, r, e.sync);
          note_vars(out);
          return out;
        } catch (const StructureError& err) {
          fail(e, err.what());
        }
      }
      case ProcessExpr::Kind::Ref: {
        const ExprPtr* def = file.find(e.name);
        if (!def) fail(e, "unknown reference '" + e.name + "'");
        if (!active.insert(e.name).second)
          fail(e, "recursive reference '" + e.name + "'");
        Pfa out = go(**def);
        active.erase(e.name);
        return out;
      }
    }
    fail(e, "corrupt expression node");
  }
};

}  // namespace

Pfa elaborate(const ProcessFile& f, const std::string& entry) {
  const ExprPtr* e = f.find(entry);
  if (!e)
    throw ParseError("process file: missing '" + entry + "' definition", 1, 1);
  Elaborator el{f};
  Pfa out = el.go(**e);
  out.canonicalize();
  return out;
}

Pfa elaborate_expr(const ExprPtr& e) {
  ProcessFile f;
  f.defs.emplace_back("main", e);
  return elaborate(f);
}

}  // namespace ppfa
