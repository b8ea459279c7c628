#include "ppfa/prob.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace ppfa {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rat(boost::multiprecision::cpp_int(std::string(text)));
    }
    boost::multiprecision::cpp_int num{std::string(text.substr(0, slash))};
    boost::multiprecision::cpp_int den{std::string(text.substr(slash + 1))};
    if (den == 0) throw Error("zero denominator in rational: " + std::string(text));
    return Rat(num, den);
  } catch (const std::exception&) {
    throw Error("malformed rational: " + std::string(text));
  }
}

std::string assignment_str(const ParamAssignment& psi) {
  std::string out;
  for (const auto& [v, r] : psi) {
    if (!out.empty()) out += " ";
    out += v + "=" + rat_str(r);
  }
  return out.empty() ? "{}" : out;
}

SymProb SymProb::constant(const Rat& r) {
  SymProb p;
  if (r != 0) p.terms_[Monomial{}] = r;
  return p;
}

SymProb SymProb::var(const std::string& name) {
  SymProb p;
  p.terms_[Monomial{{name, 1}}] = 1;
  return p;
}

SymProb SymProb::operator+(const SymProb& o) const {
  SymProb out = *this;
  for (const auto& [m, c] : o.terms_) {
    auto it = out.terms_.find(m);
    if (it == out.terms_.end()) {
      out.terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

SymProb SymProb::operator-(const SymProb& o) const {
  return *this + SymProb::constant(-1) * o;
}

SymProb SymProb::operator*(const SymProb& o) const {
  SymProb out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m = ma;
      for (const auto& [v, e] : mb) m[v] += e;
      auto it = out.terms_.find(m);
      if (it == out.terms_.end()) {
        out.terms_.emplace(std::move(m), ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

bool SymProb::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat SymProb::constant_value() const {
  if (terms_.empty()) return Rat(0);
  auto it = terms_.find(Monomial{});
  if (terms_.size() != 1 || it == terms_.end())
    throw StructureError("constant_value on non-constant term " + str());
  return it->second;
}

std::set<std::string> SymProb::vars() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.insert(v);
  return out;
}

Rat SymProb::eval(const ParamAssignment& psi) const {
  Rat total(0);
  for (const auto& [m, c] : terms_) {
    Rat term = c;
    for (const auto& [v, e] : m) {
      auto it = psi.find(v);
      if (it == psi.end()) throw EvalError("unassigned variable " + v);
      for (unsigned i = 0; i < e; ++i) term *= it->second;
    }
    total += term;
  }
  return total;
}

std::string SymProb::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat mag = c < 0 ? Rat(-c) : c;
    std::string body;
    if (m.empty()) {
      body = rat_str(mag);
    } else {
      if (mag != 1) body = rat_str(mag);
      for (const auto& [v, e] : m) {
        for (unsigned i = 0; i < e; ++i) {
          if (!body.empty()) body += "*";
          body += v;
        }
      }
    }
    if (first) {
      out = (c < 0 ? "-" : "") + body;
      first = false;
    } else {
      out += (c < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

namespace {

// Recursive-descent parser for probability expressions.
class ProbParser {
 public:
  explicit ProbParser(std::string_view text) : text_(text) {}

  SymProb parse() {
    SymProb e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  SymProb expr() {
    SymProb acc = term();
    for (;;) {
      skip_ws();
      if (eat('+')) {
        acc += term();
      } else if (peek() == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  SymProb term() {
    SymProb acc = factor();
    for (;;) {
      skip_ws();
      if (eat('*'))
        acc *= factor();
      else
        return acc;
    }
  }

  SymProb factor() {
    skip_ws();
    if (eat('-')) return SymProb::constant(-1) * factor();
    if (eat('(')) {
      SymProb e = expr();
      skip_ws();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return SymProb::var(ident());
    }
    fail("expected rational, variable or '('");
    return SymProb();  // unreachable
  }

  SymProb rational() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string_view num = text_.substr(start, pos_ - start);
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      size_t dstart = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ == dstart) fail("expected denominator");
      boost::multiprecision::cpp_int n{std::string(num)};
      boost::multiprecision::cpp_int d{
          std::string(text_.substr(dstart, pos_ - dstart))};
      if (d == 0) fail("zero denominator");
      return SymProb::constant(Rat(n, d));
    }
    return SymProb::constant(Rat(boost::multiprecision::cpp_int{std::string(num)}));
  }

  std::string ident() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool eat(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("probability expression: " + msg, 1,
                     static_cast<int>(pos_) + 1);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

SymProb parse_prob(std::string_view text) { return ProbParser(text).parse(); }

void VarRegistry::declare(const std::string& name) {
  if (!used_.insert(name).second)
    throw FreshnessError("variable " + name + " registered twice");
}

std::string VarRegistry::fresh() {
  for (;;) {
    std::string name = "v" + std::to_string(next_++);
    if (used_.insert(name).second) return name;
  }
}

namespace {

void enumerate(const std::vector<std::pair<std::vector<std::string>, bool>>& blocks,
               size_t bi, unsigned g, ParamAssignment& acc,
               std::vector<ParamAssignment>& out) {
  if (bi == blocks.size()) {
    out.push_back(acc);
    return;
  }
  const auto& [vars, grouped] = blocks[bi];
  // enumerate values for vars[vi..] with remaining group budget
  std::vector<Rat> vals;
  std::function<void(size_t, const Rat&)> rec = [&](size_t vi, const Rat& used) {
    if (vi == vars.size()) {
      enumerate(blocks, bi + 1, g, acc, out);
      return;
    }
    for (unsigned i = 0; i <= g; ++i) {
      Rat v(i, g);
      if (grouped && used + v > 1) break;
      acc[vars[vi]] = v;
      rec(vi + 1, used + v);
    }
    acc.erase(vars[vi]);
  };
  rec(0, Rat(0));
}

}  // namespace

std::vector<ParamAssignment> grid_assignments(
    const std::vector<VarGroup>& groups, const std::set<std::string>& free_vars,
    unsigned granularity) {
  if (granularity < 1) throw StructureError("granularity must be >= 1");
  std::vector<std::pair<std::vector<std::string>, bool>> blocks;
  std::set<std::string> grouped;
  for (const auto& grp : groups) {
    blocks.emplace_back(grp.vars, true);
    grouped.insert(grp.vars.begin(), grp.vars.end());
  }
  std::vector<std::string> rest;
  for (const auto& v : free_vars)
    if (!grouped.count(v)) rest.push_back(v);
  for (const auto& v : rest) blocks.emplace_back(std::vector<std::string>{v}, false);
  std::vector<ParamAssignment> out;
  ParamAssignment acc;
  enumerate(blocks, 0, granularity, acc, out);
  return out;
}

}  // namespace ppfa
