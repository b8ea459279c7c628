#ifndef PPFA_PROB_HPP
#define PPFA_PROB_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ppfa/errors.hpp"

namespace ppfa {

using Rat = boost::multiprecision::cpp_rational;

std::string rat_str(const Rat& r);
Rat parse_rat(std::string_view text);

/// Assignment of exact rationals to parameter variables.
using ParamAssignment = std::map<std::string, Rat>;

std::string assignment_str(const ParamAssignment& psi);

/// Monomial: variable name -> positive exponent. Empty map is the unit monomial.
using Monomial = std::map<std::string, unsigned>;

/// A probability term: multivariate polynomial over parameter variables with
/// exact rational coefficients, kept in canonical form (no zero coefficients).
/// Two terms are equal iff their term maps are equal.
class SymProb {
 public:
  SymProb() = default;  // canonical zero

  static SymProb constant(const Rat& r);
  static SymProb var(const std::string& name);
  static SymProb zero() { return SymProb(); }
  static SymProb one() { return constant(1); }

  SymProb operator+(const SymProb& o) const;
  SymProb operator-(const SymProb& o) const;
  SymProb operator*(const SymProb& o) const;
  SymProb& operator+=(const SymProb& o) { return *this = *this + o; }
  SymProb& operator*=(const SymProb& o) { return *this = *this * o; }

  bool operator==(const SymProb& o) const = default;
  friend bool operator<(const SymProb& a, const SymProb& b) {
    return a.terms_ < b.terms_;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const { return is_constant() && constant_value() == 1; }
  /// Value of a constant polynomial (zero for the empty polynomial).
  Rat constant_value() const;

  std::set<std::string> vars() const;

  /// Exact evaluation; every free variable must be assigned.
  Rat eval(const ParamAssignment& psi) const;

  /// Canonical rendering, parseable by parse_prob. Monomials appear in
  /// lexicographic order; exponents are expanded to repeated products.
  std::string str() const;

  const std::map<Monomial, Rat>& terms() const { return terms_; }

 private:
  std::map<Monomial, Rat> terms_;
};

inline SymProb operator*(const Rat& r, const SymProb& p) {
  return SymProb::constant(r) * p;
}

/// expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
/// factor := '-' factor | rational | var | '(' expr ')'
SymProb parse_prob(std::string_view text);

/// Encodes a k-way probabilistic split with k-1 explicit variables; the k-th
/// weight is implicitly 1 minus their sum.
struct VarGroup {
  std::vector<std::string> vars;

  bool operator==(const VarGroup&) const = default;
};

/// Tracks variable names in use and hands out deterministic fresh names
/// v0, v1, ... in construction order.
class VarRegistry {
 public:
  VarRegistry() = default;
  explicit VarRegistry(std::set<std::string> used) : used_(std::move(used)) {}

  /// Registers an externally chosen name; throws FreshnessError on reuse.
  void declare(const std::string& name);
  std::string fresh();
  bool known(const std::string& name) const { return used_.count(name) > 0; }

 private:
  std::set<std::string> used_;
  unsigned next_ = 0;
};

/// All assignments placing each free variable on {0, 1/g, ..., 1} and each
/// group's variables on the same grid subject to sum <= 1, in lexicographic
/// order (group variables first, in group order, then free variables sorted).
std::vector<ParamAssignment> grid_assignments(
    const std::vector<VarGroup>& groups, const std::set<std::string>& free_vars,
    unsigned granularity);

}  // namespace ppfa

#endif
