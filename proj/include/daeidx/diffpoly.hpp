#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "daeidx/rat.hpp"

namespace daeidx {

enum class VarKind { X, U, Y, Param };

struct Var {
  std::string name;
  VarKind kind;
};

using VarId = int32_t;

// A jet variable: the deriv-th derivative of the variable with table index id.
struct JetVar {
  VarId id = 0;
  int32_t deriv = 0;

  bool operator==(const JetVar& o) const { return id == o.id && deriv == o.deriv; }
  bool operator!=(const JetVar& o) const { return !(*this == o); }
  // plain (id, deriv) order, used for deterministic iteration of variable sets
  bool operator<(const JetVar& o) const {
    return id != o.id ? id < o.id : deriv < o.deriv;
  }
};

// true when a ranks as more significant than b in the term order: higher
// derivatives first, then lower table index (an orderly ranking)
inline bool more_significant(const JetVar& a, const JetVar& b) {
  return a.deriv != b.deriv ? a.deriv > b.deriv : a.id < b.id;
}

// Power product of jet variables. Factors are kept sorted with the most
// significant variable first, exponents strictly positive.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(JetVar v, int32_t exp = 1);

  bool is_one() const { return factors_.empty(); }
  int total_degree() const;
  int32_t exponent(const JetVar& v) const;
  const std::vector<std::pair<JetVar, int32_t>>& factors() const { return factors_; }

  Monomial operator*(const Monomial& o) const;
  // nullopt when o does not divide *this
  std::optional<Monomial> divide(const Monomial& o) const;
  // remove one power of v (exponent must be positive)
  Monomial without_one(const JetVar& v) const;

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

  // lexicographic comparison reading most significant variables first
  static int compare(const Monomial& a, const Monomial& b);

private:
  std::vector<std::pair<JetVar, int32_t>> factors_;
};

struct TermOrderGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::compare(a, b) > 0;
  }
};

// Sparse differential polynomial: monomials in jet variables with Q(t)
// coefficients, kept in canonical (leading term first) order.
class DiffPoly {
public:
  using TermMap = std::map<Monomial, Qt, TermOrderGreater>;

  DiffPoly() = default;
  static DiffPoly constant(Qt c);
  static DiffPoly constant(long c) { return constant(Qt(c)); }
  static DiffPoly var(JetVar v);

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  int total_degree() const;  // -1 for the zero polynomial
  // highest derivative order of the given variable present, nullopt if absent
  std::optional<int> order_of(VarId id) const;
  std::set<JetVar> variables() const;
  Qt coefficient(const Monomial& m) const;
  const std::pair<const Monomial, Qt>& leading_term() const;

  DiffPoly operator-() const;
  DiffPoly operator+(const DiffPoly& o) const;
  DiffPoly operator-(const DiffPoly& o) const;
  DiffPoly operator*(const DiffPoly& o) const;
  DiffPoly& operator+=(const DiffPoly& o) { *this = *this + o; return *this; }
  DiffPoly& operator-=(const DiffPoly& o) { *this = *this - o; return *this; }
  DiffPoly scaled(const Qt& c) const;
  DiffPoly pow(int e) const;
  bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const DiffPoly& o) const { return !(*this == o); }

  DiffPoly partial(const JetVar& v) const;
  // formal total derivative: d/dt on coefficients plus the chain-rule sum
  // bumping every jet variable one derivative up
  DiffPoly total_derivative() const;

  // replace variables for which image() returns a polynomial; the rest stay
  DiffPoly substitute(const std::function<std::optional<DiffPoly>(const JetVar&)>& image) const;

  // exact evaluation; value() must cover every variable of the polynomial
  Rat evaluate(const std::function<Rat(const JetVar&)>& value, const Rat& tval) const;

  // exact division; nullopt when o does not divide *this
  static std::optional<DiffPoly> divide_exact(const DiffPoly& a, const DiffPoly& b);

  // canonical text; name() supplies variable names. Matches the input grammar.
  std::string to_string(const std::function<std::string(VarId)>& name) const;

  void add_term(const Monomial& m, const Qt& c);

private:
  TermMap terms_;
};

std::string jetvar_to_string(const JetVar& v, const std::function<std::string(VarId)>& name);

}  // namespace daeidx
