#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace daeidx {

using Rat = mpq_class;
using Int = mpz_class;

// Dense univariate polynomial in t over Q. coef_[i] is the coefficient of t^i;
// no trailing zeros are stored, so the zero polynomial has an empty vector.
class QPoly {
public:
  QPoly() = default;
  QPoly(long c) : QPoly(Rat(c)) {}
  explicit QPoly(Rat c);
  explicit QPoly(std::vector<Rat> coefs);

  static QPoly t_power(int k);

  bool is_zero() const { return coef_.empty(); }
  bool is_constant() const { return coef_.size() <= 1; }
  // degree of the zero polynomial is -1 by convention
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const Rat& leading() const;
  const Rat& operator[](int i) const;

  QPoly operator-() const;
  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  bool operator==(const QPoly& o) const { return coef_ == o.coef_; }

  QPoly derivative() const;
  Rat eval(const Rat& tv) const;

  // quotient/remainder over the field Q; divisor must be nonzero
  static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& rem);
  // monic gcd; gcd(0,0) = 0
  static QPoly gcd(QPoly a, QPoly b);
  QPoly monic() const;

private:
  void trim();
  std::vector<Rat> coef_;
};

// Element of Q(t), kept canonical: denominator monic and coprime with the
// numerator. Every path in the engine keeps the denominator equal to 1 (the
// grammar has no division and derivation/elimination never introduce one),
// but the full field arithmetic is available.
class Qt {
public:
  Qt() : num_(), den_(1) {}
  Qt(long v) : num_(v), den_(1) {}
  Qt(Rat v) : num_(std::move(v)), den_(1) {}
  explicit Qt(QPoly p) : num_(std::move(p)), den_(1) {}
  Qt(QPoly num, QPoly den);

  static Qt t() { return Qt(QPoly::t_power(1)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool den_is_one() const { return den_.degree() == 0; }
  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  // constant (t-free, denominator 1) accessor; only valid when is_rational()
  bool is_rational() const { return num_.is_constant() && den_is_one(); }
  Rat rational_value() const;

  Qt operator-() const;
  Qt operator+(const Qt& o) const;
  Qt operator-(const Qt& o) const;
  Qt operator*(const Qt& o) const;
  Qt operator/(const Qt& o) const;  // o nonzero
  Qt& operator+=(const Qt& o) { *this = *this + o; return *this; }
  Qt& operator-=(const Qt& o) { *this = *this - o; return *this; }
  Qt& operator*=(const Qt& o) { *this = *this * o; return *this; }
  bool operator==(const Qt& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Qt& o) const { return !(*this == o); }

  // d/dt via the quotient rule
  Qt derivative() const;
  // evaluation at a rational t; nullopt when the denominator vanishes there
  std::optional<Rat> eval(const Rat& tv) const;

private:
  void normalize();
  QPoly num_, den_;
};

}  // namespace daeidx
