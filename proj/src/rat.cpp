#include "daeidx/rat.hpp"

#include <stdexcept>
#include <utility>

namespace daeidx {

QPoly::QPoly(Rat c) {
  if (c != 0) coef_.push_back(std::move(c));
}

QPoly::QPoly(std::vector<Rat> coefs) : coef_(std::move(coefs)) { trim(); }

QPoly QPoly::t_power(int k) {
  QPoly p;
  p.coef_.assign(static_cast<size_t>(k) + 1, Rat(0));
  p.coef_.back() = 1;
  return p;
}

void QPoly::trim() {
  while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
}

const Rat& QPoly::leading() const {
  if (coef_.empty()) throw std::logic_error("leading() of zero polynomial");
  return coef_.back();
}

const Rat& QPoly::operator[](int i) const {
  static const Rat zero(0);
  if (i < 0 || i >= static_cast<int>(coef_.size())) return zero;
  return coef_[static_cast<size_t>(i)];
}

QPoly QPoly::operator-() const {
  QPoly r(*this);
  for (auto& c : r.coef_) c = -c;
  return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
  QPoly r;
  r.coef_.resize(std::max(coef_.size(), o.coef_.size()), Rat(0));
  for (size_t i = 0; i < r.coef_.size(); ++i) {
    if (i < coef_.size()) r.coef_[i] += coef_[i];
    if (i < o.coef_.size()) r.coef_[i] += o.coef_[i];
  }
  r.trim();
  return r;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  QPoly r;
  r.coef_.assign(coef_.size() + o.coef_.size() - 1, Rat(0));
  for (size_t i = 0; i < coef_.size(); ++i)
    for (size_t j = 0; j < o.coef_.size(); ++j) r.coef_[i + j] += coef_[i] * o.coef_[j];
  r.trim();
  return r;
}

QPoly QPoly::derivative() const {
  QPoly r;
  for (size_t i = 1; i < coef_.size(); ++i) r.coef_.push_back(Rat(static_cast<long>(i)) * coef_[i]);
  r.trim();
  return r;
}

Rat QPoly::eval(const Rat& tv) const {
  Rat acc(0);
  for (size_t i = coef_.size(); i-- > 0;) acc = acc * tv + coef_[i];
  return acc;
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& rem) {
  if (b.is_zero()) throw std::logic_error("QPoly division by zero");
  q = QPoly();
  rem = a;
  if (a.degree() >= b.degree()) q.coef_.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Rat(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    Rat c = rem.leading() / b.leading();
    q.coef_[static_cast<size_t>(shift)] = c;
    // rem -= c * t^shift * b
    for (size_t i = 0; i < b.coef_.size(); ++i)
      rem.coef_[i + static_cast<size_t>(shift)] -= c * b.coef_[i];
    rem.trim();
  }
  q.trim();
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r(*this);
  Rat inv = Rat(1) / leading();
  for (auto& c : r.coef_) c *= inv;
  return r;
}

Qt::Qt(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::logic_error("Qt with zero denominator");
  normalize();
}

void Qt::normalize() {
  if (num_.is_zero()) {
    den_ = QPoly(1);
    return;
  }
  QPoly g = QPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    QPoly q, r;
    QPoly::divmod(num_, g, q, r);
    num_ = q;
    QPoly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rat lead = den_.leading();
  if (lead != 1) {
    Rat inv = Rat(1) / lead;
    num_ = num_ * QPoly(inv);
    den_ = den_ * QPoly(inv);
  }
}

bool Qt::is_one() const { return den_is_one() && num_.degree() == 0 && num_.leading() == 1; }

Rat Qt::rational_value() const {
  if (!is_rational()) throw std::logic_error("Qt is not a plain rational");
  return num_.is_zero() ? Rat(0) : num_.leading();
}

Qt Qt::operator-() const {
  Qt r(*this);
  r.num_ = -r.num_;
  return r;
}

Qt Qt::operator+(const Qt& o) const {
  return Qt(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Qt Qt::operator-(const Qt& o) const {
  return Qt(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Qt Qt::operator*(const Qt& o) const { return Qt(num_ * o.num_, den_ * o.den_); }

Qt Qt::operator/(const Qt& o) const {
  if (o.is_zero()) throw std::logic_error("Qt division by zero");
  return Qt(num_ * o.den_, den_ * o.num_);
}

Qt Qt::derivative() const {
  if (den_is_one()) return Qt(num_.derivative());
  return Qt(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::optional<Rat> Qt::eval(const Rat& tv) const {
  Rat d = den_.eval(tv);
  if (d == 0) return std::nullopt;
  return num_.eval(tv) / d;
}

}  // namespace daeidx
