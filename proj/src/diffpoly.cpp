#include "daeidx/diffpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace daeidx {

Monomial::Monomial(JetVar v, int32_t exp) {
  if (exp < 0) throw std::logic_error("negative exponent in monomial");
  if (exp > 0) factors_.push_back({v, exp});
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [v, e] : factors_) d += e;
  return d;
}

int32_t Monomial::exponent(const JetVar& v) const {
  for (const auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < factors_.size() || j < o.factors_.size()) {
    if (j == o.factors_.size() ||
        (i < factors_.size() && more_significant(factors_[i].first, o.factors_[j].first))) {
      r.factors_.push_back(factors_[i++]);
    } else if (i == factors_.size() || more_significant(o.factors_[j].first, factors_[i].first)) {
      r.factors_.push_back(o.factors_[j++]);
    } else {
      r.factors_.push_back({factors_[i].first, factors_[i].second + o.factors_[j].second});
      ++i;
      ++j;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  size_t i = 0;
  for (const auto& [v, e] : o.factors_) {
    while (i < factors_.size() && more_significant(factors_[i].first, v)) {
      r.factors_.push_back(factors_[i++]);
    }
    if (i == factors_.size() || !(factors_[i].first == v) || factors_[i].second < e)
      return std::nullopt;
    if (factors_[i].second > e) r.factors_.push_back({v, factors_[i].second - e});
    ++i;
  }
  while (i < factors_.size()) r.factors_.push_back(factors_[i++]);
  return r;
}

Monomial Monomial::without_one(const JetVar& v) const {
  Monomial r;
  for (const auto& [w, e] : factors_) {
    if (w == v) {
      if (e > 1) r.factors_.push_back({w, e - 1});
    } else {
      r.factors_.push_back({w, e});
    }
  }
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  size_t i = 0, j = 0;
  while (i < a.factors_.size() && j < b.factors_.size()) {
    const auto& [va, ea] = a.factors_[i];
    const auto& [vb, eb] = b.factors_[j];
    if (va == vb) {
      if (ea != eb) return ea > eb ? 1 : -1;
      ++i;
      ++j;
    } else if (more_significant(va, vb)) {
      return 1;  // a has a positive exponent where b has zero
    } else {
      return -1;
    }
  }
  if (i < a.factors_.size()) return 1;
  if (j < b.factors_.size()) return -1;
  return 0;
}

DiffPoly DiffPoly::constant(Qt c) {
  DiffPoly p;
  if (!c.is_zero()) p.terms_.emplace(Monomial(), std::move(c));
  return p;
}

DiffPoly DiffPoly::var(JetVar v) {
  DiffPoly p;
  p.terms_.emplace(Monomial(v), Qt(1));
  return p;
}

int DiffPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

std::optional<int> DiffPoly::order_of(VarId id) const {
  std::optional<int> best;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors())
      if (v.id == id && (!best || v.deriv > *best)) best = v.deriv;
  return best;
}

std::set<JetVar> DiffPoly::variables() const {
  std::set<JetVar> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) out.insert(v);
  return out;
}

Qt DiffPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Qt() : it->second;
}

const std::pair<const Monomial, Qt>& DiffPoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.begin();
}

void DiffPoly::add_term(const Monomial& m, const Qt& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
  DiffPoly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const {
  DiffPoly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
  DiffPoly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

DiffPoly DiffPoly::scaled(const Qt& c) const {
  DiffPoly r;
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

DiffPoly DiffPoly::pow(int e) const {
  if (e < 0) throw std::logic_error("negative power");
  DiffPoly r = constant(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

DiffPoly DiffPoly::partial(const JetVar& v) const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    int32_t e = m.exponent(v);
    if (e > 0) r.add_term(m.without_one(v), c * Qt(e));
  }
  return r;
}

DiffPoly DiffPoly::total_derivative() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    Qt dc = c.derivative();
    if (!dc.is_zero()) r.add_term(m, dc);
    for (const auto& [v, e] : m.factors()) {
      JetVar up{v.id, v.deriv + 1};
      r.add_term(m.without_one(v) * Monomial(up), c * Qt(e));
    }
  }
  return r;
}

DiffPoly DiffPoly::substitute(
    const std::function<std::optional<DiffPoly>(const JetVar&)>& image) const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    DiffPoly acc = DiffPoly::constant(c);
    Monomial untouched;
    for (const auto& [v, e] : m.factors()) {
      if (auto repl = image(v)) {
        acc = acc * repl->pow(e);
      } else {
        untouched = untouched * Monomial(v, e);
      }
    }
    if (!untouched.is_one()) {
      DiffPoly mono;
      mono.terms_.emplace(untouched, Qt(1));
      acc = acc * mono;
    }
    r += acc;
  }
  return r;
}

Rat DiffPoly::evaluate(const std::function<Rat(const JetVar&)>& value, const Rat& tval) const {
  Rat acc(0);
  for (const auto& [m, c] : terms_) {
    auto cv = c.eval(tval);
    if (!cv) throw std::runtime_error("coefficient denominator vanishes at sample point");
    Rat term = *cv;
    for (const auto& [v, e] : m.factors()) {
      Rat base = value(v);
      for (int32_t i = 0; i < e; ++i) term *= base;
    }
    acc += term;
  }
  return acc;
}

std::optional<DiffPoly> DiffPoly::divide_exact(const DiffPoly& a, const DiffPoly& b) {
  if (b.is_zero()) return std::nullopt;
  DiffPoly rem = a, q;
  const auto& [ltm, ltc] = b.leading_term();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading_term();
    auto mq = rm.divide(ltm);
    if (!mq) return std::nullopt;
    Qt cq = rc / ltc;
    DiffPoly t;
    t.terms_.emplace(*mq, cq);
    q += t;
    rem -= t * b;
  }
  return q;
}

std::string jetvar_to_string(const JetVar& v, const std::function<std::string(VarId)>& name) {
  std::string s = name(v.id);
  if (v.deriv >= 3) {
    s += "^(" + std::to_string(v.deriv) + ")";
  } else {
    for (int i = 0; i < v.deriv; ++i) s += '\'';
  }
  return s;
}

namespace {

std::string rat_to_string(const Rat& r) {
  return r.get_str();
}

// renders a Q[t] polynomial; multi-term results are parenthesized by callers
std::string qpoly_to_string(const QPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rat c = p[i];
    if (c == 0) continue;
    Rat mag = abs(c);
    if (first) {
      out += (c < 0 ? "-" : "");
      first = false;
    } else {
      out += (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      out += rat_to_string(mag);
    } else {
      if (mag != 1) out += rat_to_string(mag) + "*";
      out += (i == 1) ? "t" : "t^" + std::to_string(i);
    }
  }
  return out;
}

int qpoly_term_count(const QPoly& p) {
  int n = 0;
  for (int i = 0; i <= p.degree(); ++i)
    if (p[i] != 0) ++n;
  return n;
}

}  // namespace

std::string DiffPoly::to_string(const std::function<std::string(VarId)>& name) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!c.den_is_one())
      throw std::logic_error("serialization requires polynomial coefficients in t");
    QPoly num = c.num();
    // pull the sign of the leading t-coefficient out front
    bool neg = num.leading() < 0;
    if (neg) num = -num;
    if (first) {
      out += neg ? "-" : "";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string cs;
    bool coeff_is_one = (num.degree() == 0 && num.leading() == 1);
    if (!coeff_is_one) {
      cs = qpoly_to_string(num);
      if (qpoly_term_count(num) > 1) cs = "(" + cs + ")";
    }
    if (m.is_one()) {
      out += coeff_is_one ? "1" : cs;
      continue;
    }
    if (!coeff_is_one) out += cs + "*";
    bool firstf = true;
    for (const auto& [v, e] : m.factors()) {
      if (!firstf) out += "*";
      firstf = false;
      out += jetvar_to_string(v, name);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

}  // namespace daeidx
