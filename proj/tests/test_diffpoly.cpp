#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "daeidx/diffpoly.hpp"

using namespace daeidx;

namespace {

const JetVar u1{0, 0};
const JetVar u2{1, 0};

JetVar jet(VarId id, int d) { return JetVar{id, d}; }

DiffPoly V(JetVar v) { return DiffPoly::var(v); }
DiffPoly C(long c) { return DiffPoly::constant(c); }

std::string nm(VarId id) { return id == 0 ? "u1" : "u2"; }

}  // namespace

TEST_CASE("monomial ordering ranks higher derivatives first") {
  CHECK(more_significant(jet(0, 2), jet(0, 1)));
  CHECK(more_significant(jet(1, 2), jet(0, 1)));
  CHECK(more_significant(jet(0, 1), jet(1, 1)));  // same order: lower id wins
  CHECK_FALSE(more_significant(jet(0, 1), jet(0, 1)));

  Monomial a(jet(0, 2));          // u1''
  Monomial b(jet(0, 1), 3);       // u1'^3
  CHECK(Monomial::compare(a, b) > 0);
  CHECK(Monomial::compare(b, b) == 0);
  // product keeps factors sorted, most significant first
  Monomial p = a * b;
  REQUIRE(p.factors().size() == 2);
  CHECK(p.factors()[0].first == jet(0, 2));
  CHECK(p.factors()[1].second == 3);
  CHECK(p.total_degree() == 4);
}

TEST_CASE("monomial division") {
  Monomial ab = Monomial(jet(0, 1), 2) * Monomial(jet(1, 0));
  Monomial a(jet(0, 1));
  auto q = ab.divide(a);
  REQUIRE(q.has_value());
  CHECK(q->exponent(jet(0, 1)) == 1);
  CHECK(q->exponent(jet(1, 0)) == 1);
  CHECK_FALSE(ab.divide(Monomial(jet(2, 0))).has_value());
  CHECK_FALSE(a.divide(Monomial(jet(0, 1), 2)).has_value());
  CHECK(ab.without_one(jet(0, 1)).exponent(jet(0, 1)) == 1);
}

TEST_CASE("ring arithmetic") {
  DiffPoly a = V(u1) + C(1);
  DiffPoly sq = a * a;
  DiffPoly expect = V(u1) * V(u1) + C(2) * V(u1) + C(1);
  CHECK(sq == expect);
  CHECK(a.pow(2) == sq);
  CHECK(a.pow(0) == C(1));
  CHECK((sq - expect).is_zero());
  CHECK(sq.total_degree() == 2);
  CHECK((-a) + a == DiffPoly());
  CHECK(a.scaled(Qt(3)) == C(3) * a);
  CHECK(C(0).is_zero());

  // leading term of u1'' + u1^3: the derivative dominates any power of u1
  DiffPoly p = V(jet(0, 2)) + V(u1).pow(3);
  CHECK(p.leading_term().first == Monomial(jet(0, 2)));
  CHECK(p.order_of(0) == 2);
  CHECK_FALSE(p.order_of(1).has_value());
  CHECK(p.term_count() == 2);
}

TEST_CASE("total derivative is a derivation") {
  DiffPoly p = V(u1) * V(u2);
  DiffPoly dp = p.total_derivative();
  CHECK(dp == V(jet(0, 1)) * V(u2) + V(u1) * V(jet(1, 1)));

  // Leibniz on a square
  DiffPoly q = V(u1).pow(2);
  CHECK(q.total_derivative() == C(2) * V(u1) * V(jet(0, 1)));

  // constants die
  CHECK(C(7).total_derivative().is_zero());

  // d/dt acts on Q(t) coefficients too: (t*u1)' = u1 + t*u1'
  DiffPoly tu = V(u1).scaled(Qt::t());
  CHECK(tu.total_derivative() == V(u1) + V(jet(0, 1)).scaled(Qt::t()));
}

TEST_CASE("partial derivatives") {
  DiffPoly p = V(u1).pow(2) * V(u2) + V(jet(0, 1));
  CHECK(p.partial(u1) == C(2) * V(u1) * V(u2));
  CHECK(p.partial(u2) == V(u1).pow(2));
  CHECK(p.partial(jet(0, 1)) == C(1));
  CHECK(p.partial(jet(0, 5)).is_zero());
}

// (d/dt) dH^(l)/dZ^(j+1) = dH^(l+1)/dZ^(j+1) - dH^(l)/dZ^(j),
// and the shifted partials agree once j is past l plus the order of H.
// Both identities must hold exactly, term by term.
TEST_CASE("prolongation partial-derivative identities") {
  DiffPoly H = V(u1).pow(2) * V(jet(1, 1)) + V(jet(0, 1)) * V(u2) + V(u2).scaled(Qt::t());
  const int eH = 1;  // order of H

  std::vector<DiffPoly> pro{H};
  for (int l = 1; l <= 4; ++l) pro.push_back(pro.back().total_derivative());

  for (VarId id : {0, 1}) {
    for (int l = 0; l + 1 <= 4; ++l) {
      for (int j = 0; j <= 5; ++j) {
        DiffPoly lhs = pro[l].partial(jet(id, j + 1)).total_derivative();
        DiffPoly rhs = pro[l + 1].partial(jet(id, j + 1)) - pro[l].partial(jet(id, j));
        CHECK(lhs == rhs);
        if (j >= l + eH)
          CHECK(pro[l + 1].partial(jet(id, j + 1)) == pro[l].partial(jet(id, j)));
      }
    }
  }
}

TEST_CASE("substitute") {
  DiffPoly p = V(u1).pow(2) + V(u2);
  DiffPoly img = V(u2).pow(2) + C(1);
  DiffPoly s = p.substitute([&](const JetVar& v) -> std::optional<DiffPoly> {
    if (v == u1) return img;
    return std::nullopt;
  });
  CHECK(s == img * img + V(u2));
}

TEST_CASE("exact evaluation") {
  DiffPoly p = V(u1).pow(2) * V(u2) - C(3);
  Rat val = p.evaluate([](const JetVar& v) { return v.id == 0 ? Rat(2) : Rat(5); }, Rat(0));
  CHECK(val == Rat(17));

  DiffPoly q = V(u1).scaled(Qt::t() * Qt::t());
  CHECK(q.evaluate([](const JetVar&) { return Rat(3); }, Rat(2)) == Rat(12));
}

TEST_CASE("exact division") {
  DiffPoly a = V(u1).pow(2) + V(u2).scaled(Qt(Rat(1, 2)));
  DiffPoly b = V(jet(0, 1)) - C(4);
  auto q = DiffPoly::divide_exact(a * b, b);
  REQUIRE(q.has_value());
  CHECK(*q == a);
  CHECK_FALSE(DiffPoly::divide_exact(V(u1) + C(1), V(u2)).has_value());
  // divisor with several terms, quotient with rational leading coefficient
  auto q2 = DiffPoly::divide_exact(a * a, a);
  REQUIRE(q2.has_value());
  CHECK(*q2 == a);
}

TEST_CASE("canonical text") {
  CHECK(DiffPoly().to_string(nm) == "0");
  CHECK(C(-3).to_string(nm) == "-3");
  DiffPoly p = V(jet(0, 2)) + V(u1) * V(u2).scaled(Qt(-1));
  CHECK(p.to_string(nm) == "u1'' - u1*u2");
  CHECK(V(jet(0, 4)).to_string(nm) == "u1^(4)");
  CHECK(V(jet(0, 3)).to_string(nm) == "u1^(3)");
  CHECK((V(u1).pow(2).scaled(Qt(Rat(1, 2)))).to_string(nm) == "1/2*u1^2");
  DiffPoly tc = V(u1).scaled(Qt::t() + Qt(1));
  CHECK(tc.to_string(nm) == "(t + 1)*u1");
}
