#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "daeidx/sysparse.hpp"

using namespace daeidx;

namespace {

DaeSystem two_vars(FieldTag field = FieldTag::Q) {
  DaeSystem sys = make_skeleton(field, {}, {"u1", "u2"}, 1);
  sys.g.push_back(DiffPoly::var(JetVar{sys.u_id(0), 0}));
  validate(sys);
  return sys;
}

DiffPoly parse(const std::string& s, const DaeSystem& sys) { return parse_expression(s, sys); }

std::string error_of(const std::string& s, const DaeSystem& sys, bool allow_y = false) {
  try {
    parse_expression(s, sys, allow_y);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("expression grammar") {
  DaeSystem sys = two_vars();
  const JetVar u1{sys.u_id(0), 0}, u2{sys.u_id(1), 0};
  auto V = [](JetVar v) { return DiffPoly::var(v); };

  CHECK(parse("u1 + u2*u1", sys) == V(u1) + V(u2) * V(u1));
  CHECK(parse("-u1 - -u2", sys) == -V(u1) + V(u2));
  CHECK(parse("(u1 + 1)^2", sys) == (V(u1) + DiffPoly::constant(1)).pow(2));
  CHECK(parse("3/4*u1", sys) == V(u1).scaled(Qt(Rat(3, 4))));
  CHECK(parse("2", sys) == DiffPoly::constant(2));
  CHECK(parse("  u1  \t+\n u2 ", sys) == V(u1) + V(u2));
}

TEST_CASE("derivative suffixes") {
  DaeSystem sys = two_vars();
  auto V = [&](int d) { return DiffPoly::var(JetVar{sys.u_id(0), d}); };

  CHECK(parse("u1'", sys) == V(1));
  CHECK(parse("u1'''", sys) == V(3));
  CHECK(parse("u1^(4)", sys) == V(4));
  CHECK(parse("u1^(0)", sys) == V(0));
  // power of the variable vs derivative of the variable
  CHECK(parse("u1^2", sys) == V(0) * V(0));
  CHECK(parse("u1'^2", sys) == V(1) * V(1));
  CHECK(parse("u1^(2)", sys) == V(2));
}

TEST_CASE("parse errors carry positions") {
  DaeSystem sys = two_vars();
  CHECK(error_of("u1 + v3", sys) == "position 6: unknown variable 'v3'");
  CHECK(error_of("", sys) == "position 1: empty expression");
  CHECK(error_of("u1 u2", sys) == "position 4: unexpected trailing input");
  CHECK(error_of("2u1", sys) == "position 2: unexpected trailing input");
  CHECK(error_of("u1 + ", sys) == "position 6: expected a number, variable or '('");
  CHECK(error_of("(u1", sys) == "position 4: expected ')'");
  CHECK(error_of("u1 ? u2", sys) == "position 4: unexpected character '?'");
  CHECK(error_of("u1/2", sys) == "position 3: unexpected character '/'");
  CHECK(error_of("1/0", sys) == "position 3: zero denominator in rational literal");
  CHECK(error_of("u1^u2", sys) == "position 4: exponent must be a non-negative integer");
  CHECK(error_of("u1^-2", sys) == "position 4: negative exponent");
  CHECK(error_of("u1'^(2)", sys) ==
        "position 4: malformed derivative suffix: mixing apostrophes with ^(k)");
  CHECK(error_of("(u1 + 1)^(2)", sys) ==
        "position 9: exponent must be a non-negative integer (derivative suffixes attach to variables)");
}

TEST_CASE("t is the field generator over Q(t) and reserved over Q") {
  DaeSystem qt = two_vars(FieldTag::Qt);
  CHECK(parse("t*u1", qt) == DiffPoly::var(JetVar{qt.u_id(0), 0}).scaled(Qt::t()));
  CHECK(parse("t^2", qt) == DiffPoly::constant(Qt::t() * Qt::t()));
  CHECK(error_of("t'", qt) == "position 1: 't' cannot carry a derivative suffix");

  DaeSystem q = two_vars();
  CHECK(error_of("t + u1", q) == "position 1: 't' is reserved over Q");
}

TEST_CASE("right-hand-side names need explicit permission") {
  DaeSystem sys = two_vars();
  CHECK(error_of("y1 + u1", sys) == "position 1: right-hand-side name 'y1' cannot appear here");
  CHECK(parse_expression("y1 + u1", sys, true).term_count() == 2);
}

TEST_CASE("single jet variables") {
  DaeSystem sys = two_vars();
  CHECK(parse_jetvar("u2''", sys) == JetVar{sys.u_id(1), 2});
  CHECK(parse_jetvar("y1", sys) == JetVar{sys.y_id(0), 0});
  CHECK_THROWS_AS(parse_jetvar("y1", sys, false), InputError);
  CHECK_THROWS_AS(parse_jetvar("u1 + u2", sys), InputError);
  CHECK_THROWS_AS(parse_jetvar("3", sys), InputError);
  CHECK_THROWS_AS(parse_jetvar("t", sys), InputError);
}

TEST_CASE("system loader validates its input") {
  CHECK_THROWS_WITH(load_system("["), doctest::Contains("invalid JSON"));
  CHECK_THROWS_WITH(load_system("[]"), "system file must be a JSON object");
  CHECK_THROWS_WITH(
      load_system(R"({"format_version":1,"field":"Q","u":["u1"],"g":[],"extra":3})"),
      "unknown key 'extra' in system file");
  CHECK_THROWS_WITH(load_system(R"({"field":"Q","u":["u1"],"g":[]})"),
                    "missing or unsupported format_version (expected 1)");
  CHECK_THROWS_WITH(load_system(R"({"format_version":2,"field":"Q","u":["u1"],"g":[]})"),
                    "missing or unsupported format_version (expected 1)");
  CHECK_THROWS_WITH(load_system(R"({"format_version":1,"field":"R","u":["u1"],"g":[]})"),
                    "field must be \"Q\" or \"Q(t)\", got \"R\"");
  CHECK_THROWS_WITH(load_system(R"({"format_version":1,"field":"Q","u":[],"g":[]})"),
                    "'u' must be a non-empty list of variable names");
  CHECK_THROWS_WITH(
      load_system(R"({"format_version":1,"field":"Q","x":["x1"],"u":["u1"],"f":[],"g":[]})"),
      "f list length does not match the x list");
  CHECK_THROWS_WITH(
      load_system(R"({"format_version":1,"field":"Q","u":["u1"],"g":["u1 +"]})"),
      "g[0]: position 5: expected a number, variable or '('");
  CHECK_THROWS_WITH(load_system(R"({"format_version":1,"field":"Q","u":["u1"],"g":[7]})"),
                    "'g' must be a list of strings");
}

TEST_CASE("loaded systems carry derived shape data") {
  DaeSystem sys = load_system(R"({
    "format_version": 1,
    "field": "Q",
    "u": ["u1", "u2", "u3"],
    "g": ["u1'' + u1*u3", "u2'' + u2*u3", "u1^2 + u2^2 - 1"]
  })");
  CHECK(sys.n == 0);
  CHECK(sys.m == 3);
  CHECK(sys.r == 3);
  CHECK(sys.e == 2);
  CHECK(sys.ej == std::vector<int>{2, 2, 0});
  REQUIRE(sys.eps.size() == 3);
  CHECK(sys.eps[0] == 2);
  CHECK(sys.eps[1] == 2);
  CHECK(sys.eps[2] == 0);
}

TEST_CASE("emit round-trips") {
  const char* files[] = {"pendulum", "chain4", "ode2", "decay_qt"};
  for (const char* f : files) {
    CAPTURE(f);
    DaeSystem sys = load_system_file(std::string(DAEIDX_SOURCE_DIR "/systems/") + f + ".json");
    DaeSystem again = load_system(emit_system(sys).dump());
    CHECK(system_equal(sys, again));
    // and a second round trip is byte-stable
    CHECK(emit_system(sys).dump() == emit_system(again).dump());
  }
}
