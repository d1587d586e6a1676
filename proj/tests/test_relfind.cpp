#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "daeidx/errors.hpp"
#include "daeidx/relfind.hpp"
#include "daeidx/sysparse.hpp"

using namespace daeidx;

namespace {

DaeSystem load(const std::string& stem) {
  return load_system_file(DAEIDX_SOURCE_DIR "/systems/" + stem + ".json");
}

JetVar jet(const DaeSystem& sys, const std::string& name, int deriv) {
  auto id = sys.id_of(name);
  REQUIRE(id.has_value());
  return JetVar{*id, static_cast<uint32_t>(deriv)};
}

std::vector<JetVar> y_jets(const DaeSystem& sys, int level) {
  std::vector<JetVar> out;
  for (int l = 0; l <= level; ++l)
    for (int j = 0; j < sys.r; ++j) out.push_back(JetVar{sys.y_id(j), static_cast<uint32_t>(l)});
  return out;
}

}  // namespace

TEST_CASE("interpolation degree caps") {
  DaeSystem chain = load("chain4");  // affine constraints: d = 1
  CHECK(relation_degree_bound(chain, 0, "V1") == 1);
  CHECK(relation_degree_bound(chain, 0, "V0") == 1);

  DaeSystem pend = load("pendulum");  // d = 2, three unknowns
  CHECK(relation_degree_bound(pend, 4, "V1") == 32768);
  CHECK(relation_degree_bound(pend, 4, "V0") == 4096);
  DaeSystem tld = tilde_transform(pend);
  CHECK(relation_degree_bound(tld, 2, "V1") == 512);

  CHECK_THROWS_WITH_AS((void)relation_degree_bound(pend, -1, "V1"),
                       doctest::Contains("computed index"), InputError);
  CHECK_THROWS_WITH_AS((void)relation_degree_bound(pend, 2, "V2"),
                       doctest::Contains("unknown projection flavor"), InputError);
}

TEST_CASE("recovers the linear constraint behind u1") {
  DaeSystem sys = load("chain4");
  SystemContext ctx(sys);
  RelationQuery q;
  q.target = jet(sys, "u1", 0);
  q.basis = {jet(sys, "u4", 1)};
  q.y_jets = y_jets(sys, 0);
  RelationResult res = implicit_relation(ctx, q, 42);
  REQUIRE(res.found);
  CHECK(res.relation.to_string(sys.namer()) == "u4' + u1 - y1");
  CHECK(res.degree == 1);
  CHECK(res.separable);
  CHECK(res.points_used >= 20);

  // normalization makes the answer seed-independent
  RelationResult other = implicit_relation(ctx, q, 777);
  CHECK(other.relation.to_string(sys.namer()) == "u4' + u1 - y1");
  CHECK(implicit_relation(ctx, q, 42).points_used == res.points_used);
}

TEST_CASE("recovers the differentiated constraint behind u2") {
  DaeSystem sys = load("chain4");
  SystemContext ctx(sys);
  RelationQuery q;
  q.target = jet(sys, "u2", 0);
  q.basis = {jet(sys, "u4", 2)};
  q.y_jets = y_jets(sys, 1);
  RelationResult res = implicit_relation(ctx, q, 42);
  REQUIRE(res.found);
  CHECK(res.relation.to_string(sys.namer()) == "u4'' - y1' - u2 + y2");
  CHECK(res.degree == 1);
  CHECK(res.separable);

  // the found polynomial vanishes on fresh variety samples it never saw
  for (uint64_t s : {1001ULL, 1002ULL, 1003ULL}) {
    KPoint pt = sample_variety_point(ctx, 2, 3, s, Int(1) << 20);
    Rat val = res.relation.evaluate([&](const JetVar& v) -> Rat { return pt.value(v); }, pt.tval);
    CHECK(val == Rat(0));
  }
}

TEST_CASE("a target with no algebraic link reports none") {
  DaeSystem sys = load("chain4");
  SystemContext ctx(sys);
  RelationQuery q;
  q.target = jet(sys, "u4", 0);  // u4 itself is free: nothing pins it
  q.y_jets = y_jets(sys, 0);
  RelationResult res = implicit_relation(ctx, q, 42);
  CHECK_FALSE(res.found);
  CHECK(res.note == "none up to 2");
  CHECK(res.relation.is_zero());

  q.max_degree = 1;
  res = implicit_relation(ctx, q, 42);
  CHECK_FALSE(res.found);
  CHECK(res.note == "none up to 1");
}

TEST_CASE("query validation") {
  DaeSystem sys = load("chain4");
  SystemContext ctx(sys);
  RelationQuery q;
  q.target = jet(sys, "u1", 0);

  RelationQuery bad = q;
  bad.max_degree = 0;
  CHECK_THROWS_WITH_AS((void)implicit_relation(ctx, bad, 1),
                       doctest::Contains("at least 1"), InputError);

  bad = q;
  bad.basis = {jet(sys, "u1", 0)};
  CHECK_THROWS_WITH_AS((void)implicit_relation(ctx, bad, 1),
                       doctest::Contains("coordinates repeat"), InputError);

  bad = q;
  bad.basis = {JetVar{sys.y_id(0), 0}};
  CHECK_THROWS_WITH_AS((void)implicit_relation(ctx, bad, 1),
                       doctest::Contains("belong in the Y list"), InputError);

  bad = q;
  bad.y_jets = {jet(sys, "u4", 1)};
  CHECK_THROWS_WITH_AS((void)implicit_relation(ctx, bad, 1),
                       doctest::Contains("not a right-hand-side jet"), InputError);

  bad = q;
  bad.target = JetVar{sys.y_id(0), 0};
  CHECK_THROWS_WITH_AS((void)implicit_relation(ctx, bad, 1),
                       doctest::Contains("must be an unknown"), InputError);
}
