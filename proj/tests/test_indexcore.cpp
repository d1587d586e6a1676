#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "daeidx/errors.hpp"
#include "daeidx/indexcore.hpp"
#include "daeidx/sysparse.hpp"

using namespace daeidx;

namespace {

DaeSystem load(const std::string& stem) {
  return load_system_file(DAEIDX_SOURCE_DIR "/systems/" + stem + ".json");
}

std::vector<long> mu_of(const DaeSystem& sys, const RankOptions& opt = {}) {
  SystemContext ctx(sys);
  MuResult res;
  differentiation_index(ctx, opt, std::nullopt, &res);
  return res.mu;
}

const std::vector<long> kFlat{0, 0};

}  // namespace

TEST_CASE("pendulum stabilizes at four") {
  DaeSystem sys = load("pendulum");
  SystemContext ctx(sys);
  RankOptions opt;
  MuResult res;
  CHECK(differentiation_index(ctx, opt, std::nullopt, &res) == 4);
  CHECK(res.mu == std::vector<long>{0, 1, 2, 3, 4, 4});
  CHECK(res.mu_sigma == 4);

  // the full sweep keeps the value flat beyond sigma
  MuResult full = mu_sequence(ctx, sys.e - 1, 6, opt, true);
  CHECK(full.sigma == 4);
  CHECK(full.mu == std::vector<long>{0, 1, 2, 3, 4, 4, 4, 4});
  for (size_t k = 0; k < full.mu.size(); ++k) {
    auto [lo, hi] = mu_bounds(sys, static_cast<int>(k));
    CHECK(lo <= full.mu[k]);
    CHECK(full.mu[k] <= hi);
  }
}

TEST_CASE("window offset beyond e-1 does not change mu") {
  DaeSystem sys = load("pendulum");
  SystemContext ctx(sys);
  RankOptions opt;
  MuResult base = mu_sequence(ctx, sys.e - 1, 6, opt);
  for (int i : {sys.e, sys.e + 1}) {
    MuResult shifted = mu_sequence(ctx, i, 6, opt);
    CHECK(shifted.sigma == base.sigma);
    CHECK(shifted.mu == base.mu);
  }
}

TEST_CASE("integration chains have index zero") {
  for (const std::string& stem : {"chain3", "chain4", "chain5"}) {
    CAPTURE(stem);
    CHECK(mu_of(load(stem)) == kFlat);
  }
  CHECK(sigma_search_cap(load("chain3")) == 2);
  CHECK(sigma_search_cap(load("chain4")) == 3);
  CHECK(sigma_search_cap(load("chain5")) == 4);
}

TEST_CASE("small goldens") {
  DaeSystem single = load("single");
  CHECK(mu_of(single) == std::vector<long>{0, 1, 1});
  CHECK(sigma_search_cap(single) == 1);

  DaeSystem ode2 = load("ode2");  // explicit ODE block, no constraints
  CHECK(mu_of(ode2) == kFlat);
  CHECK(sigma_search_cap(ode2) == 2);

  DaeSystem decay = load("decay_qt");  // coefficients in Q(t)
  CHECK(mu_of(decay) == kFlat);
  CHECK(sigma_search_cap(decay) == 1);
}

TEST_CASE("jacobi ladders") {
  DaeSystem lad4 = load("jacobi4");
  CHECK(sigma_search_cap(lad4) == 4);
  CHECK(mu_of(lad4) == std::vector<long>{0, 1, 2, 3, 4, 4});

  RankOptions opt;
  MuResult res;
  CHECK(modified_index(lad4, opt, &res) == 3);
  CHECK(res.mu == std::vector<long>{0, 1, 2, 3, 3});
  CHECK(hat_index(lad4, opt, &res) == 4);  // already first order

  DaeSystem sys5 = load("jacobi5");
  SystemContext lad5(sys5);
  CHECK(differentiation_index(lad5, opt) == 5);
}

TEST_CASE("pendulum index variants") {
  DaeSystem sys = load("pendulum");
  RankOptions opt;
  MuResult res;
  CHECK(modified_index(sys, opt, &res) == 2);
  CHECK(res.mu == std::vector<long>{0, 1, 2, 2});
  CHECK(hat_index(sys, opt, &res) == 3);
  CHECK(res.mu == std::vector<long>{0, 3, 4, 5, 5});
}

TEST_CASE("localization moves the index") {
  DaeSystem sys = load("chain4");
  RankOptions opt;

  DaeSystem at4 = localize(sys, {"u4"});
  CHECK(sigma_search_cap(at4) == 3);
  SystemContext c4(at4);
  MuResult res;
  CHECK(differentiation_index(c4, opt, std::nullopt, &res) == 3);
  CHECK(res.mu == std::vector<long>{0, 1, 2, 3, 3});
  CHECK(modified_index(at4, opt) == 2);
  CHECK(hat_index(at4, opt) == 3);

  DaeSystem at3 = localize(sys, {"u3"});
  CHECK(mu_of(at3) == kFlat);
  CHECK(modified_index(at3, opt) == 0);
  CHECK(hat_index(at3, opt) == 0);
}

TEST_CASE("envelope literals") {
  DaeSystem sys = load("pendulum");  // e = 2, orders (2, 2, 0), no x
  CHECK(mu_bounds(sys, 0) == std::pair<long, long>{0, 0});
  CHECK(mu_bounds(sys, 1) == std::pair<long, long>{1, 3});
  CHECK(mu_bounds(sys, 2) == std::pair<long, long>{2, 6});
  CHECK(mu_bounds(sys, 5) == std::pair<long, long>{2, 6});
  CHECK(sigma_search_cap(sys) == 6);

  DaeSystem ode2 = load("ode2");
  CHECK(mu_bounds(ode2, 1) == std::pair<long, long>{0, 2});
}

TEST_CASE("exact rank mode reproduces the sampled answers") {
  RankOptions opt;
  opt.mode = RankMode::Exact;
  CHECK(mu_of(load("single"), opt) == std::vector<long>{0, 1, 1});
  CHECK(mu_of(load("chain4"), opt) == kFlat);
  CHECK(mu_of(load("pendulum"), opt) == std::vector<long>{0, 1, 2, 3, 4, 4});
}

TEST_CASE("degenerate right-hand sides are reported, not mis-indexed") {
  // two copies of the same constraint: the rank deficit pushes mu through
  // its certified ceiling
  DaeSystem sys = load_system(R"({"format_version": 1, "field": "Q",
    "x": [], "f": [], "u": ["u1", "u2"], "g": ["u1'", "u1'"]})");
  SystemContext ctx(sys);
  RankOptions opt;
  CHECK_THROWS_WITH_AS((void)differentiation_index(ctx, opt),
                       doctest::Contains("escapes its certified envelope"), StabilizationError);

  // a cap that is too small to ever see the plateau
  DaeSystem pendulum = load("pendulum");
  SystemContext pend(pendulum);
  CHECK_THROWS_WITH_AS((void)differentiation_index(pend, opt, 0),
                       doctest::Contains("did not stabilize"), StabilizationError);
}

TEST_CASE("tilde transform preconditions") {
  RankOptions opt;
  CHECK_THROWS_WITH_AS((void)modified_index(load("chain4"), opt),
                       doctest::Contains("requires r = m"), InputError);
  CHECK_THROWS_WITH_AS((void)modified_index(load("ode2"), opt),
                       doctest::Contains("without x-variables"), InputError);
}
