#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daeidx/prolong.hpp"

namespace daeidx {

// conservative interpolation degree cap for the eliminating polynomial:
// d^((sigma+1)(n+r)) for the level-1 projection, d^(sigma(n+r)) for level 0
Int relation_degree_bound(const DaeSystem& sys, int sigma, const std::string& flavor);

struct RelationQuery {
  JetVar target;
  std::vector<JetVar> basis;   // jets the relation may use besides the target
  std::vector<JetVar> y_jets;  // right-hand-side jets admitted as coordinates
  int max_degree = 2;
};

struct RelationResult {
  bool found = false;
  DiffPoly relation;    // leading coefficient normalized
  int degree = 0;
  int points_used = 0;
  bool separable = false;
  std::string note;
};

inline constexpr size_t kRelationMonomialCap = 5000;

// Sampling + nullspace interpolation over variety points: ascend total degree
// 1..max_degree, fit the monomial coefficients, keep the lowest-degree
// candidate that involves the target, verify on 20 fresh points (exact), and
// witness separability by a nonzero partial at a sample.
RelationResult implicit_relation(SystemContext& ctx, const RelationQuery& query, uint64_t seed);

}  // namespace daeidx
