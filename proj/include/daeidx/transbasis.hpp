#pragma once

#include <string>
#include <vector>

#include "daeidx/indexcore.hpp"
#include "daeidx/prolong.hpp"

namespace daeidx {

// Jacobian of the generators F^(0..levels-1), G^(0..levels-1) with respect
// to every jet of the unknowns up to order `var_order`, entries reduced.
// Column order: orders ascending, x's before u's inside each order.
struct CriterionMatrix {
  PolyMatrix entry;
  std::vector<JetVar> columns;
  long degree_bound = 0;
};

CriterionMatrix criterion_matrix(SystemContext& ctx, int levels, int var_order);

// Jacobian criterion on the coordinate ring presented by the generators up
// to level sigma + level - 1: the classes of `vars` are algebraically
// independent iff removing their columns keeps the rank. First-order
// systems only.
bool is_algebraically_independent(SystemContext& ctx, const std::vector<JetVar>& vars, int level,
                                  int sigma, const RankOptions& opt);

struct BasisDecision {
  std::string var;  // printed jet variable
  int level = 0;
  long rank_full = 0;
  long rank_without = 0;
  bool accepted = false;
};

struct BasisReport {
  int sigma = -1;
  long ord = 0;
  std::vector<std::string> b0;   // maximal independent level-0 set
  std::vector<std::string> w;    // derivatives chosen -> differential basis
  std::vector<std::string> xi;   // order-carrying complement inside b0
  std::vector<std::string> eta;  // remaining unknowns
  std::vector<BasisDecision> decisions;
  bool reduced_system = false;   // reported in first-order reduction variables
  bool order_preserved = false;  // localizing at W keeps the ideal order
};

// Greedy order-preserving differential transcendence basis (first-order
// systems; higher orders are handled by the caller via reduce_to_first_order).
BasisReport differential_transcendence_basis(SystemContext& ctx, const RankOptions& opt);

// ideal_order(localize(sys, W)) == ideal_order(sys)
bool verify_order_preservation(const DaeSystem& sys, const std::vector<std::string>& w_names,
                               const RankOptions& opt);

}  // namespace daeidx
