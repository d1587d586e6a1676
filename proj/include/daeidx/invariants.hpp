#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daeidx/sysmodel.hpp"

namespace daeidx {

// ord = e (n + r) - mu_sigma
long ideal_order(const DaeSystem& sys, long mu_sigma);

struct HilbertKolchinRecord {
  long slope = 0;            // m - r
  long constant = 0;         // ord
  long mu_sigma = 0;
  int regularity_bound = 0;  // e - 1
  bool function_equals_polynomial = false;  // guaranteed for e = 1
};

HilbertKolchinRecord hilbert_kolchin(const DaeSystem& sys, long mu_sigma);

// m x r grid of orders e_ij = order of u_i in g_j; absent entries stay unset
std::vector<std::vector<std::optional<long>>> order_bound_matrix(const DaeSystem& sys);

long greenspan_bound(const DaeSystem& sys);
long ritt_bound(const DaeSystem& sys);

// max-weight assignment over a square grid with unset = -infinity;
// nullopt when no permutation avoids the unset entries
std::optional<long> max_weight_assignment(
    const std::vector<std::vector<std::optional<long>>>& w);
// reference implementation by permutation enumeration (dimension <= 8)
std::optional<long> max_weight_assignment_brute(
    const std::vector<std::vector<std::optional<long>>>& w);

// n + assignment maximum; requires m = r, nullopt when vacuous
std::optional<long> jacobi_bound(const DaeSystem& sys);

struct OrderBoundsReport {
  long ord = 0;
  long greenspan = 0;
  long ritt = 0;
  bool jacobi_applicable = false;         // m == r
  std::optional<long> jacobi;             // unset when vacuous or inapplicable
  std::string jacobi_note;
  std::vector<std::string> tight;         // bounds met with equality
  bool ok = false;                        // ord <= every applicable bound
};

OrderBoundsReport check_order_bounds(const DaeSystem& sys, long ord);

}  // namespace daeidx
