#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "daeidx/prolong.hpp"
#include "daeidx/ranklab.hpp"

namespace daeidx {

long window_rank(SystemContext& ctx, int k, int i, const RankOptions& opt,
                 const std::string& context);

struct MuResult {
  std::vector<long> mu;  // mu[0] = 0, then each computed mu_k
  int sigma = -1;
  long mu_sigma = 0;
};

// certified envelope for mu_k:
//   n min{k, e-1} + sum_j min{k, e - e_j}  <=  mu_k  <=  min{k, e} (n + r)
std::pair<long, long> mu_bounds(const DaeSystem& sys, int k);

// search cap: sigma <= K* = min{ e (n + r), e + n + sum_j e_j }
long sigma_search_cap(const DaeSystem& sys);

// mu_k at window offset i. With full = false the sequence stops at the first
// repeat (which defines sigma); with full = true every k up to kmax + 1 is
// computed and the increasing-then-constant shape is enforced globally.
// Throws StabilizationError when the sequence leaves the certified envelope,
// loses monotonicity, or fails to stabilize within the cap.
MuResult mu_sequence(SystemContext& ctx, int i, long kmax, const RankOptions& opt,
                     bool full = false);

int differentiation_index(SystemContext& ctx, const RankOptions& opt,
                          std::optional<long> kmax_override = std::nullopt,
                          MuResult* out = nullptr);

// index of the tilde transform (requires n = 0, r = m, every u present in g)
int modified_index(const DaeSystem& sys, const RankOptions& opt, MuResult* out = nullptr);

// index of the first-order form: the system itself when e = 1, otherwise its
// first-order reduction
int hat_index(const DaeSystem& sys, const RankOptions& opt, MuResult* out = nullptr);

}  // namespace daeidx
