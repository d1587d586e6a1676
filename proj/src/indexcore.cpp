#include "daeidx/indexcore.hpp"

#include <algorithm>
#include <sstream>

#include "daeidx/errors.hpp"

namespace daeidx {

long window_rank(SystemContext& ctx, int k, int i, const RankOptions& opt,
                 const std::string& context) {
  JacobianWindow w = build_window(ctx, k, i);
  if (w.rows == 0 || w.cols == 0) return 0;
  return matrix_rank(w.entry, w.degree_bound, ctx.system().field, opt, context);
}

std::pair<long, long> mu_bounds(const DaeSystem& sys, int k) {
  long lo = static_cast<long>(sys.n) * std::min<long>(k, sys.e - 1);
  for (int o : sys.ej) lo += std::min<long>(k, sys.e - o);
  long hi = std::min<long>(k, sys.e) * (sys.n + sys.r);
  return {lo, hi};
}

long sigma_search_cap(const DaeSystem& sys) {
  long sum_ej = 0;
  for (int o : sys.ej) sum_ej += o;
  return std::min<long>(static_cast<long>(sys.e) * (sys.n + sys.r),
                        sys.e + sys.n + sum_ej);
}

MuResult mu_sequence(SystemContext& ctx, int i, long kmax, const RankOptions& opt, bool full) {
  const DaeSystem& sys = ctx.system();
  MuResult res;
  res.mu.push_back(0);
  for (long k = 1; k <= kmax + 1; ++k) {
    std::ostringstream context;
    context << "J[k=" << k << ",i=" << i << "]";
    long rank = window_rank(ctx, static_cast<int>(k), i, opt, context.str());
    long mu_k = k * (sys.n + sys.r) - rank;
    long prev = res.mu.back();

    auto [lo, hi] = mu_bounds(sys, static_cast<int>(k));
    if (mu_k < lo || mu_k > hi) {
      std::ostringstream os;
      os << "mu_" << k << " = " << mu_k << " escapes its certified envelope [" << lo << ", " << hi
         << "]; the right-hand sides are likely not generic";
      throw StabilizationError(os.str());
    }
    if (mu_k < prev)
      throw StabilizationError("mu-sequence lost monotonicity; rank evaluation failed or the "
                               "right-hand sides are not generic");
    if (res.sigma >= 0 && mu_k != res.mu_sigma)
      throw StabilizationError("mu-sequence resumed growth after stabilizing; the right-hand "
                               "sides are likely not generic");

    res.mu.push_back(mu_k);
    if (res.sigma < 0 && mu_k == prev) {
      res.sigma = static_cast<int>(k) - 1;
      res.mu_sigma = mu_k;
      if (!full) break;
    }
  }
  if (res.sigma < 0) {
    std::ostringstream os;
    os << "mu-sequence did not stabilize for k <= " << (kmax + 1)
       << "; the right-hand sides are likely not generic";
    throw StabilizationError(os.str());
  }
  return res;
}

int differentiation_index(SystemContext& ctx, const RankOptions& opt,
                          std::optional<long> kmax_override, MuResult* out) {
  long cap = kmax_override ? *kmax_override : sigma_search_cap(ctx.system());
  MuResult res = mu_sequence(ctx, ctx.system().e - 1, cap, opt, false);
  if (out) *out = res;
  return res.sigma;
}

int modified_index(const DaeSystem& sys, const RankOptions& opt, MuResult* out) {
  DaeSystem tilde = tilde_transform(sys);
  SystemContext ctx(tilde);
  return differentiation_index(ctx, opt, std::nullopt, out);
}

int hat_index(const DaeSystem& sys, const RankOptions& opt, MuResult* out) {
  // A system of order one is its own first-order form; rewriting it anyway
  // (extra copies plus link equations) can raise the index.
  if (sys.e == 1) {
    SystemContext ctx(sys);
    return differentiation_index(ctx, opt, std::nullopt, out);
  }
  DaeSystem red = reduce_to_first_order(sys);
  SystemContext ctx(red);
  return differentiation_index(ctx, opt, std::nullopt, out);
}

}  // namespace daeidx
