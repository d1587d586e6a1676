#include "daeidx/analyze.hpp"

#include <algorithm>
#include <sstream>

#include "daeidx/errors.hpp"
#include "daeidx/indexcore.hpp"

namespace daeidx {

AnalysisReport analyze(const DaeSystem& sys, const AnalyzeOptions& opt) {
  AnalysisReport rep;
  rep.seed = opt.seed;
  rep.epsilon = opt.epsilon_str;
  rep.mode = opt.mode == RankMode::Exact ? "exact" : "probabilistic";
  rep.kmax_override = opt.kmax;

  rep.field = sys.field;
  rep.n = sys.n;
  rep.m = sys.m;
  rep.r = sys.r;
  rep.e = sys.e;
  for (int i = 0; i < sys.n; ++i) rep.x_names.push_back(sys.name_of(sys.x_id(i)));
  for (int i = 0; i < sys.m; ++i) rep.u_names.push_back(sys.name_of(sys.u_id(i)));
  for (int p = 0; p < sys.param_count(); ++p)
    rep.param_names.push_back(sys.name_of(sys.param_id(p)));
  for (const auto& p : sys.f) rep.f_strs.push_back(sys.poly_str(p));
  for (const auto& p : sys.g) rep.g_strs.push_back(sys.poly_str(p));
  rep.ej = sys.ej;
  rep.eps = sys.eps;
  rep.warnings = sys.warnings;

  RankOptions ropt;
  ropt.mode = opt.mode;
  ropt.epsilon = epsilon_pow2(opt.epsilon_k);
  ropt.epsilon_str = opt.epsilon_str;
  ropt.seed = opt.seed;
  ropt.warnings = &rep.warnings;
  if (opt.audit) {
    rep.has_audit = true;
    ropt.audit = &rep.audit;
  }

  SystemContext ctx(sys);
  MuResult mu;
  int sigma = differentiation_index(ctx, ropt, opt.kmax, &mu);

  if (opt.want_index) {
    rep.has_index = true;
    rep.sigma = sigma;
    rep.search_cap = sigma_search_cap(sys);
    rep.sigma_within_cap = sigma <= rep.search_cap;
    for (size_t k = 0; k < mu.mu.size(); ++k) {
      auto [lo, hi] = mu_bounds(sys, static_cast<int>(k));
      rep.mu.push_back({static_cast<long>(k), mu.mu[k], lo, hi});
    }

    MuResult mu_tilde;
    try {
      rep.sigma_tilde = modified_index(sys, ropt, &mu_tilde);
      rep.mu_tilde = mu_tilde.mu;
    } catch (const InputError& e) {
      rep.sigma_tilde = std::nullopt;
      rep.sigma_tilde_note = e.what();
    }

    MuResult mu_hat;
    rep.sigma_hat = hat_index(sys, ropt, &mu_hat);
    rep.mu_hat = mu_hat.mu;

    if (rep.sigma_tilde) {
      // The upper bound relaxes to max(sigma, 1): rewriting an index-0 system
      // in first-order form can cost one differentiation (e.g. u'' = rhs turns
      // into a semi-explicit index-1 system), while for sigma >= 1 the
      // first-order form never exceeds the original index.
      if (!(*rep.sigma_tilde <= *rep.sigma_hat && *rep.sigma_hat <= std::max(sigma, 1))) {
        std::ostringstream os;
        os << "index variants violate sigma_tilde <= sigma_hat <= max(sigma, 1) ("
           << *rep.sigma_tilde << ", " << *rep.sigma_hat << ", " << sigma
           << "); rank evaluation failed or the right-hand sides are not generic";
        throw StabilizationError(os.str());
      }
    }
  }

  rep.has_order = true;
  rep.order = ideal_order(sys, mu.mu_sigma);
  rep.hk = hilbert_kolchin(sys, mu.mu_sigma);
  {
    long lo = static_cast<long>(sys.e - 1) * sys.n;
    for (int o : sys.ej) lo += sys.e - o;
    long hi = static_cast<long>(sys.e) * (sys.n + sys.r);
    rep.mu_sigma_within_bounds = lo <= mu.mu_sigma && mu.mu_sigma <= hi;
  }

  if (opt.want_bounds) {
    rep.has_bounds = true;
    rep.bounds = check_order_bounds(sys, rep.order);
  }

  if (opt.want_basis) {
    rep.has_basis = true;
    if (sys.e == 1) {
      rep.basis = differential_transcendence_basis(ctx, ropt);
      rep.basis.order_preserved = verify_order_preservation(sys, rep.basis.w, ropt);
    } else {
      DaeSystem red = reduce_to_first_order(sys);
      SystemContext rctx(red);
      rep.basis = differential_transcendence_basis(rctx, ropt);
      rep.basis.reduced_system = true;
      rep.basis.order_preserved = verify_order_preservation(red, rep.basis.w, ropt);
      rep.basis_note = "system has order above one; basis computed on its first-order reduction";
    }
  }

  return rep;
}

}  // namespace daeidx
