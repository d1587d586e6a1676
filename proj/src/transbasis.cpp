#include "daeidx/transbasis.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "daeidx/errors.hpp"
#include "daeidx/invariants.hpp"

namespace daeidx {

CriterionMatrix criterion_matrix(SystemContext& ctx, int levels, int var_order) {
  const DaeSystem& sys = ctx.system();
  CriterionMatrix cm;
  for (int o = 0; o <= var_order; ++o) {
    for (int a = 0; a < sys.n; ++a) cm.columns.push_back(JetVar{sys.x_id(a), o});
    for (int a = 0; a < sys.m; ++a) cm.columns.push_back(JetVar{sys.u_id(a), o});
  }
  cm.degree_bound = window_degree_bound(sys, std::max(1, levels), std::max(0, var_order));
  for (int l = 0; l < levels; ++l)
    for (int a = 0; a < sys.n + sys.r; ++a) {
      const DiffPoly& h = a < sys.n ? ctx.F_level(a, l) : ctx.G_level(a - sys.n, l);
      std::vector<DiffPoly> row;
      row.reserve(cm.columns.size());
      for (const auto& v : cm.columns) row.push_back(ctx.reduce(h.partial(v)));
      cm.entry.push_back(std::move(row));
    }
  return cm;
}

namespace {

PolyMatrix drop_columns(const CriterionMatrix& cm, const std::set<JetVar>& removed) {
  PolyMatrix out;
  out.reserve(cm.entry.size());
  for (const auto& row : cm.entry) {
    std::vector<DiffPoly> r;
    r.reserve(row.size());
    for (size_t c = 0; c < cm.columns.size(); ++c)
      if (!removed.count(cm.columns[c])) r.push_back(row[c]);
    out.push_back(std::move(r));
  }
  return out;
}

long criterion_rank(const CriterionMatrix& cm, const std::set<JetVar>& removed,
                    const DaeSystem& sys, const RankOptions& opt, const std::string& context) {
  if (cm.entry.empty()) return 0;
  PolyMatrix m = removed.empty() ? cm.entry : drop_columns(cm, removed);
  if (m.empty() || m[0].empty()) return 0;
  return matrix_rank(m, cm.degree_bound, sys.field, opt, context);
}

}  // namespace

bool is_algebraically_independent(SystemContext& ctx, const std::vector<JetVar>& vars, int level,
                                  int sigma, const RankOptions& opt) {
  const DaeSystem& sys = ctx.system();
  if (sys.e != 1)
    throw InputError("the Jacobian criterion applies to first-order systems; reduce first");
  if (level < 0 || level > 1) throw InputError("independence level must be 0 or 1");
  if (sigma < 0) throw InputError("independence tests need a computed index");
  std::set<JetVar> removed;
  for (const auto& v : vars) {
    if (sys.kind(v.id) == VarKind::Y || sys.kind(v.id) == VarKind::Param)
      throw InputError("independence applies to unknowns only");
    if (static_cast<int>(v.deriv) > level)
      throw InputError("variable exceeds the requested level");
    removed.insert(v);
  }
  if (removed.empty()) return true;
  CriterionMatrix cm = criterion_matrix(ctx, sigma + level, sigma + level);
  std::ostringstream base;
  base << "criterion[level=" << level << "]";
  long full = criterion_rank(cm, {}, sys, opt, base.str());
  long sub = criterion_rank(cm, removed, sys, opt, base.str() + " minus vars");
  return sub == full;
}

BasisReport differential_transcendence_basis(SystemContext& ctx, const RankOptions& opt) {
  const DaeSystem& sys = ctx.system();
  if (sys.e != 1)
    throw InputError("the basis construction applies to first-order systems; reduce first");
  auto namer = sys.namer();

  BasisReport rep;
  MuResult mu;
  rep.sigma = differentiation_index(ctx, opt, std::nullopt, &mu);
  rep.ord = ideal_order(sys, mu.mu_sigma);

  // level 0: maximal independent set among the unknowns, declared order
  CriterionMatrix cm0 = criterion_matrix(ctx, rep.sigma, rep.sigma);
  long full0 = criterion_rank(cm0, {}, sys, opt, "criterion[level=0]");
  std::set<JetVar> chosen0;
  std::vector<JetVar> b0;
  for (VarId id = 0; id < static_cast<VarId>(sys.n + sys.m); ++id) {
    JetVar v{id, 0};
    std::set<JetVar> removed = chosen0;
    removed.insert(v);
    std::ostringstream context;
    context << "criterion[level=0] minus {b0, " << jetvar_to_string(v, namer) << "}";
    long sub = criterion_rank(cm0, removed, sys, opt, context.str());
    bool accepted = sub == full0;
    rep.decisions.push_back({jetvar_to_string(v, namer), 0, full0, sub, accepted});
    if (accepted) {
      chosen0.insert(v);
      b0.push_back(v);
    }
  }

  long expected_b0 = static_cast<long>(sys.m - sys.r) + rep.ord;
  if (static_cast<long>(b0.size()) != expected_b0) {
    std::ostringstream os;
    os << "level-0 greedy found " << b0.size() << " independent unknowns, expected "
       << expected_b0 << "; retry with --exact";
    throw StabilizationError(os.str());
  }

  // level 1: complete with m - r derivatives of accepted level-0 unknowns
  std::vector<JetVar> w;
  if (sys.m - sys.r > 0) {
    CriterionMatrix cm1 = criterion_matrix(ctx, rep.sigma + 1, rep.sigma + 1);
    long full1 = criterion_rank(cm1, {}, sys, opt, "criterion[level=1]");
    std::set<JetVar> removed1 = chosen0;
    for (const auto& v : b0) {
      if (static_cast<int>(w.size()) == sys.m - sys.r) break;
      JetVar cand{v.id, 1};
      std::set<JetVar> removed = removed1;
      removed.insert(cand);
      std::ostringstream context;
      context << "criterion[level=1] minus {b0, w, " << jetvar_to_string(cand, namer) << "}";
      long sub = criterion_rank(cm1, removed, sys, opt, context.str());
      bool accepted = sub == full1;
      rep.decisions.push_back({jetvar_to_string(cand, namer), 1, full1, sub, accepted});
      if (accepted) {
        if (sys.kind(cand.id) == VarKind::X)
          throw StabilizationError(
              "an explicit-part derivative tested independent; rank evaluation failed");
        removed1.insert(cand);
        w.push_back(cand);
      }
    }
    if (static_cast<int>(w.size()) < sys.m - sys.r) {
      std::ostringstream os;
      os << "only " << w.size() << " of " << (sys.m - sys.r)
         << " basis derivatives were independent; retry with --exact";
      throw StabilizationError(os.str());
    }
  }

  std::set<VarId> w_ids;
  for (const auto& v : w) w_ids.insert(v.id);
  std::set<VarId> b0_ids;
  for (const auto& v : b0) b0_ids.insert(v.id);
  for (const auto& v : b0) rep.b0.push_back(sys.name_of(v.id));
  for (const auto& v : w) rep.w.push_back(sys.name_of(v.id));
  for (const auto& v : b0)
    if (!w_ids.count(v.id)) rep.xi.push_back(sys.name_of(v.id));
  for (VarId id = 0; id < static_cast<VarId>(sys.n + sys.m); ++id)
    if (!b0_ids.count(id)) rep.eta.push_back(sys.name_of(id));
  return rep;
}

bool verify_order_preservation(const DaeSystem& sys, const std::vector<std::string>& w_names,
                               const RankOptions& opt) {
  SystemContext base(sys);
  MuResult mu_base;
  differentiation_index(base, opt, std::nullopt, &mu_base);
  long ord_base = ideal_order(sys, mu_base.mu_sigma);

  DaeSystem loc = localize(sys, w_names);
  SystemContext ctx(loc);
  MuResult mu_loc;
  differentiation_index(ctx, opt, std::nullopt, &mu_loc);
  long ord_loc = ideal_order(loc, mu_loc.mu_sigma);
  return ord_base == ord_loc;
}

}  // namespace daeidx
