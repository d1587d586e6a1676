#include "daeidx/prolong.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "daeidx/errors.hpp"

namespace daeidx {

SystemContext::SystemContext(const DaeSystem& sys) : sys_(sys) {
  fpro_.resize(static_cast<size_t>(sys.n));
  for (int i = 0; i < sys.n; ++i) {
    DiffPoly xi_dot = DiffPoly::var(JetVar{sys.x_id(i), 1});
    fpro_[static_cast<size_t>(i)].push_back(sys.f[static_cast<size_t>(i)] - xi_dot);
  }
  gpro_.resize(static_cast<size_t>(sys.r));
  gonly_.resize(static_cast<size_t>(sys.r));
  for (int j = 0; j < sys.r; ++j) {
    DiffPoly yj = DiffPoly::var(JetVar{sys.y_id(j), 0});
    gpro_[static_cast<size_t>(j)].push_back(sys.g[static_cast<size_t>(j)] - yj);
    gonly_[static_cast<size_t>(j)].push_back(sys.g[static_cast<size_t>(j)]);
  }
  xjet_.resize(static_cast<size_t>(sys.n));
}

static const DiffPoly& extend_chain(std::vector<DiffPoly>& chain, int level) {
  while (static_cast<int>(chain.size()) <= level)
    chain.push_back(chain.back().total_derivative());
  return chain[static_cast<size_t>(level)];
}

const DiffPoly& SystemContext::F_level(int i, int level) {
  if (i < 0 || i >= sys_.n || level < 0) throw std::logic_error("F_level: bad index");
  return extend_chain(fpro_[static_cast<size_t>(i)], level);
}

const DiffPoly& SystemContext::G_level(int j, int level) {
  if (j < 0 || j >= sys_.r || level < 0) throw std::logic_error("G_level: bad index");
  return extend_chain(gpro_[static_cast<size_t>(j)], level);
}

const DiffPoly& SystemContext::g_level(int j, int level) {
  if (j < 0 || j >= sys_.r || level < 0) throw std::logic_error("g_level: bad index");
  return extend_chain(gonly_[static_cast<size_t>(j)], level);
}

const DiffPoly& SystemContext::x_jet(int i, int s) {
  if (i < 0 || i >= sys_.n || s < 1) throw std::logic_error("x_jet: bad index");
  auto& chain = xjet_[static_cast<size_t>(i)];
  if (chain.empty()) chain.push_back(sys_.f[static_cast<size_t>(i)]);  // f is reduced already
  while (static_cast<int>(chain.size()) < s)
    chain.push_back(induced_derivative(chain.back()));
  return chain[static_cast<size_t>(s - 1)];
}

DiffPoly SystemContext::reduce(const DiffPoly& p) {
  return p.substitute([this](const JetVar& v) -> std::optional<DiffPoly> {
    if (sys_.kind(v.id) == VarKind::X && v.deriv >= 1)
      return x_jet(v.id, static_cast<int>(v.deriv));
    return std::nullopt;
  });
}

DiffPoly SystemContext::induced_derivative(const DiffPoly& p) {
  return reduce(p.total_derivative());
}

long window_degree_bound(const DaeSystem& sys, int k, int i) {
  long d = 1;
  for (const auto& p : sys.f) d = std::max(d, static_cast<long>(p.total_degree()));
  for (const auto& p : sys.g) d = std::max(d, static_cast<long>(p.total_degree()));
  return d * (1 + (static_cast<long>(i) + k) * std::max(1L, d - 1));
}

JacobianWindow build_window(SystemContext& ctx, int k, int i) {
  const DaeSystem& sys = ctx.system();
  if (k < 1) throw std::logic_error("window needs k >= 1");
  if (i < sys.e - 1) throw std::logic_error("window needs i >= e - 1");

  JacobianWindow w;
  w.k = k;
  w.i = i;
  w.rows = k * (sys.n + sys.r);
  w.cols = k * (sys.n + sys.m);
  w.degree_bound = window_degree_bound(sys, k, i);

  std::vector<JetVar> colvars;
  colvars.reserve(static_cast<size_t>(w.cols));
  for (int q = 1; q <= k; ++q) {
    for (int a = 0; a < sys.n; ++a) colvars.push_back(JetVar{sys.x_id(a), i + q});
    for (int a = 0; a < sys.m; ++a) colvars.push_back(JetVar{sys.u_id(a), i + q});
  }
  auto namer = sys.namer();
  for (const auto& v : colvars) w.col_label.push_back(jetvar_to_string(v, namer));

  w.entry.assign(static_cast<size_t>(w.rows), {});
  int row = 0;
  for (int p = 1; p <= k; ++p) {
    int level = i - sys.e + p;
    for (int a = 0; a < sys.n + sys.r; ++a, ++row) {
      bool is_f = a < sys.n;
      const DiffPoly& h =
          is_f ? ctx.F_level(a, level) : ctx.G_level(a - sys.n, level);
      {
        std::ostringstream lbl;
        lbl << (is_f ? "F" : "G") << (is_f ? a + 1 : a - sys.n + 1) << "^(" << level << ")";
        w.row_label.push_back(lbl.str());
      }
      auto& out = w.entry[static_cast<size_t>(row)];
      out.reserve(colvars.size());
      for (const auto& v : colvars) {
        DiffPoly ent = ctx.reduce(h.partial(v));
        w.max_entry_degree = std::max(w.max_entry_degree, std::max(0, ent.total_degree()));
        out.push_back(std::move(ent));
      }
    }
  }
  return w;
}

const Rat& KPoint::value(const JetVar& v) const {
  auto it = values.find(v);
  if (it == values.end()) {
    std::ostringstream os;
    os << "evaluation point does not cover variable id " << v.id << " at derivative order "
       << v.deriv;
    throw std::logic_error(os.str());
  }
  return it->second;
}

static void draw_base_values(SystemContext& ctx, KPoint& pt, int u_level, SplitMix64& rng,
                             const Int& B) {
  const DaeSystem& sys = ctx.system();
  pt.tval = Rat(uniform_in_range(rng, B));
  for (VarId id = 0; id < static_cast<VarId>(sys.vars.size()); ++id) {
    switch (sys.kind(id)) {
      case VarKind::X:
        pt.values[JetVar{id, 0}] = Rat(uniform_in_range(rng, B));
        break;
      case VarKind::U:
      case VarKind::Param:
        for (int l = 0; l <= u_level; ++l)
          pt.values[JetVar{id, l}] = Rat(uniform_in_range(rng, B));
        break;
      case VarKind::Y:
        break;
    }
  }
  // higher x-jets follow from the explicit part; store them so later
  // evaluations need no context
  for (int i = 0; i < sys.n; ++i)
    for (int s = 1; s <= u_level; ++s) {
      const DiffPoly& val = ctx.x_jet(i, s);
      pt.values[JetVar{sys.x_id(i), s}] =
          val.evaluate([&](const JetVar& v) -> Rat { return pt.value(v); }, pt.tval);
    }
}

KPoint sample_kpoint(SystemContext& ctx, int L, uint64_t seed, const Int& B) {
  if (L < 0) throw std::logic_error("sample_kpoint: negative level");
  KPoint pt;
  SplitMix64 rng(derive_seed(seed, 0x4b504f494e54ULL, static_cast<uint64_t>(L)));
  draw_base_values(ctx, pt, L, rng, B);
  return pt;
}

KPoint sample_variety_point(SystemContext& ctx, int y_level, int u_level, uint64_t seed,
                            const Int& B) {
  const DaeSystem& sys = ctx.system();
  if (y_level < 0 || u_level < 0) throw std::logic_error("sample_variety_point: negative level");
  int draw_level = std::max(u_level, sys.e + y_level);
  KPoint pt;
  SplitMix64 rng(derive_seed(seed, 0x56415249455459ULL, static_cast<uint64_t>(draw_level)));
  draw_base_values(ctx, pt, draw_level, rng, B);
  for (int j = 0; j < sys.r; ++j)
    for (int l = 0; l <= y_level; ++l) {
      DiffPoly gl = ctx.reduce(ctx.g_level(j, l));
      pt.values[JetVar{sys.y_id(j), l}] =
          gl.evaluate([&](const JetVar& v) -> Rat { return pt.value(v); }, pt.tval);
    }
  return pt;
}

std::vector<std::vector<Rat>> evaluate_window(const JacobianWindow& w, const KPoint& pt) {
  std::vector<std::vector<Rat>> out(static_cast<size_t>(w.rows));
  for (int r = 0; r < w.rows; ++r) {
    out[static_cast<size_t>(r)].reserve(static_cast<size_t>(w.cols));
    for (int c = 0; c < w.cols; ++c)
      out[static_cast<size_t>(r)].push_back(w.entry[static_cast<size_t>(r)][static_cast<size_t>(c)]
                                                .evaluate([&](const JetVar& v) -> Rat { return pt.value(v); },
                                                          pt.tval));
  }
  return out;
}

std::string dump_window(const JacobianWindow& w, const DaeSystem& sys) {
  auto namer = sys.namer();
  std::ostringstream os;
  os << "J[k=" << w.k << ",i=" << w.i << "] rows=" << w.rows << " cols=" << w.cols << "\n";
  os << "cols:";
  for (int c = 0; c < w.cols; ++c) os << (c ? " | " : " ") << w.col_label[static_cast<size_t>(c)];
  os << "\n";
  for (int r = 0; r < w.rows; ++r) {
    os << w.row_label[static_cast<size_t>(r)] << ":";
    for (int c = 0; c < w.cols; ++c)
      os << (c ? " | " : " ")
         << w.entry[static_cast<size_t>(r)][static_cast<size_t>(c)].to_string(namer);
    os << "\n";
  }
  return os.str();
}

}  // namespace daeidx
