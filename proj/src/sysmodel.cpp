#include "daeidx/sysmodel.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace daeidx {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::string unique_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base.insert(0, 1, base[0]);
  return base;
}

}  // namespace

std::optional<VarId> DaeSystem::id_of(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<VarId>(i);
  return std::nullopt;
}

std::vector<VarId> DaeSystem::unknown_ids() const {
  std::vector<VarId> out;
  for (int i = 0; i < n + m; ++i) out.push_back(static_cast<VarId>(i));
  return out;
}

DaeSystem make_skeleton(FieldTag field, const std::vector<std::string>& x_names,
                        const std::vector<std::string>& u_names, int r,
                        const std::vector<std::string>& param_names) {
  DaeSystem sys;
  sys.field = field;
  sys.n = static_cast<int>(x_names.size());
  sys.m = static_cast<int>(u_names.size());
  sys.r = r;
  std::set<std::string> taken;
  for (const auto& nm : x_names) taken.insert(nm);
  for (const auto& nm : u_names) taken.insert(nm);
  for (const auto& nm : param_names) taken.insert(nm);
  for (const auto& nm : x_names) sys.vars.push_back({nm, VarKind::X});
  for (const auto& nm : u_names) sys.vars.push_back({nm, VarKind::U});
  for (int j = 0; j < r; ++j) {
    std::string nm = unique_name("y" + std::to_string(j + 1), taken);
    taken.insert(nm);
    sys.vars.push_back({nm, VarKind::Y});
  }
  for (const auto& nm : param_names) sys.vars.push_back({nm, VarKind::Param});
  return sys;
}

void validate(DaeSystem& sys) {
  // localizing every unknown leaves a pure ODE in x, which is still a system
  if (sys.m < 1 && sys.n < 1) throw InputError("system needs at least one variable");
  if (static_cast<int>(sys.f.size()) != sys.n)
    throw InputError("f list length does not match the x list");
  if (static_cast<int>(sys.g.size()) != sys.r)
    throw InputError("g list length does not match the declared constraint count");

  std::set<std::string> seen;
  for (const auto& v : sys.vars) {
    if (!valid_identifier(v.name)) throw InputError("invalid variable name '" + v.name + "'");
    if (v.name == "t") throw InputError("'t' is reserved and cannot name a variable");
    if (!seen.insert(v.name).second)
      throw InputError("duplicate variable name '" + v.name + "'");
  }

  for (int i = 0; i < sys.n; ++i) {
    for (const auto& v : sys.f[static_cast<size_t>(i)].variables()) {
      if (sys.kind(v.id) == VarKind::Y)
        throw InputError("f may not reference a right-hand-side name");
      if (v.deriv != 0)
        throw InputError("derivative of '" + sys.name_of(v.id) + "' appears in f; f must have jet order 0");
    }
  }

  sys.ej.assign(static_cast<size_t>(sys.r), 0);
  sys.eps.assign(static_cast<size_t>(sys.m), std::nullopt);
  for (int j = 0; j < sys.r; ++j) {
    for (const auto& v : sys.g[static_cast<size_t>(j)].variables()) {
      switch (sys.kind(v.id)) {
        case VarKind::Y:
          throw InputError("g may not reference a right-hand-side name");
        case VarKind::X:
          if (v.deriv != 0)
            throw InputError("derivative of x-variable '" + sys.name_of(v.id) +
                             "' appears in g; x enters constraints at order 0");
          break;
        case VarKind::U: {
          int ui = v.id - sys.n;
          sys.ej[static_cast<size_t>(j)] = std::max(sys.ej[static_cast<size_t>(j)], static_cast<int>(v.deriv));
          auto& ev = sys.eps[static_cast<size_t>(ui)];
          if (!ev || v.deriv > *ev) ev = v.deriv;
          break;
        }
        case VarKind::Param:
          break;
      }
    }
  }
  sys.e = 1;
  for (int o : sys.ej) sys.e = std::max(sys.e, o);

  sys.warnings.clear();
  for (int i = 0; i < sys.m; ++i) {
    if (sys.eps[static_cast<size_t>(i)]) continue;
    bool in_f = false;
    for (const auto& p : sys.f)
      if (p.order_of(sys.u_id(i))) in_f = true;
    if (!in_f)
      sys.warnings.push_back("u-variable '" + sys.name_of(sys.u_id(i)) +
                             "' does not appear in the system; it is trivially free");
  }
}

bool system_equal(const DaeSystem& a, const DaeSystem& b) {
  if (a.field != b.field || a.n != b.n || a.m != b.m || a.r != b.r) return false;
  if (a.vars.size() != b.vars.size()) return false;
  for (size_t i = 0; i < a.vars.size(); ++i)
    if (a.vars[i].name != b.vars[i].name || a.vars[i].kind != b.vars[i].kind) return false;
  return a.f == b.f && a.g == b.g;
}

DaeSystem tilde_transform(const DaeSystem& sys) {
  if (sys.n != 0) throw InputError("tilde transform requires a system without x-variables");
  if (sys.r != sys.m) throw InputError("tilde transform requires r = m");
  for (int i = 0; i < sys.m; ++i)
    if (!sys.eps[static_cast<size_t>(i)])
      throw InputError("tilde transform requires every u-variable to appear in g");

  std::vector<std::string> params;
  for (int p = 0; p < sys.param_count(); ++p) params.push_back(sys.name_of(sys.param_id(p)));
  std::set<std::string> taken(params.begin(), params.end());
  std::vector<std::string> z_names;
  for (int i = 0; i < sys.m; ++i) {
    std::string nm = unique_name("z" + std::to_string(i + 1), taken);
    taken.insert(nm);
    z_names.push_back(nm);
  }

  DaeSystem out = make_skeleton(sys.field, {}, z_names, sys.r, params);
  auto image = [&](const JetVar& v) -> std::optional<DiffPoly> {
    switch (sys.kind(v.id)) {
      case VarKind::U: {
        int i = v.id - sys.n;
        int shift = sys.e - *sys.eps[static_cast<size_t>(i)];
        return DiffPoly::var({out.u_id(i), v.deriv + shift});
      }
      case VarKind::Param: {
        auto nid = out.id_of(sys.name_of(v.id));
        return DiffPoly::var({*nid, v.deriv});
      }
      default:
        throw std::logic_error("unexpected variable kind in tilde transform");
    }
  };
  for (const auto& gj : sys.g) out.g.push_back(gj.substitute(image));
  validate(out);
  if (out.e != sys.e) throw std::logic_error("tilde transform must preserve the maximal order");
  for (int i = 0; i < out.m; ++i)
    if (!out.eps[static_cast<size_t>(i)] || *out.eps[static_cast<size_t>(i)] != out.e)
      throw std::logic_error("tilde transform must raise every variable to order e");
  return out;
}

DaeSystem reduce_to_first_order(const DaeSystem& sys) {
  std::set<std::string> taken;
  for (const auto& v : sys.vars) taken.insert(v.name);

  // copy names per u-variable; single-copy variables keep their name
  std::vector<std::vector<std::string>> copy_names(static_cast<size_t>(sys.m));
  for (int i = 0; i < sys.m; ++i) {
    int top = sys.eps[static_cast<size_t>(i)].value_or(0);
    const std::string& base = sys.name_of(sys.u_id(i));
    if (top == 0) {
      copy_names[static_cast<size_t>(i)] = {base};
      continue;
    }
    for (int l = 0; l <= top; ++l) {
      std::string nm = unique_name(base + "_" + std::to_string(l), taken);
      taken.insert(nm);
      copy_names[static_cast<size_t>(i)].push_back(nm);
    }
  }

  std::vector<std::string> x_names, u_names, params;
  for (int i = 0; i < sys.n; ++i) x_names.push_back(sys.name_of(sys.x_id(i)));
  for (int i = 0; i < sys.m; ++i) {
    const auto& copies = copy_names[static_cast<size_t>(i)];
    for (size_t l = 0; l + 1 < copies.size(); ++l) x_names.push_back(copies[l]);
    u_names.push_back(copies.back());
  }
  for (int p = 0; p < sys.param_count(); ++p) params.push_back(sys.name_of(sys.param_id(p)));

  DaeSystem out = make_skeleton(sys.field, x_names, u_names, sys.r, params);
  auto image = [&](const JetVar& v) -> std::optional<DiffPoly> {
    if (sys.kind(v.id) == VarKind::U) {
      int i = v.id - sys.n;
      const auto& copies = copy_names[static_cast<size_t>(i)];
      if (v.deriv >= static_cast<int>(copies.size()))
        throw std::logic_error("derivative above eps during first-order reduction");
      return DiffPoly::var({*out.id_of(copies[static_cast<size_t>(v.deriv)]), 0});
    }
    return DiffPoly::var({*out.id_of(sys.name_of(v.id)), v.deriv});
  };

  for (const auto& fi : sys.f) out.f.push_back(fi.substitute(image));
  for (int i = 0; i < sys.m; ++i) {
    const auto& copies = copy_names[static_cast<size_t>(i)];
    for (size_t l = 0; l + 1 < copies.size(); ++l)
      out.f.push_back(DiffPoly::var({*out.id_of(copies[l + 1]), 0}));
  }
  for (const auto& gj : sys.g) out.g.push_back(gj.substitute(image));
  validate(out);
  for (int o : out.ej)
    if (o != 0) throw std::logic_error("first-order reduction must leave constraints at order 0");
  return out;
}

DaeSystem localize(const DaeSystem& sys, const std::vector<std::string>& w_names) {
  std::set<std::string> w_set;
  for (const auto& nm : w_names) {
    auto id = sys.id_of(nm);
    if (!id) throw InputError("unknown variable '" + nm + "' in localization set");
    if (sys.kind(*id) == VarKind::X)
      throw InputError("localization at x-variable '" + nm +
                       "' is not supported: its explicit equation has no generic right-hand side");
    if (sys.kind(*id) != VarKind::U)
      throw InputError("'" + nm + "' is not a u-variable");
    if (!w_set.insert(nm).second) throw InputError("duplicate variable '" + nm + "' in localization set");
  }

  std::vector<std::string> x_names, u_names, params;
  for (int i = 0; i < sys.n; ++i) x_names.push_back(sys.name_of(sys.x_id(i)));
  for (int i = 0; i < sys.m; ++i) {
    const std::string& nm = sys.name_of(sys.u_id(i));
    (w_set.count(nm) ? params : u_names).push_back(nm);
  }
  for (int p = 0; p < sys.param_count(); ++p) params.push_back(sys.name_of(sys.param_id(p)));
  // the parameter block is kept sorted so repeated localizations compose
  std::sort(params.begin(), params.end());

  DaeSystem out = make_skeleton(sys.field, x_names, u_names, sys.r, params);
  auto image = [&](const JetVar& v) -> std::optional<DiffPoly> {
    if (sys.kind(v.id) == VarKind::Y) throw std::logic_error("y inside system polynomial");
    return DiffPoly::var({*out.id_of(sys.name_of(v.id)), v.deriv});
  };
  for (const auto& fi : sys.f) out.f.push_back(fi.substitute(image));
  for (const auto& gj : sys.g) out.g.push_back(gj.substitute(image));
  validate(out);
  return out;
}

}  // namespace daeidx
