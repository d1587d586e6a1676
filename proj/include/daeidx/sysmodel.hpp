#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "daeidx/diffpoly.hpp"
#include "daeidx/errors.hpp"

namespace daeidx {

enum class FieldTag { Q, Qt };

// A DAE system with generic right-hand sides:
//   f_i(X, U) = x_i'           (i = 1..n, explicit part)
//   g_j(X, U, ..., U^(e_j)) = y_j   (j = 1..r, constraint part, y_j generic)
//
// The variable table lists the x-block, u-block, y-block and parameter block
// in that order; every DiffPoly of the system indexes into this table.
struct DaeSystem {
  FieldTag field = FieldTag::Q;
  std::vector<Var> vars;
  int n = 0, m = 0, r = 0;
  std::vector<DiffPoly> f;
  std::vector<DiffPoly> g;

  // filled in by validate()
  std::vector<int> ej;                  // order of g_j in the u-variables
  std::vector<std::optional<int>> eps;  // highest order of u_i across all g_j
  int e = 1;                            // max{1, e_1, ..., e_r}
  std::vector<std::string> warnings;

  VarId x_id(int i) const { return static_cast<VarId>(i); }
  VarId u_id(int i) const { return static_cast<VarId>(n + i); }
  VarId y_id(int j) const { return static_cast<VarId>(n + m + j); }
  VarId param_id(int p) const { return static_cast<VarId>(n + m + r + p); }
  int param_count() const { return static_cast<int>(vars.size()) - n - m - r; }
  VarKind kind(VarId id) const { return vars[static_cast<size_t>(id)].kind; }
  const std::string& name_of(VarId id) const { return vars[static_cast<size_t>(id)].name; }
  std::function<std::string(VarId)> namer() const {
    return [this](VarId id) { return name_of(id); };
  }
  std::optional<VarId> id_of(const std::string& name) const;

  // the n+m unknowns in declared order (x's first)
  std::vector<VarId> unknown_ids() const;

  std::string poly_str(const DiffPoly& p) const { return p.to_string(namer()); }
};

// builds the variable table (x | u | y | params) for a system with r
// constraints; f and g are filled afterwards. The y-names are generated.
DaeSystem make_skeleton(FieldTag field, const std::vector<std::string>& x_names,
                        const std::vector<std::string>& u_names, int r,
                        const std::vector<std::string>& param_names = {});

// shape checks plus derived data (e_j, eps_i, e, warnings); throws InputError
void validate(DaeSystem& sys);

// structural equality: same field, same tables, identical polynomials
bool system_equal(const DaeSystem& a, const DaeSystem& b);

// U_i^(l) -> Z_i^(e - eps_i + l); requires n = 0, r = m, every eps_i finite
DaeSystem tilde_transform(const DaeSystem& sys);

// classical reduction to order one: copies U_{i,l} for 0 <= l <= eps_i, link
// equations d/dt U_{i,l} = U_{i,l+1} in the explicit block, g rewritten at
// order <= 1 with constraint orders 0. Variables absent from g keep one copy.
DaeSystem reduce_to_first_order(const DaeSystem& sys);

// moves the named u-variables into the (transcendental) parameter block
DaeSystem localize(const DaeSystem& sys, const std::vector<std::string>& w_names);

}  // namespace daeidx
