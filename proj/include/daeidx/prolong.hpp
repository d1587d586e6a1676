#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "daeidx/rng.hpp"
#include "daeidx/sysmodel.hpp"

namespace daeidx {

// Workspace bound to one system: memoizes prolongations of the defining
// polynomials and the values the explicit part induces on x-jets.
//
// Defining polynomials:
//   F_i = f_i - x_i',        i = 1..n
//   G_j = g_j - y_j,         j = 1..r
// Their l-fold total derivatives F_i^(l), G_j^(l) are cached per level,
// as are the induced x-jet values
//   xjet(i, s) = D^(s-1)(f_i)   (the value of x_i^(s), reduced),
// where D is the total derivative followed by substitution of x-jets.
class SystemContext {
 public:
  explicit SystemContext(const DaeSystem& sys);

  const DaeSystem& system() const { return sys_; }

  const DiffPoly& F_level(int i, int level);
  const DiffPoly& G_level(int j, int level);
  // prolongation of the right-hand-side-free part g_j alone
  const DiffPoly& g_level(int j, int level);

  // reduced value of x_i^(s), s >= 1
  const DiffPoly& x_jet(int i, int s);

  // substitute every x-jet of order >= 1 by its induced value
  DiffPoly reduce(const DiffPoly& p);

  // derivation of the reduced coordinate ring: total derivative, then reduce
  DiffPoly induced_derivative(const DiffPoly& p);

 private:
  const DaeSystem& sys_;
  std::vector<std::vector<DiffPoly>> fpro_;  // F_i^(l)
  std::vector<std::vector<DiffPoly>> gpro_;  // G_j^(l)
  std::vector<std::vector<DiffPoly>> gonly_; // g_j^(l)
  std::vector<std::vector<DiffPoly>> xjet_;  // xjet_[i][s-1]
};

// Jacobian window J_{k,i}: rows are F^(i-e+1..i-e+k), G^(i-e+1..i-e+k),
// columns are X^(i+1..i+k), U^(i+1..i+k); entries live in the reduced ring
// (no x-jets of positive order).
struct JacobianWindow {
  int k = 0;
  int i = 0;
  int rows = 0;  // k (n + r)
  int cols = 0;  // k (n + m)
  std::vector<std::vector<DiffPoly>> entry;
  std::vector<std::string> row_label;
  std::vector<std::string> col_label;
  int max_entry_degree = 0;  // max total degree actually present
  long degree_bound = 0;     // a priori bound used by the rank budget
};

JacobianWindow build_window(SystemContext& ctx, int k, int i);

// a priori degree bound for entries of J_{k,i}: d (1 + (i + k) max(1, d - 1))
// with d the max total degree among the f_i and g_j (at least 1)
long window_degree_bound(const DaeSystem& sys, int k, int i);

// Exact point of the reduced coordinate space: values for x (order 0),
// u-jets, parameter jets, optionally y-jets, plus a value for t.
struct KPoint {
  Rat tval = Rat(0);
  std::map<JetVar, Rat> values;

  bool covers(const JetVar& v) const { return values.count(v) != 0; }
  const Rat& value(const JetVar& v) const;
};

// Deterministic sample: x (order 0), u^(0..L) and parameter jets up to L are
// drawn uniformly from [-B, B]; x-jets 1..L are then derived through the
// induced derivation and stored explicitly so window evaluation never needs
// the context again.
KPoint sample_kpoint(SystemContext& ctx, int L, uint64_t seed, const Int& B);

// Variety sample: like sample_kpoint, but also stores y_j^(l) for
// l = 0..y_level as the evaluated prolongations g_j^(l); u and parameter
// jets are drawn up to u_level.
KPoint sample_variety_point(SystemContext& ctx, int y_level, int u_level,
                            uint64_t seed, const Int& B);

std::vector<std::vector<Rat>> evaluate_window(const JacobianWindow& w, const KPoint& pt);

// printable grid, one row per line, entries separated by " | "
std::string dump_window(const JacobianWindow& w, const DaeSystem& sys);

}  // namespace daeidx
