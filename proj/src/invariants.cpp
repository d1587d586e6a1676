#include "daeidx/invariants.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "daeidx/errors.hpp"

namespace daeidx {

long ideal_order(const DaeSystem& sys, long mu_sigma) {
  return static_cast<long>(sys.e) * (sys.n + sys.r) - mu_sigma;
}

HilbertKolchinRecord hilbert_kolchin(const DaeSystem& sys, long mu_sigma) {
  HilbertKolchinRecord rec;
  rec.slope = sys.m - sys.r;
  rec.constant = ideal_order(sys, mu_sigma);
  rec.mu_sigma = mu_sigma;
  rec.regularity_bound = sys.e - 1;
  rec.function_equals_polynomial = (sys.e == 1);
  return rec;
}

std::vector<std::vector<std::optional<long>>> order_bound_matrix(const DaeSystem& sys) {
  std::vector<std::vector<std::optional<long>>> w(
      static_cast<size_t>(sys.m),
      std::vector<std::optional<long>>(static_cast<size_t>(sys.r)));
  for (int j = 0; j < sys.r; ++j)
    for (int i = 0; i < sys.m; ++i) {
      auto o = sys.g[static_cast<size_t>(j)].order_of(sys.u_id(i));
      if (o) w[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<long>(*o);
    }
  return w;
}

long greenspan_bound(const DaeSystem& sys) {
  return sys.n + std::accumulate(sys.ej.begin(), sys.ej.end(), 0L);
}

long ritt_bound(const DaeSystem& sys) {
  long total = sys.n;
  for (const auto& ev : sys.eps)
    if (ev) total += *ev;
  return total;
}

std::optional<long> max_weight_assignment(
    const std::vector<std::vector<std::optional<long>>>& w) {
  size_t nn = w.size();
  if (nn == 0) return 0;
  for (const auto& row : w)
    if (row.size() != nn) throw std::logic_error("assignment grid must be square");

  // Jonker-Volgenant style potentials on the min-cost mirror; unset entries
  // become a sentinel cost no feasible matching can contain
  long maxw = 0;
  for (const auto& row : w)
    for (const auto& e : row)
      if (e) maxw = std::max(maxw, *e);
  const long long kInf = std::numeric_limits<long long>::max() / 4;
  const long long kAbsent = static_cast<long long>(maxw) + 1 +
                            static_cast<long long>(nn) * (static_cast<long long>(maxw) + 1);
  auto cost = [&](size_t i, size_t j) -> long long {
    return w[i][j] ? static_cast<long long>(maxw) - *w[i][j] : kAbsent;
  };

  std::vector<long long> pu(nn + 1, 0), pv(nn + 1, 0);
  std::vector<size_t> match(nn + 1, 0), way(nn + 1, 0);
  for (size_t i = 1; i <= nn; ++i) {
    match[0] = i;
    size_t j0 = 0;
    std::vector<long long> minv(nn + 1, kInf);
    std::vector<bool> used(nn + 1, false);
    do {
      used[j0] = true;
      size_t i0 = match[j0], j1 = 0;
      long long delta = kInf;
      for (size_t j = 1; j <= nn; ++j) {
        if (used[j]) continue;
        long long cur = cost(i0 - 1, j - 1) - pu[i0] - pv[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= nn; ++j) {
        if (used[j]) {
          pu[match[j]] += delta;
          pv[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  long long total = 0;
  for (size_t j = 1; j <= nn; ++j) {
    if (!w[match[j] - 1][j - 1]) return std::nullopt;  // matching had to use an absent edge
    total += *w[match[j] - 1][j - 1];
  }
  return static_cast<long>(total);
}

std::optional<long> max_weight_assignment_brute(
    const std::vector<std::vector<std::optional<long>>>& w) {
  size_t nn = w.size();
  if (nn == 0) return 0;
  if (nn > 8) throw std::logic_error("brute-force assignment limited to dimension 8");
  std::vector<size_t> perm(nn);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<long> best;
  do {
    long total = 0;
    bool ok = true;
    for (size_t j = 0; j < nn && ok; ++j) {
      if (!w[perm[j]][j])
        ok = false;
      else
        total += *w[perm[j]][j];
    }
    if (ok && (!best || total > *best)) best = total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::optional<long> jacobi_bound(const DaeSystem& sys) {
  if (sys.m != sys.r) throw InputError("the Jacobi bound needs as many equations as unknowns");
  auto best = max_weight_assignment(order_bound_matrix(sys));
  if (!best) return std::nullopt;
  return sys.n + *best;
}

OrderBoundsReport check_order_bounds(const DaeSystem& sys, long ord) {
  OrderBoundsReport rep;
  rep.ord = ord;
  rep.greenspan = greenspan_bound(sys);
  rep.ritt = ritt_bound(sys);
  rep.jacobi_applicable = (sys.m == sys.r);
  if (rep.jacobi_applicable) {
    rep.jacobi = jacobi_bound(sys);
    if (!rep.jacobi) rep.jacobi_note = "vacuous: every permutation meets an absent entry";
  } else {
    rep.jacobi_note = "not applicable: m != r";
  }
  rep.ok = ord >= 0 && ord <= rep.greenspan && ord <= rep.ritt &&
           (!rep.jacobi || ord <= *rep.jacobi);
  if (ord == rep.greenspan) rep.tight.push_back("greenspan");
  if (ord == rep.ritt) rep.tight.push_back("ritt");
  if (rep.jacobi && ord == *rep.jacobi) rep.tight.push_back("jacobi");
  return rep;
}

}  // namespace daeidx
