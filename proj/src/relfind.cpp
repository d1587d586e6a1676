#include "daeidx/relfind.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "daeidx/errors.hpp"
#include "daeidx/ranklab.hpp"
#include "daeidx/rng.hpp"

namespace daeidx {

namespace {

constexpr uint64_t kPointStream = 0x72656c706f696eULL;

long input_degree(const DaeSystem& sys) {
  long d = 1;
  for (const auto& p : sys.f) d = std::max(d, static_cast<long>(p.total_degree()));
  for (const auto& p : sys.g) d = std::max(d, static_cast<long>(p.total_degree()));
  return d;
}

// exponent vectors with given total-degree budget, graded then lexicographic
void enumerate_exponents(int nvars, int degree, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(static_cast<size_t>(nvars), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == nvars) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<size_t>(pos)] = e;
      self(self, pos + 1, left - e);
    }
    cur[static_cast<size_t>(pos)] = 0;
  };
  for (int total = 0; total <= degree; ++total) rec(rec, 0, total);
}

}  // namespace

Int relation_degree_bound(const DaeSystem& sys, int sigma, const std::string& flavor) {
  if (sigma < 0) throw InputError("degree bound needs a computed index");
  unsigned long exp;
  if (flavor == "V1")
    exp = static_cast<unsigned long>(sigma + 1) * static_cast<unsigned long>(sys.n + sys.r);
  else if (flavor == "V0")
    exp = static_cast<unsigned long>(sigma) * static_cast<unsigned long>(sys.n + sys.r);
  else
    throw InputError("unknown projection flavor '" + flavor + "' (expected V0 or V1)");
  Int base(input_degree(sys));
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

RelationResult implicit_relation(SystemContext& ctx, const RelationQuery& query, uint64_t seed) {
  const DaeSystem& sys = ctx.system();
  auto namer = sys.namer();

  if (query.max_degree < 1) throw InputError("relation degree cap must be at least 1");
  std::vector<JetVar> coords;
  coords.push_back(query.target);
  for (const auto& v : query.basis) coords.push_back(v);
  for (const auto& v : query.y_jets) coords.push_back(v);
  {
    std::set<JetVar> dedup(coords.begin(), coords.end());
    if (dedup.size() != coords.size())
      throw InputError("relation coordinates repeat (target, basis and Y-jets must be disjoint)");
  }
  for (const auto& v : query.basis)
    if (sys.kind(v.id) == VarKind::Y)
      throw InputError("right-hand-side jets belong in the Y list, not the basis");
  for (const auto& v : query.y_jets)
    if (sys.kind(v.id) != VarKind::Y)
      throw InputError("'" + jetvar_to_string(v, namer) + "' is not a right-hand-side jet");
  if (sys.kind(query.target.id) == VarKind::Y)
    throw InputError("the relation target must be an unknown, not a right-hand side");

  int y_level = -1;
  for (const auto& v : query.y_jets) y_level = std::max(y_level, static_cast<int>(v.deriv));
  int u_level = 0;
  for (const auto& v : coords)
    if (sys.kind(v.id) != VarKind::Y) u_level = std::max(u_level, static_cast<int>(v.deriv));

  const bool with_t = sys.field == FieldTag::Qt;
  const int nvars = static_cast<int>(coords.size()) + (with_t ? 1 : 0);
  const Int B = Int(1) << 20;

  uint64_t next_point = 0;
  auto draw_point = [&]() {
    return sample_variety_point(ctx, std::max(0, y_level), u_level,
                                derive_seed(seed, kPointStream, next_point++), B);
  };
  auto eval_monomial = [&](const std::vector<int>& exps, const KPoint& pt) {
    Rat acc(1);
    for (size_t c = 0; c < coords.size(); ++c)
      for (int e = 0; e < exps[c]; ++e) acc *= pt.value(coords[c]);
    if (with_t)
      for (int e = 0; e < exps.back(); ++e) acc *= pt.tval;
    return acc;
  };

  RelationResult res;
  for (int degree = 1; degree <= query.max_degree; ++degree) {
    std::vector<std::vector<int>> monos;
    enumerate_exponents(nvars, degree, monos);
    if (monos.size() > kRelationMonomialCap) {
      std::ostringstream os;
      os << "degree " << degree << " needs " << monos.size()
         << " monomials, above the desk-scale cap " << kRelationMonomialCap;
      throw ResourceError(os.str());
    }

    std::vector<KPoint> points;
    size_t want = monos.size() + 8;
    while (points.size() < want) points.push_back(draw_point());

    for (int round = 0; round < 4; ++round) {
      RatMatrix m(points.size(), std::vector<Rat>(monos.size()));
      for (size_t r = 0; r < points.size(); ++r)
        for (size_t c = 0; c < monos.size(); ++c) m[r][c] = eval_monomial(monos[c], points[r]);
      auto space = nullspace(m);
      if (space.empty()) break;  // no relation at this degree

      // keep target-involving candidates, lowest support degree first
      std::vector<size_t> order(space.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      auto support_degree = [&](const std::vector<Rat>& vec) {
        int dmax = 0;
        for (size_t c = 0; c < vec.size(); ++c)
          if (vec[c] != 0) {
            int dsum = 0;
            for (int e : monos[c]) dsum += e;
            dmax = std::max(dmax, dsum);
          }
        return dmax;
      };
      std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return support_degree(space[a]) < support_degree(space[b]);
      });

      std::vector<KPoint> fresh;
      for (int i = 0; i < 20; ++i) fresh.push_back(draw_point());

      bool any_target_candidate = false;
      for (size_t oi : order) {
        const auto& vec = space[oi];
        bool involves_target = false;
        for (size_t c = 0; c < monos.size(); ++c)
          if (vec[c] != 0 && monos[c][0] > 0) involves_target = true;
        if (!involves_target) continue;
        any_target_candidate = true;

        DiffPoly rel;
        for (size_t c = 0; c < monos.size(); ++c) {
          if (vec[c] == 0) continue;
          Qt coef(vec[c]);
          if (with_t && monos[c].back() > 0)
            coef = coef * Qt(QPoly::t_power(monos[c].back()));
          Monomial mono;
          for (size_t vi = 0; vi < coords.size(); ++vi)
            if (monos[c][vi] > 0) mono = mono * Monomial(coords[vi], monos[c][vi]);
          rel.add_term(mono, coef);
        }
        if (rel.is_zero()) continue;

        bool vanishes = true;
        for (const auto& pt : fresh)
          if (rel.evaluate([&](const JetVar& v) -> Rat { return pt.value(v); }, pt.tval) != 0) {
            vanishes = false;
            break;
          }
        if (!vanishes) continue;

        DiffPoly part = rel.partial(query.target);
        bool separable = false;
        for (const auto& pt : fresh)
          if (!part.is_zero() &&
              part.evaluate([&](const JetVar& v) -> Rat { return pt.value(v); }, pt.tval) != 0) {
            separable = true;
            break;
          }
        if (!separable) continue;

        // normalize the leading coefficient
        Qt lead = rel.leading_term().second;
        if (lead.is_rational())
          rel = rel.scaled(Qt(Rat(1) / lead.rational_value()));
        else
          rel = rel.scaled(Qt(Rat(1) / lead.num().leading()));

        res.found = true;
        res.relation = rel;
        res.degree = rel.total_degree();
        res.points_used = static_cast<int>(points.size() + fresh.size());
        res.separable = true;
        return res;
      }

      // every candidate here misses the target: look at higher degrees instead
      if (!any_target_candidate) break;
      // target candidates existed but none survived: absorb the fresh points and refit
      for (auto& pt : fresh) points.push_back(std::move(pt));
      if (round == 3)
        throw StabilizationError("interpolated relations kept failing fresh-point verification");
    }
  }

  res.found = false;
  std::ostringstream os;
  os << "none up to " << query.max_degree;
  res.note = os.str();
  return res;
}

}  // namespace daeidx
