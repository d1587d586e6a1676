#include "daeidx/ranklab.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>

#include "daeidx/errors.hpp"
#include "daeidx/rng.hpp"

namespace daeidx {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t acc = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) acc = mulmod(acc, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return acc;
}

uint64_t invmod(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("invmod: zero");
  return powmod(a, p - 2, p);
}

struct TrialRetry {};  // a denominator met the prime; redraw the trial

uint64_t rat_mod(const Rat& q, uint64_t p) {
  uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
  uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
  if (den == 0) throw TrialRetry{};
  return mulmod(num, invmod(den, p), p);
}

uint64_t qpoly_mod(const QPoly& f, uint64_t tres, uint64_t p) {
  uint64_t acc = 0;
  for (int k = f.degree(); k >= 0; --k) acc = (mulmod(acc, tres, p) + rat_mod(f[k], p)) % p;
  return acc;
}

uint64_t qt_mod(const Qt& c, uint64_t tres, uint64_t p) {
  uint64_t num = qpoly_mod(c.num(), tres, p);
  uint64_t den = qpoly_mod(c.den(), tres, p);
  if (den == 0) throw TrialRetry{};
  return mulmod(num, invmod(den, p), p);
}

uint64_t poly_mod(const DiffPoly& poly, const std::map<JetVar, uint64_t>& res, uint64_t tres,
                  uint64_t p) {
  uint64_t acc = 0;
  for (const auto& [mono, coef] : poly.terms()) {
    uint64_t term = qt_mod(coef, tres, p);
    for (const auto& [v, exp] : mono.factors())
      term = mulmod(term, powmod(res.at(v), static_cast<uint64_t>(exp), p), p);
    acc = (acc + term) % p;
  }
  return acc;
}

int rank_mod_p(std::vector<std::vector<uint64_t>> m, uint64_t p) {
  if (m.empty() || m[0].empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    uint64_t inv = invmod(m[rank][c], p);
    for (size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] % p == 0) continue;
      uint64_t factor = mulmod(m[r][c], inv, p);
      for (size_t j = c; j < cols; ++j)
        m[r][j] = (m[r][j] + p - mulmod(factor, m[rank][j], p)) % p;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

std::set<JetVar> collect_vars(const PolyMatrix& m) {
  std::set<JetVar> vars;
  for (const auto& row : m)
    for (const auto& e : row)
      for (const auto& v : e.variables()) vars.insert(v);
  return vars;
}

// integer Bareiss with full pivoting; exact division is guaranteed
int rank_bareiss_mpz(std::vector<std::vector<Int>> m) {
  if (m.empty() || m[0].empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t steps = std::min(rows, cols);
  Int prev = 1;
  size_t rank = 0;
  for (size_t s = 0; s < steps; ++s) {
    size_t pr = rows, pc = cols;
    for (size_t r = s; r < rows && pr == rows; ++r)
      for (size_t c = s; c < cols; ++c)
        if (m[r][c] != 0) {
          pr = r;
          pc = c;
          break;
        }
    if (pr == rows) break;
    std::swap(m[pr], m[s]);
    if (pc != s)
      for (size_t r = 0; r < rows; ++r) std::swap(m[r][pc], m[r][s]);
    for (size_t r = s + 1; r < rows; ++r) {
      for (size_t c = s + 1; c < cols; ++c) {
        Int num = m[s][s] * m[r][c] - m[r][s] * m[s][c];
        mpz_divexact(m[r][c].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[r][s] = 0;
    }
    prev = m[s][s];
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

uint64_t derive_prime(uint64_t seed) {
  SplitMix64 rng(seed);
  for (;;) {
    uint64_t c = (rng.next() & ((1ULL << 61) - 1)) | (1ULL << 61) | 1ULL;
    if (is_prime_u64(c)) return c;
  }
}

RankBudget RankBudget::make(const Rat& epsilon, long rho, long degree_bound) {
  if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie in (0, 1)");
  RankBudget b;
  b.rho = std::max(1L, rho);
  b.degree_bound = std::max(1L, degree_bound);

  int kk = 0;
  Rat pow(1);
  while (pow > epsilon && kk < 4096) {
    pow /= 2;
    ++kk;
  }
  b.trials = std::max(1, (kk + 19) / 20);

  // least power of two B >= 2^20 with T*rho*D/(2B+1) <= epsilon/2
  Int q = 2 * Int(b.trials) * Int(b.rho) * Int(b.degree_bound) * epsilon.get_den();
  Int thr;
  mpz_cdiv_q(thr.get_mpz_t(), q.get_mpz_t(), epsilon.get_num().get_mpz_t());
  int bits = static_cast<int>(mpz_sizeinbase(thr.get_mpz_t(), 2));
  b.bbits = std::max(20, bits);
  b.B = Int(1) << b.bbits;
  return b;
}

bool exact_rank_feasible(const PolyMatrix& m) {
  if (m.empty() || m[0].empty()) return true;
  size_t rows = m.size(), cols = m[0].size();
  if (std::min(rows, cols) > static_cast<size_t>(kExactRankMaxDim)) return false;
  for (const auto& row : m)
    for (const auto& e : row)
      if (e.total_degree() > kExactRankMaxDegree) return false;
  return true;
}

int rank_exact(const PolyMatrix& m_in) {
  if (m_in.empty() || m_in[0].empty()) return 0;
  if (!exact_rank_feasible(m_in))
    throw ResourceError("matrix exceeds the symbolic elimination guard rails");
  PolyMatrix m = m_in;
  size_t rows = m.size(), cols = m[0].size();
  size_t steps = std::min(rows, cols);
  DiffPoly prev = DiffPoly::constant(1);
  size_t rank = 0;
  for (size_t s = 0; s < steps; ++s) {
    size_t pr = rows, pc = cols;
    size_t best_terms = 0;
    int best_deg = 0;
    for (size_t r = s; r < rows; ++r)
      for (size_t c = s; c < cols; ++c) {
        const DiffPoly& e = m[r][c];
        if (e.is_zero()) continue;
        size_t tc = e.term_count();
        int dg = e.total_degree();
        if (pr == rows || tc < best_terms || (tc == best_terms && dg < best_deg)) {
          pr = r;
          pc = c;
          best_terms = tc;
          best_deg = dg;
        }
      }
    if (pr == rows) break;
    std::swap(m[pr], m[s]);
    if (pc != s)
      for (size_t r = 0; r < rows; ++r) std::swap(m[r][pc], m[r][s]);
    for (size_t r = s + 1; r < rows; ++r) {
      for (size_t c = s + 1; c < cols; ++c) {
        DiffPoly num = m[s][s] * m[r][c] - m[r][s] * m[s][c];
        if (num.is_zero()) {
          m[r][c] = num;
          continue;
        }
        auto quo = DiffPoly::divide_exact(num, prev);
        if (!quo) throw std::logic_error("fraction-free elimination: inexact division");
        if (quo->term_count() > kExactRankMaxTerms)
          throw ResourceError("symbolic elimination outgrew the term guard rail");
        m[r][c] = std::move(*quo);
      }
      m[r][s] = DiffPoly();
    }
    prev = m[s][s];
    ++rank;
  }
  return static_cast<int>(rank);
}

int rank_rational(const RatMatrix& m) {
  if (m.empty() || m[0].empty()) return 0;
  std::vector<std::vector<Int>> z(m.size());
  for (size_t r = 0; r < m.size(); ++r) {
    Int lcm = 1;
    for (const auto& q : m[r]) {
      Int den = q.get_den();
      Int g = gcd(lcm, den);
      lcm = lcm / g * den;
    }
    z[r].reserve(m[r].size());
    for (const auto& q : m[r]) z[r].push_back(q.get_num() * (lcm / q.get_den()));
  }
  return rank_bareiss_mpz(std::move(z));
}

std::vector<std::vector<Rat>> nullspace(const RatMatrix& m_in) {
  if (m_in.empty() || m_in[0].empty()) return {};
  RatMatrix m = m_in;
  size_t rows = m.size(), cols = m[0].size();
  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    Rat inv = Rat(1) / m[rank][c];
    for (size_t j = c; j < cols; ++j) m[rank][j] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[c] = 1;
    for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank_probabilistic(const PolyMatrix& m, const Rat& epsilon, const std::string& epsilon_str,
                       long degree_bound, uint64_t seed, FieldTag field,
                       const std::string& context, RankAuditEntry* audit) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  if (rows == 0 || cols == 0) return 0;

  RankBudget budget = RankBudget::make(epsilon, std::min(rows, cols), degree_bound);
  std::set<JetVar> vars = collect_vars(m);

  int best = 0;
  constexpr uint64_t kTrialStream = 0x72616e6bULL;   // "rank"
  constexpr uint64_t kPrimeStream = 0x7072696dULL;   // "prim"

  for (int t = 0; t < budget.trials; ++t) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 16)
        throw StabilizationError("modular rank trial kept hitting coefficient denominators");
      uint64_t tseed = derive_seed(seed, kTrialStream, static_cast<uint64_t>(t) * 131 +
                                                            static_cast<uint64_t>(attempt));
      SplitMix64 rng(tseed);
      Int tdraw = uniform_in_range(rng, budget.B);
      std::map<JetVar, Int> point;
      for (const auto& v : vars) point[v] = uniform_in_range(rng, budget.B);
      try {
        int trial_best = 0;
        for (int pi = 0; pi < 2; ++pi) {
          uint64_t p = derive_prime(derive_seed(tseed, kPrimeStream, static_cast<uint64_t>(pi)));
          uint64_t tres = field == FieldTag::Qt
                              ? mpz_fdiv_ui(tdraw.get_mpz_t(), p)
                              : 0;
          std::map<JetVar, uint64_t> res;
          for (const auto& [v, val] : point) res[v] = mpz_fdiv_ui(val.get_mpz_t(), p);
          std::vector<std::vector<uint64_t>> em(static_cast<size_t>(rows),
                                                std::vector<uint64_t>(static_cast<size_t>(cols)));
          for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
              em[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                  poly_mod(m[static_cast<size_t>(r)][static_cast<size_t>(c)], res, tres, p);
          trial_best = std::max(trial_best, rank_mod_p(std::move(em), p));
        }
        best = std::max(best, trial_best);
        break;
      } catch (const TrialRetry&) {
        continue;
      }
    }
  }

  // rational confirmation trial at the pinned desk range
  {
    uint64_t cseed = derive_seed(seed, kTrialStream, 0xc0fe + static_cast<uint64_t>(budget.trials));
    SplitMix64 rng(cseed);
    Int Bc = Int(1) << 20;
    Rat tval = Rat(uniform_in_range(rng, Bc));
    std::map<JetVar, Rat> point;
    for (const auto& v : vars) point[v] = Rat(uniform_in_range(rng, Bc));
    RatMatrix em(static_cast<size_t>(rows), std::vector<Rat>(static_cast<size_t>(cols)));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        em[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            m[static_cast<size_t>(r)][static_cast<size_t>(c)].evaluate(
                [&](const JetVar& v) -> Rat { return point.at(v); }, tval);
    best = std::max(best, rank_rational(em));
  }

  if (audit) {
    audit->context = context;
    audit->rows = rows;
    audit->cols = cols;
    audit->mode = "probabilistic";
    audit->rank = best;
    audit->trials = budget.trials + 1;
    audit->range = budget.B.get_str();
    audit->degree_bound = budget.degree_bound;
    audit->epsilon = epsilon_str;
    audit->seed = seed;
  }
  return best;
}

int matrix_rank(const PolyMatrix& m, long degree_bound, FieldTag field, const RankOptions& opt,
                const std::string& context) {
  if (m.empty() || m[0].empty()) return 0;

  auto run_probabilistic = [&](const Rat& eps, const std::string& eps_str) {
    RankAuditEntry entry;
    int rank = rank_probabilistic(m, eps, eps_str, degree_bound, opt.seed, field, context, &entry);
    // desk-scale matrices admit an exact certificate on top of the sampling
    if (exact_rank_feasible(m)) {
      try {
        int certified = rank_exact(m);
        if (certified != rank && opt.warnings)
          opt.warnings->push_back("sampled rank disagreed with the exact certificate (" + context +
                                  "); keeping the certificate");
        entry.rank = certified;
        entry.mode = "probabilistic+certified";
        rank = certified;
      } catch (const ResourceError&) {
        // certificate outgrew the guard rails mid-way; the sampled value stands
      }
    }
    if (opt.audit) opt.audit->push_back(entry);
    return rank;
  };

  if (opt.mode == RankMode::Exact) {
    try {
      int rank = rank_exact(m);
      if (opt.audit) {
        RankAuditEntry entry;
        entry.context = context;
        entry.rows = static_cast<int>(m.size());
        entry.cols = static_cast<int>(m[0].size());
        entry.mode = "exact";
        entry.rank = rank;
        opt.audit->push_back(entry);
      }
      return rank;
    } catch (const ResourceError& e) {
      if (opt.warnings)
        opt.warnings->push_back(std::string("exact rank fell back to sampling (") + context +
                                "): " + e.what());
      return run_probabilistic(opt.epsilon / 4, opt.epsilon_str + "/4");
    }
  }
  return run_probabilistic(opt.epsilon, opt.epsilon_str);
}

}  // namespace daeidx
