#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "daeidx/diffpoly.hpp"
#include "daeidx/sysmodel.hpp"

namespace daeidx {

using PolyMatrix = std::vector<std::vector<DiffPoly>>;
using RatMatrix = std::vector<std::vector<Rat>>;

// Derived Monte-Carlo parameters for one rank query. With T trials at
// integer points drawn from [-B, B]^N and per-entry degree bound D on a
// matrix of minimal dimension rho, a rank undershoot at one trial happens
// with probability at most rho*D/(2B+1) (Schwartz-Zippel on a nonzero
// rho-minor), so B is chosen as the least power of two >= 2^20 making
//   T * rho * D / (2B+1) <= epsilon / 2.
// The other half of the budget absorbs the modular-arithmetic shortcut: each
// trial reduces the evaluated matrix modulo two independent deterministic
// 62-bit primes (a nonzero minor mod p certifies the rational rank from
// below), and both primes would have to divide the same nonzero minor for
// the trial to undershoot, an event of probability well under 2^-60.
// A final confirmation trial is evaluated over the rationals at B = 2^20
// and its rank folded into the maximum.
struct RankBudget {
  int trials = 1;       // T (modular trials; one rational trial is added)
  Int B = 0;            // coordinate range [-B, B]
  int bbits = 20;       // B = 2^bbits
  long degree_bound = 1;
  long rho = 0;
  static RankBudget make(const Rat& epsilon, long rho, long degree_bound);
};

struct RankAuditEntry {
  std::string context;
  int rows = 0;
  int cols = 0;
  std::string mode;  // "probabilistic", "probabilistic+certified" or "exact"
  int rank = -1;
  int trials = 0;    // modular trials + 1 rational confirmation
  std::string range; // decimal B
  long degree_bound = 0;
  std::string epsilon;
  uint64_t seed = 0;
};

inline Rat epsilon_pow2(int k) {
  Rat r(Int(1), Int(1) << k);
  r.canonicalize();
  return r;
}

enum class RankMode { Probabilistic, Exact };

struct RankOptions {
  RankMode mode = RankMode::Probabilistic;
  Rat epsilon = epsilon_pow2(40);
  std::string epsilon_str = "2^-40";
  uint64_t seed = 0;
  std::vector<RankAuditEntry>* audit = nullptr;   // optional collection
  std::vector<std::string>* warnings = nullptr;   // optional collection
};

// desk-scale guard rails for symbolic elimination
inline constexpr int kExactRankMaxDim = 36;
inline constexpr int kExactRankMaxDegree = 4;
inline constexpr size_t kExactRankMaxTerms = 50000;

bool exact_rank_feasible(const PolyMatrix& m);

// Fraction-free (Bareiss) elimination directly on polynomial entries with
// full pivoting; the pivot is the surviving nonzero entry with the fewest
// terms (ties: lower total degree, then position). Throws ResourceError when
// intermediate results outgrow the guard rails.
int rank_exact(const PolyMatrix& m);

// T modular trials plus one rational confirmation, maximum of the observed
// ranks; one-sided within epsilon as documented on RankBudget.
int rank_probabilistic(const PolyMatrix& m, const Rat& epsilon, const std::string& epsilon_str,
                       long degree_bound, uint64_t seed, FieldTag field,
                       const std::string& context, RankAuditEntry* audit = nullptr);

// Policy front door. Probabilistic mode re-runs the exact route whenever the
// matrix fits its guard rails and keeps the certificate; exact mode falls
// back to sampling at a tightened epsilon when the guard rails trip.
int matrix_rank(const PolyMatrix& m, long degree_bound, FieldTag field, const RankOptions& opt,
                const std::string& context);

// exact rank of a rational matrix (integer Bareiss after clearing rows)
int rank_rational(const RatMatrix& m);

// basis of the right nullspace of a rational matrix, reduced row echelon
// form convention: one vector per free column, deterministic
std::vector<std::vector<Rat>> nullspace(const RatMatrix& m);

// deterministic 62-bit prime derived from a seed (Miller-Rabin with the
// exact witness set for 64-bit inputs)
uint64_t derive_prime(uint64_t seed);
bool is_prime_u64(uint64_t n);

}  // namespace daeidx
