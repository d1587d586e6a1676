#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "daeidx/invariants.hpp"
#include "daeidx/ranklab.hpp"
#include "daeidx/sysmodel.hpp"
#include "daeidx/transbasis.hpp"

namespace daeidx {

struct MuRow {
  long k = 0;
  long mu = 0;
  long lower = 0;  // certified envelope for this k
  long upper = 0;
};

struct AnalysisReport {
  uint64_t seed = 0;
  std::string epsilon;
  std::string mode;  // "probabilistic" or "exact"
  std::optional<long> kmax_override;

  // system echo
  FieldTag field = FieldTag::Q;
  int n = 0, m = 0, r = 0, e = 1;
  std::vector<std::string> x_names, u_names, param_names;
  std::vector<std::string> f_strs, g_strs;
  std::vector<int> ej;
  std::vector<std::optional<int>> eps;

  bool has_index = false;
  std::vector<MuRow> mu;
  int sigma = -1;
  long search_cap = 0;
  bool sigma_within_cap = true;
  std::optional<int> sigma_tilde;
  std::string sigma_tilde_note;
  std::vector<long> mu_tilde;
  std::optional<int> sigma_hat;
  std::vector<long> mu_hat;

  bool has_order = false;
  long order = 0;
  HilbertKolchinRecord hk;
  bool mu_sigma_within_bounds = true;

  bool has_bounds = false;
  OrderBoundsReport bounds;

  bool has_basis = false;
  BasisReport basis;
  std::string basis_note;

  std::vector<std::string> warnings;
  bool has_audit = false;
  std::vector<RankAuditEntry> audit;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

}  // namespace daeidx
