#pragma once

#include <optional>
#include <string>

#include "daeidx/report.hpp"

namespace daeidx {

struct AnalyzeOptions {
  RankMode mode = RankMode::Probabilistic;
  std::string epsilon_str = "2^-40";
  int epsilon_k = 40;
  uint64_t seed = 0;
  bool audit = false;
  std::optional<long> kmax;
  bool want_index = true;
  bool want_bounds = true;
  bool want_basis = true;
};

AnalysisReport analyze(const DaeSystem& sys, const AnalyzeOptions& opt);

}  // namespace daeidx
