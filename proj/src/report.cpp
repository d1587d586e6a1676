#include "daeidx/report.hpp"

#include <iomanip>
#include <sstream>

namespace daeidx {

using nlohmann::ordered_json;

nlohmann::ordered_json AnalysisReport::to_json() const {
  ordered_json doc;
  doc["format_version"] = 1;
  doc["seed"] = seed;
  doc["epsilon"] = epsilon;
  doc["mode"] = mode;
  if (kmax_override) doc["kmax_override"] = *kmax_override;

  ordered_json sysj;
  sysj["field"] = field == FieldTag::Qt ? "Q(t)" : "Q";
  sysj["n"] = n;
  sysj["m"] = m;
  sysj["r"] = r;
  sysj["e"] = e;
  sysj["x"] = x_names;
  sysj["u"] = u_names;
  if (!param_names.empty()) sysj["parameters"] = param_names;
  sysj["f"] = f_strs;
  sysj["g"] = g_strs;
  sysj["equation_orders"] = ej;
  ordered_json epsj = ordered_json::array();
  for (const auto& ev : eps) {
    if (ev)
      epsj.push_back(*ev);
    else
      epsj.push_back(nullptr);
  }
  sysj["variable_orders"] = epsj;
  doc["system"] = sysj;

  if (has_index) {
    ordered_json murows = ordered_json::array();
    for (const auto& row : mu) {
      ordered_json rj;
      rj["k"] = row.k;
      rj["mu"] = row.mu;
      rj["lower"] = row.lower;
      rj["upper"] = row.upper;
      murows.push_back(rj);
    }
    doc["mu"] = murows;
    doc["sigma"] = sigma;
    doc["search_cap"] = search_cap;
    doc["sigma_within_cap"] = sigma_within_cap;
    if (sigma_tilde) {
      doc["sigma_tilde"] = *sigma_tilde;
      doc["mu_tilde"] = mu_tilde;
    } else {
      doc["sigma_tilde"] = nullptr;
      doc["sigma_tilde_note"] = sigma_tilde_note;
    }
    if (sigma_hat) {
      doc["sigma_hat"] = *sigma_hat;
      doc["mu_hat"] = mu_hat;
    } else {
      doc["sigma_hat"] = nullptr;
    }
  }

  if (has_order) {
    doc["order"] = order;
    ordered_json hkj;
    hkj["slope"] = hk.slope;
    hkj["constant"] = hk.constant;
    hkj["mu_sigma"] = hk.mu_sigma;
    hkj["regularity_bound"] = hk.regularity_bound;
    hkj["function_equals_polynomial"] = hk.function_equals_polynomial;
    doc["hilbert_kolchin"] = hkj;
    doc["mu_sigma_within_bounds"] = mu_sigma_within_bounds;
  }

  if (has_bounds) {
    ordered_json bj;
    bj["order"] = bounds.ord;
    bj["greenspan"] = bounds.greenspan;
    bj["ritt"] = bounds.ritt;
    if (bounds.jacobi)
      bj["jacobi"] = *bounds.jacobi;
    else
      bj["jacobi"] = nullptr;
    if (!bounds.jacobi_note.empty()) bj["jacobi_note"] = bounds.jacobi_note;
    bj["tight"] = bounds.tight;
    bj["order_within_bounds"] = bounds.ok;
    doc["bounds"] = bj;
  }

  if (has_basis) {
    ordered_json bj;
    bj["sigma"] = basis.sigma;
    bj["order"] = basis.ord;
    bj["b0"] = basis.b0;
    bj["w"] = basis.w;
    bj["xi"] = basis.xi;
    bj["eta"] = basis.eta;
    bj["reduced_system"] = basis.reduced_system;
    bj["order_preserved"] = basis.order_preserved;
    ordered_json dec = ordered_json::array();
    for (const auto& d : basis.decisions) {
      ordered_json dj;
      dj["var"] = d.var;
      dj["level"] = d.level;
      dj["rank_full"] = d.rank_full;
      dj["rank_without"] = d.rank_without;
      dj["accepted"] = d.accepted;
      dec.push_back(dj);
    }
    bj["decisions"] = dec;
    if (!basis_note.empty()) bj["note"] = basis_note;
    doc["basis"] = bj;
  }

  doc["warnings"] = warnings;

  if (has_audit) {
    ordered_json aj = ordered_json::array();
    for (const auto& a : audit) {
      ordered_json e1;
      e1["context"] = a.context;
      e1["rows"] = a.rows;
      e1["cols"] = a.cols;
      e1["mode"] = a.mode;
      e1["rank"] = a.rank;
      e1["trials"] = a.trials;
      e1["range"] = a.range;
      e1["degree_bound"] = a.degree_bound;
      e1["epsilon"] = a.epsilon;
      e1["seed"] = a.seed;
      aj.push_back(e1);
    }
    doc["rank_audit"] = aj;
  }
  return doc;
}

std::string AnalysisReport::to_text() const {
  std::ostringstream os;
  os << "system: field=" << (field == FieldTag::Qt ? "Q(t)" : "Q") << " n=" << n << " m=" << m
     << " r=" << r << " e=" << e << "\n";
  auto list = [&](const char* label, const std::vector<std::string>& v) {
    if (v.empty()) return;
    os << label << ":";
    for (const auto& s : v) os << " " << s;
    os << "\n";
  };
  list("x", x_names);
  list("u", u_names);
  list("parameters", param_names);
  os << "equation orders:";
  for (int o : ej) os << " " << o;
  os << "\nvariable orders:";
  for (size_t i = 0; i < eps.size(); ++i) {
    os << " " << u_names[i] << "=";
    if (eps[i])
      os << *eps[i];
    else
      os << "absent";
  }
  os << "\n";

  if (has_index) {
    os << "\nmu-sequence (window offset i = e-1 = " << (e - 1) << "):\n";
    os << std::setw(5) << "k" << std::setw(8) << "mu" << std::setw(8) << "lower" << std::setw(8)
       << "upper" << "\n";
    for (const auto& row : mu)
      os << std::setw(5) << row.k << std::setw(8) << row.mu << std::setw(8) << row.lower
         << std::setw(8) << row.upper << "\n";
    os << "sigma = " << sigma << "  (search cap " << search_cap << ")\n";
    if (sigma_tilde) {
      os << "sigma_tilde = " << *sigma_tilde << "  (mu:";
      for (long v : mu_tilde) os << " " << v;
      os << ")\n";
    } else {
      os << "sigma_tilde = n/a  (" << sigma_tilde_note << ")\n";
    }
    if (sigma_hat) {
      os << "sigma_hat = " << *sigma_hat << "  (mu:";
      for (long v : mu_hat) os << " " << v;
      os << ")\n";
    }
  }

  if (has_order) {
    os << "order = " << order << "\n";
    os << "Hilbert-Kolchin: H(T) = " << hk.slope << "*(T+1) + " << hk.constant
       << ", regularity bound " << hk.regularity_bound
       << (hk.function_equals_polynomial ? " (function equals polynomial)" : "") << "\n";
  }

  if (has_bounds) {
    os << "bounds: greenspan=" << bounds.greenspan << " ritt=" << bounds.ritt << " jacobi=";
    if (bounds.jacobi)
      os << *bounds.jacobi;
    else
      os << "n/a";
    if (!bounds.jacobi_note.empty()) os << " (" << bounds.jacobi_note << ")";
    if (!bounds.tight.empty()) {
      os << "; tight:";
      for (const auto& s : bounds.tight) os << " " << s;
    }
    os << "; order within bounds: " << (bounds.ok ? "yes" : "NO") << "\n";
  }

  if (has_basis) {
    auto set = [&](const char* label, const std::vector<std::string>& v) {
      os << label << " = {";
      for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
      os << "}";
    };
    os << "basis";
    if (basis.reduced_system) os << " (first-order reduction variables)";
    os << ": ";
    set("W", basis.w);
    os << ", ";
    set("xi", basis.xi);
    os << ", ";
    set("eta", basis.eta);
    os << "; order preserved: " << (basis.order_preserved ? "yes" : "NO") << "\n";
    if (!basis_note.empty()) os << "basis note: " << basis_note << "\n";
  }

  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace daeidx
