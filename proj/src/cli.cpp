#include "daeidx/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "daeidx/analyze.hpp"
#include "daeidx/errors.hpp"
#include "daeidx/indexcore.hpp"
#include "daeidx/relfind.hpp"
#include "daeidx/sysparse.hpp"

namespace daeidx {

namespace {

int parse_epsilon(const std::string& text) {
  const std::string prefix = "2^-";
  if (text.rfind(prefix, 0) != 0 || text.size() == prefix.size())
    throw InputError("epsilon must have the form 2^-k, got '" + text + "'");
  int k = 0;
  for (size_t i = prefix.size(); i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9')
      throw InputError("epsilon must have the form 2^-k, got '" + text + "'");
    k = k * 10 + (c - '0');
    if (k > 512) throw InputError("epsilon exponent too large (max 512)");
  }
  if (k < 1) throw InputError("epsilon exponent must be positive");
  return k;
}

struct CommonArgs {
  std::string file;
  uint64_t seed = 0;
  std::string epsilon = "2^-40";
  bool exact = false;
  bool audit = false;
  bool json = false;
  long kmax = 0;
  std::vector<std::string> localize;
};

void add_common(CLI::App* sub, CommonArgs& a) {
  sub->add_option("file", a.file, "system description (JSON)")->required();
  sub->add_option("--seed", a.seed, "sampling seed (default 0)");
  sub->add_option("--epsilon", a.epsilon, "rank failure budget, 2^-k form (default 2^-40)");
  sub->add_flag("--exact", a.exact, "force exact symbolic ranks");
  sub->add_flag("--audit", a.audit, "record every rank query in the report");
  sub->add_flag("--json", a.json, "machine-readable output");
  sub->add_option("--kmax", a.kmax, "override the stabilization search cap (experiments only)");
  sub->add_option("--localize", a.localize,
                  "treat these unknowns as known coefficient functions")
      ->delimiter(',');
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"differentiation index and order invariants of polynomial DAE systems"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string rel_target;
  std::vector<std::string> rel_basis;
  int rel_max_degree = 2;
  long rel_y_level = 0;

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "full report: index, order, bounds, basis");
  CLI::App* cmd_index = app.add_subcommand("index", "mu-sequence and differentiation index");
  CLI::App* cmd_bounds = app.add_subcommand("bounds", "ideal order against the classical bounds");
  CLI::App* cmd_basis = app.add_subcommand("basis", "order-preserving differential transcendence basis");
  CLI::App* cmd_relation = app.add_subcommand("relation", "desk-scale implicit relation search");
  for (CLI::App* sub : {cmd_analyze, cmd_index, cmd_bounds, cmd_basis, cmd_relation})
    add_common(sub, args);
  cmd_relation->add_option("--target", rel_target, "jet variable the relation must involve")
      ->required();
  cmd_relation->add_option("--basis", rel_basis, "jet variables admitted next to the target")
      ->delimiter(',');
  cmd_relation->add_option("--max-degree", rel_max_degree, "total degree cap (default 2)");
  CLI::Option* y_level_opt =
      cmd_relation->add_option("--y-level", rel_y_level,
                               "include right-hand-side jets up to this order (default: sigma)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    AnalyzeOptions opt;
    opt.mode = args.exact ? RankMode::Exact : RankMode::Probabilistic;
    opt.epsilon_str = args.epsilon;
    opt.epsilon_k = parse_epsilon(args.epsilon);
    opt.seed = args.seed;
    opt.audit = args.audit;
    if (sub->count("--kmax")) {
      if (args.kmax < 0) throw InputError("--kmax must be non-negative");
      opt.kmax = args.kmax;
    }

    DaeSystem sys = load_system_file(args.file);
    if (!args.localize.empty()) sys = localize(sys, args.localize);

    if (sub == cmd_relation) {
      SystemContext ctx(sys);
      RankOptions ropt;
      ropt.mode = opt.mode;
      ropt.epsilon = epsilon_pow2(opt.epsilon_k);
      ropt.epsilon_str = opt.epsilon_str;
      ropt.seed = opt.seed;
      int sigma = differentiation_index(ctx, ropt, opt.kmax);

      RelationQuery query;
      query.target = parse_jetvar(rel_target, sys, false);
      for (const auto& b : rel_basis) query.basis.push_back(parse_jetvar(b, sys, false));
      long y_level = y_level_opt->count() ? rel_y_level : sigma;
      for (long l = 0; l <= y_level; ++l)
        for (int j = 0; j < sys.r; ++j) query.y_jets.push_back(JetVar{sys.y_id(j), static_cast<int>(l)});
      query.max_degree = rel_max_degree;

      RelationResult res = implicit_relation(ctx, query, opt.seed);
      auto namer = sys.namer();
      if (args.json) {
        nlohmann::ordered_json doc;
        doc["format_version"] = 1;
        doc["seed"] = opt.seed;
        doc["target"] = rel_target;
        doc["found"] = res.found;
        if (res.found) {
          doc["relation"] = res.relation.to_string(namer);
          doc["degree"] = res.degree;
          doc["separable"] = res.separable;
          doc["points_used"] = res.points_used;
        } else {
          doc["relation"] = nullptr;
          doc["note"] = res.note;
        }
        std::cout << doc.dump(2) << "\n";
      } else {
        if (res.found)
          std::cout << "relation: " << res.relation.to_string(namer) << "\n"
                    << "degree " << res.degree << ", "
                    << (res.separable ? "separable" : "not separable") << " in " << rel_target
                    << ", " << res.points_used << " sample points\n";
        else
          std::cout << "no relation found (" << res.note << ")\n";
      }
      return 0;
    }

    opt.want_index = sub == cmd_analyze || sub == cmd_index;
    opt.want_bounds = sub == cmd_analyze || sub == cmd_bounds;
    opt.want_basis = sub == cmd_analyze || sub == cmd_basis;

    AnalysisReport rep = analyze(sys, opt);
    if (args.json)
      std::cout << rep.to_json().dump(2) << "\n";
    else
      std::cout << rep.to_text();
    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StabilizationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace daeidx
