#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ftealu/experiments.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ftealu: time-redundant ALU fault tolerance with a learned "
               "weighted voter"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand(
      "run", "Run a named experiment and write its CSV artifact");
  std::string experiment;
  run->add_option("experiment", experiment, "One of: exp-combos, exp-voters, "
                  "exp-learned, exp-convergence, exp-robustness, exp-5mr, "
                  "exp-add-compare")
      ->required();

  int width = 0;
  int samples = 0;
  uint64_t seed = 0;
  std::string ops_csv, combo_csv, scheme_s, norm_s, out_path;
  int folds = 0;
  uint64_t cap = 0;
  bool effective_only = false;

  run->add_option("--width", width, "Word width (even, 4..32)");
  run->add_option("--samples", samples,
                  "Random operand pairs; -1 = exhaustive (w <= 8)");
  run->add_option("--seed", seed, "Base seed of the deterministic RNG stream");
  run->add_option("--ops", ops_csv,
                  "Comma list of ALU ops (and,or,xor,not,add,sub)");
  run->add_option("--combo", combo_csv,
                  "Comma list of transforms, e.g. basic,RESO,E-RESWO");
  run->add_option("--scheme", scheme_s,
                  "Scoring scheme: punishment | reward-punishment");
  run->add_option("--norm", norm_s, "Normalization: minmax | absmin | standard");
  run->add_option("--folds", folds, "Cross-validation fold count");
  run->add_option("--out", out_path, "Output CSV path (default: stdout)");
  run->add_flag("--effective-only", effective_only,
                "Restrict coverage to scenarios where some version differs "
                "from golden");
  run->add_option("--cap", cap, "Judged-bit budget guard (scenarios x width x "
                  "versions); default 1e8");

  auto* list = app.add_subcommand("list", "List available experiments");

  CLI11_PARSE(app, argc, argv);

  if (*list) {
    for (const auto& name : ftealu::experiment_names())
      std::cout << name << '\n';
    return 0;
  }

  try {
    ftealu::ExperimentSpec spec;
    spec.name = experiment;
    spec.config = ftealu::experiment_default_config(experiment);
    if (run->count("--width")) spec.config.width = width;
    if (run->count("--samples")) spec.config.operand_samples = samples;
    if (run->count("--seed")) spec.config.seed = seed;
    if (run->count("--folds")) spec.config.folds = folds;
    if (run->count("--cap")) spec.config.cap_judged_bits = cap;
    spec.config.effective_only = effective_only;
    if (run->count("--ops")) {
      spec.config.ops.clear();
      for (const auto& name : split_csv(ops_csv))
        spec.config.ops.push_back(ftealu::op_from_name(name));
    }
    if (run->count("--combo")) {
      spec.config.combo.clear();
      for (const auto& name : split_csv(combo_csv))
        spec.config.combo.push_back(ftealu::transform_from_name(name));
    }
    if (run->count("--scheme"))
      spec.config.scheme = ftealu::scheme_from_name(scheme_s);
    if (run->count("--norm"))
      spec.config.norm = ftealu::normalization_from_name(norm_s);

    spec.out_path = out_path;
    if (spec.out_path.empty())
      ftealu::run_experiment(spec, std::cout);
    else
      ftealu::run_experiment(spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
