#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ftealu/training.hpp"

namespace ftealu {

inline constexpr const char* kToolVersion = "ftealu 0.1.0";

struct ExperimentSpec {
  std::string name;  // exp-combos, exp-voters, exp-learned, exp-convergence,
                     // exp-robustness, exp-5mr, exp-add-compare
  TrainingConfig config;
  std::string out_path;  // empty = stdout
};

const std::vector<std::string>& experiment_names();

/// Baseline configuration each experiment runs with when no flags are
/// given (exp-learned, exp-convergence and exp-5mr default to the 16-bit
/// sampled setup, everything else to the 4-bit exhaustive benchmark).
TrainingConfig experiment_default_config(const std::string& name);

/// Runs one named experiment and writes its CSV artifact. Every experiment
/// is a pure function of (spec, seed): identical invocations produce
/// byte-identical files.
void run_experiment(const ExperimentSpec& spec);
void run_experiment(const ExperimentSpec& spec, std::ostream& os);

/// The six replica combinations studied under majority voting; index 5
/// (basic|RESO|E-RESWO) is the scheme's default.
const std::vector<std::vector<TransformKind>>& standard_combos();

/// Default five-version composition for the 5MR extension.
const std::vector<TransformKind>& default_5mr_combo();

std::string combo_label(std::span<const TransformKind> kinds);

}  // namespace ftealu
