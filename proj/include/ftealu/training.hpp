#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftealu/scoring.hpp"

namespace ftealu {

enum class FaultClass : uint8_t { None, Single, Double, Transient };
const char* fault_class_name(FaultClass c);
FaultClass classify(const FaultSet& f);

struct TrainingConfig {
  int width = 4;
  int operand_samples = -1;  // -1 = exhaustive over all pairs
  uint64_t seed = 1;
  bool singles = true;
  bool doubles = false;
  bool vulnerable = false;  // bias dataset with vulnerable-bit singles
  std::vector<AluOp> ops{AluOp::And, AluOp::Or,  AluOp::Xor,
                         AluOp::Not, AluOp::Add, AluOp::Sub};
  std::vector<TransformKind> combo{TransformKind::Identity,
                                   TransformKind::Reso,
                                   TransformKind::EReswo};
  ScoringScheme scheme = ScoringScheme::RewardPunishment;
  NormalizationKind norm = NormalizationKind::Standard;
  int folds = 10;
  // Guard against accidental exhaustive 16-bit runs: scenarios * width *
  // versions must stay below this budget.
  uint64_t cap_judged_bits = 100'000'000ull;
  bool effective_only = false;

  void validate() const;
};

/// Cross product of operand pairs x fault sets x ops, deterministic under
/// the seed. Throws UsageError with a count estimate when the judged-bit
/// budget would be exceeded.
std::vector<Scenario> build_dataset(const TrainingConfig& cfg);

/// Cached per-scenario execution: golden word plus every version's decoded
/// result. Everything downstream (training, voting, coverage) reads these.
struct EvalRow {
  uint32_t golden = 0;
  std::array<uint32_t, 5> results{};
  uint8_t n_versions = 3;
  AluOp op = AluOp::Add;
  FaultClass fclass = FaultClass::None;
};

/// Runs every scenario through every version of the combo. Sharded across
/// FTEALU_THREADS workers in fixed index blocks, so results are identical
/// for any worker count.
std::vector<EvalRow> evaluate_dataset(std::span<const Scenario> scenarios,
                                      std::span<const Transform> combo);

/// judge -> score -> accumulate over the given rows (all rows when
/// `indices` is empty).
ScoreAccumulator accumulate_rows(std::span<const EvalRow> rows,
                                 std::span<const size_t> indices, int width,
                                 ScoringScheme scheme);

/// Single-pass training: judge, score, accumulate, normalize.
WeightTable train_weights(std::span<const EvalRow> rows,
                          const TrainingConfig& cfg);

struct CoverageReport {
  long total = 0;
  long corrected = 0;
  long effective_total = 0;      // rows where some version differs from golden
  long effective_corrected = 0;
  std::map<AluOp, std::pair<long, long>> per_op;          // total, corrected
  std::map<FaultClass, std::pair<long, long>> per_class;  // total, corrected

  double overall() const { return total ? double(corrected) / total : 1.0; }
  double effective() const {
    return effective_total ? double(effective_corrected) / effective_total
                           : 1.0;
  }
  double op_coverage(AluOp op) const;
  double class_coverage(FaultClass c) const;
};

/// Fraction of scenarios whose voted output equals golden. Null table =
/// majority voting. Empty `indices` means all rows.
CoverageReport coverage(std::span<const EvalRow> rows,
                        std::span<const size_t> indices, int width,
                        const WeightTable* table);

struct CvReport {
  std::vector<double> fold_train;  // in-sample coverage per fold
  std::vector<double> fold_test;   // held-out coverage per fold
  double mean_train = 0.0;
  double mean_test = 0.0;
  double gap = 0.0;  // |mean_train - mean_test|
};

/// Ten-fold (cfg.folds) cross-validation: seeded shuffle, contiguous fold
/// split, train on k-1 folds, evaluate held-out coverage.
CvReport cross_validate(std::span<const EvalRow> rows,
                        const TrainingConfig& cfg);

/// Fold id per row under the deterministic assignment used everywhere.
std::vector<int> fold_assignment(size_t n, int folds, uint64_t seed);

int worker_count();

}  // namespace ftealu
