#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ftealu/transform.hpp"
#include "ftealu/voting.hpp"

namespace ftealu {

enum class ScoringScheme { PunishmentOnly, RewardPunishment };
enum class NormalizationKind { MinMax, AbsMinShift, Standard };

const char* scheme_name(ScoringScheme s);
ScoringScheme scheme_from_name(const std::string& name);
const char* normalization_name(NormalizationKind k);
NormalizationKind normalization_from_name(const std::string& name);

/// Reward/punishment per-version scores for one (scenario, bit): the unit
/// reward +1 splits over the correct versions, the unit punishment -1 over
/// the faulty ones. For 3 versions this is exactly the case table
/// {+1/3 each | +0.5/+0.5/-1 | -0.5/-0.5/+1 | -1/3 each}.
std::vector<double> score_reward_punishment(const std::vector<bool>& correct);

/// Punitive-only variant: correct versions keep score 0, the faulty ones
/// split -1.
std::vector<double> score_punishment_only(const std::vector<bool>& correct);

/// Per-version bit-correctness of a scenario under a combo: bit i of
/// mask j is set when version j's decoded bit i matches the golden bit.
std::vector<uint64_t> judge_bits(const Scenario& s,
                                 std::span<const Transform> combo);

struct ScoreAccumulator {
  int width = 0;
  int versions = 0;
  std::vector<std::vector<double>> sums;  // [version][bit]
  long n_scenarios = 0;

  ScoreAccumulator() = default;
  ScoreAccumulator(int versions_, int width_);

  /// Elementwise add of one scenario's [version][bit] scores; bumps N.
  void accumulate(const std::vector<std::vector<double>>& scores);

  /// Fast path: score all bits of one scenario from correctness masks.
  void accumulate_masks(std::span<const uint64_t> correct_masks,
                        ScoringScheme scheme);

  /// Shard merge; associative and commutative.
  void merge(const ScoreAccumulator& other);
};

/// One scenario's full [version][bit] score matrix from correctness masks.
std::vector<std::vector<double>> score_scenario(
    std::span<const uint64_t> correct_masks, int width, ScoringScheme scheme);

/// Turn accumulated scores into a WeightTable. Statistics are pooled
/// globally over all (version, bit) means.
///   MinMax:      W = (M - min) / (max - min); all 0.5 when max == min
///   AbsMinShift: W = M + |min(M)|
///   Standard:    W = max(z, 0) + 0.01 with population-sigma z-scores;
///                all 0.5 when sigma == 0
WeightTable normalize(const ScoreAccumulator& acc, NormalizationKind kind,
                      const std::vector<std::string>& version_names);

inline constexpr double kStandardWeightFloor = 0.01;

}  // namespace ftealu
