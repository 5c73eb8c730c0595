#include "ftealu/scoring.hpp"

#include <bit>
#include <cmath>

namespace ftealu {

const char* scheme_name(ScoringScheme s) {
  switch (s) {
    case ScoringScheme::PunishmentOnly: return "punishment";
    case ScoringScheme::RewardPunishment: return "reward-punishment";
  }
  throw ConfigError("unknown scoring scheme");
}

ScoringScheme scheme_from_name(const std::string& name) {
  if (name == "punishment" || name == "1") return ScoringScheme::PunishmentOnly;
  if (name == "reward-punishment" || name == "2")
    return ScoringScheme::RewardPunishment;
  throw UsageError("unknown scoring scheme: " + name);
}

const char* normalization_name(NormalizationKind k) {
  switch (k) {
    case NormalizationKind::MinMax: return "minmax";
    case NormalizationKind::AbsMinShift: return "absmin";
    case NormalizationKind::Standard: return "standard";
  }
  throw ConfigError("unknown normalization");
}

NormalizationKind normalization_from_name(const std::string& name) {
  if (name == "minmax" || name == "1") return NormalizationKind::MinMax;
  if (name == "absmin" || name == "2") return NormalizationKind::AbsMinShift;
  if (name == "standard" || name == "3") return NormalizationKind::Standard;
  throw UsageError("unknown normalization: " + name);
}

namespace {

double pattern_score(bool correct, int n_correct, int n_faulty,
                     ScoringScheme scheme) {
  if (scheme == ScoringScheme::PunishmentOnly)
    return correct ? 0.0 : -1.0 / n_faulty;
  return correct ? 1.0 / n_correct : -1.0 / n_faulty;
}

// table[pattern][version]; pattern bit j set = version j correct.
std::vector<std::vector<double>> build_pattern_table(int versions,
                                                     ScoringScheme scheme) {
  const int patterns = 1 << versions;
  std::vector<std::vector<double>> table(
      static_cast<size_t>(patterns),
      std::vector<double>(static_cast<size_t>(versions), 0.0));
  for (int p = 0; p < patterns; ++p) {
    const int c = std::popcount(static_cast<unsigned>(p));
    const int f = versions - c;
    for (int j = 0; j < versions; ++j)
      table[static_cast<size_t>(p)][static_cast<size_t>(j)] =
          pattern_score((p >> j) & 1, c, f, scheme);
  }
  return table;
}

const std::vector<std::vector<double>>& pattern_table(int versions,
                                                      ScoringScheme scheme) {
  static const std::vector<std::vector<double>> tables[2][2] = {
      {build_pattern_table(3, ScoringScheme::PunishmentOnly),
       build_pattern_table(3, ScoringScheme::RewardPunishment)},
      {build_pattern_table(5, ScoringScheme::PunishmentOnly),
       build_pattern_table(5, ScoringScheme::RewardPunishment)}};
  if (versions != 3 && versions != 5)
    throw ConfigError("scoring supports 3 or 5 versions");
  return tables[versions == 5 ? 1 : 0]
               [scheme == ScoringScheme::RewardPunishment ? 1 : 0];
}

std::vector<double> score_flags(const std::vector<bool>& correct,
                                ScoringScheme scheme) {
  const int n = static_cast<int>(correct.size());
  int pattern = 0;
  for (int j = 0; j < n; ++j)
    if (correct[static_cast<size_t>(j)]) pattern |= 1 << j;
  return pattern_table(n, scheme)[static_cast<size_t>(pattern)];
}

}  // namespace

std::vector<double> score_reward_punishment(const std::vector<bool>& correct) {
  return score_flags(correct, ScoringScheme::RewardPunishment);
}

std::vector<double> score_punishment_only(const std::vector<bool>& correct) {
  return score_flags(correct, ScoringScheme::PunishmentOnly);
}

std::vector<uint64_t> judge_bits(const Scenario& s,
                                 std::span<const Transform> combo) {
  const Word gold = golden(s.op, s.a, s.b);
  const uint64_t mask = gold.mask();
  std::vector<uint64_t> flags;
  flags.reserve(combo.size());
  for (size_t j = 0; j < combo.size(); ++j) {
    const Word r = execute_version(s.op, s.a, s.b, combo[j], s.faults,
                                   static_cast<int>(j))
                       .decoded;
    flags.push_back(~(r.value ^ gold.value) & mask);
  }
  return flags;
}

ScoreAccumulator::ScoreAccumulator(int versions_, int width_)
    : width(width_),
      versions(versions_),
      sums(static_cast<size_t>(versions_),
           std::vector<double>(static_cast<size_t>(width_), 0.0)) {}

void ScoreAccumulator::accumulate(
    const std::vector<std::vector<double>>& scores) {
  if (static_cast<int>(scores.size()) != versions)
    throw ConfigError("accumulate: version count mismatch");
  for (int j = 0; j < versions; ++j) {
    if (static_cast<int>(scores[static_cast<size_t>(j)].size()) != width)
      throw ConfigError("accumulate: width mismatch");
    for (int i = 0; i < width; ++i)
      sums[static_cast<size_t>(j)][static_cast<size_t>(i)] +=
          scores[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }
  ++n_scenarios;
}

void ScoreAccumulator::accumulate_masks(std::span<const uint64_t> correct_masks,
                                        ScoringScheme scheme) {
  if (static_cast<int>(correct_masks.size()) != versions)
    throw ConfigError("accumulate_masks: version count mismatch");
  const auto& table = pattern_table(versions, scheme);
  for (int i = 0; i < width; ++i) {
    int pattern = 0;
    for (int j = 0; j < versions; ++j)
      pattern |= static_cast<int>((correct_masks[static_cast<size_t>(j)] >> i) & 1u)
                 << j;
    const auto& row = table[static_cast<size_t>(pattern)];
    for (int j = 0; j < versions; ++j)
      sums[static_cast<size_t>(j)][static_cast<size_t>(i)] +=
          row[static_cast<size_t>(j)];
  }
  ++n_scenarios;
}

void ScoreAccumulator::merge(const ScoreAccumulator& other) {
  if (other.width != width || other.versions != versions)
    throw ConfigError("merge: accumulator shape mismatch");
  for (int j = 0; j < versions; ++j)
    for (int i = 0; i < width; ++i)
      sums[static_cast<size_t>(j)][static_cast<size_t>(i)] +=
          other.sums[static_cast<size_t>(j)][static_cast<size_t>(i)];
  n_scenarios += other.n_scenarios;
}

std::vector<std::vector<double>> score_scenario(
    std::span<const uint64_t> correct_masks, int width, ScoringScheme scheme) {
  const int versions = static_cast<int>(correct_masks.size());
  const auto& table = pattern_table(versions, scheme);
  std::vector<std::vector<double>> scores(
      static_cast<size_t>(versions),
      std::vector<double>(static_cast<size_t>(width), 0.0));
  for (int i = 0; i < width; ++i) {
    int pattern = 0;
    for (int j = 0; j < versions; ++j)
      pattern |= static_cast<int>((correct_masks[static_cast<size_t>(j)] >> i) & 1u)
                 << j;
    for (int j = 0; j < versions; ++j)
      scores[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          table[static_cast<size_t>(pattern)][static_cast<size_t>(j)];
  }
  return scores;
}

WeightTable normalize(const ScoreAccumulator& acc, NormalizationKind kind,
                      const std::vector<std::string>& version_names) {
  if (acc.n_scenarios <= 0) throw UsageError("normalize: no scored scenarios");
  if (static_cast<int>(version_names.size()) != acc.versions)
    throw ConfigError("normalize: version name count mismatch");

  // Means pooled globally over every (version, bit) cell.
  std::vector<std::vector<double>> means(
      static_cast<size_t>(acc.versions),
      std::vector<double>(static_cast<size_t>(acc.width), 0.0));
  double lo = 0.0, hi = 0.0, mean = 0.0;
  bool first = true;
  const double n = static_cast<double>(acc.n_scenarios);
  for (int j = 0; j < acc.versions; ++j)
    for (int i = 0; i < acc.width; ++i) {
      const double m =
          acc.sums[static_cast<size_t>(j)][static_cast<size_t>(i)] / n;
      means[static_cast<size_t>(j)][static_cast<size_t>(i)] = m;
      lo = first ? m : std::min(lo, m);
      hi = first ? m : std::max(hi, m);
      mean += m;
      first = false;
    }
  const double cells = static_cast<double>(acc.versions * acc.width);
  mean /= cells;
  double var = 0.0;
  for (int j = 0; j < acc.versions; ++j)
    for (int i = 0; i < acc.width; ++i) {
      const double d =
          means[static_cast<size_t>(j)][static_cast<size_t>(i)] - mean;
      var += d * d;
    }
  double sigma = std::sqrt(var / cells);  // population sigma
  // Collapse float noise so all-equal means degenerate cleanly.
  const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
  if (sigma <= 1e-12 * scale) sigma = 0.0;
  if (hi - lo <= 1e-12 * scale) hi = lo;

  WeightTable t;
  t.width = acc.width;
  t.versions = version_names;
  t.weights = means;
  for (int j = 0; j < acc.versions; ++j)
    for (int i = 0; i < acc.width; ++i) {
      double& w = t.weights[static_cast<size_t>(j)][static_cast<size_t>(i)];
      switch (kind) {
        case NormalizationKind::MinMax:
          w = (hi == lo) ? 0.5 : (w - lo) / (hi - lo);
          break;
        case NormalizationKind::AbsMinShift:
          w = w + std::fabs(lo);
          break;
        case NormalizationKind::Standard:
          w = (sigma == 0.0) ? 0.5
                             : std::max((w - mean) / sigma, 0.0) +
                                   kStandardWeightFloor;
          break;
      }
    }
  t.validate();
  return t;
}

}  // namespace ftealu
