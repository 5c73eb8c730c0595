#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ftealu/scoring.hpp"

using namespace ftealu;

TEST_CASE("reward/punishment case table, all 8 patterns") {
  auto approx_eq = [](const std::vector<double>& got,
                      const std::vector<double>& want) {
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]));
  };
  const double third = 1.0 / 3.0;
  approx_eq(score_reward_punishment({true, true, true}), {third, third, third});
  approx_eq(score_reward_punishment({true, true, false}), {0.5, 0.5, -1.0});
  approx_eq(score_reward_punishment({true, false, true}), {0.5, -1.0, 0.5});
  approx_eq(score_reward_punishment({false, true, true}), {-1.0, 0.5, 0.5});
  approx_eq(score_reward_punishment({true, false, false}), {1.0, -0.5, -0.5});
  approx_eq(score_reward_punishment({false, true, false}), {-0.5, 1.0, -0.5});
  approx_eq(score_reward_punishment({false, false, true}), {-0.5, -0.5, 1.0});
  approx_eq(score_reward_punishment({false, false, false}),
            {-third, -third, -third});
}

TEST_CASE("punishment-only case table, all 8 patterns") {
  auto approx_eq = [](const std::vector<double>& got,
                      const std::vector<double>& want) {
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]));
  };
  const double third = 1.0 / 3.0;
  approx_eq(score_punishment_only({true, true, true}), {0.0, 0.0, 0.0});
  approx_eq(score_punishment_only({true, true, false}), {0.0, 0.0, -1.0});
  approx_eq(score_punishment_only({true, false, true}), {0.0, -1.0, 0.0});
  approx_eq(score_punishment_only({false, true, true}), {-1.0, 0.0, 0.0});
  approx_eq(score_punishment_only({true, false, false}), {0.0, -0.5, -0.5});
  approx_eq(score_punishment_only({false, true, false}), {-0.5, 0.0, -0.5});
  approx_eq(score_punishment_only({false, false, true}), {-0.5, -0.5, 0.0});
  approx_eq(score_punishment_only({false, false, false}),
            {-third, -third, -third});
}

TEST_CASE("per-bit scenario score totals are +1, 0 or -1 for 3 versions") {
  for (int pattern = 0; pattern < 8; ++pattern) {
    std::vector<bool> flags{(pattern & 1) != 0, (pattern & 2) != 0,
                            (pattern & 4) != 0};
    double total = 0.0;
    for (double s : score_reward_punishment(flags)) {
      total += s;
      CHECK(s >= -1.0);
      CHECK(s <= 1.0);
    }
    const int c = static_cast<int>(std::count(flags.begin(), flags.end(), true));
    const double want = c == 3 ? 1.0 : (c == 0 ? -1.0 : 0.0);
    CHECK(total == doctest::Approx(want));
    for (double s : score_punishment_only(flags)) CHECK(s <= 0.0);
  }
}

TEST_CASE("5-version generalization splits rewards and punishments") {
  const auto all = score_reward_punishment({true, true, true, true, true});
  for (double s : all) CHECK(s == doctest::Approx(0.2));
  const auto mixed =
      score_reward_punishment({true, false, true, false, false});
  CHECK(mixed[0] == doctest::Approx(0.5));
  CHECK(mixed[2] == doctest::Approx(0.5));
  CHECK(mixed[1] == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("judge_bits on fault-free and constructed scenarios") {
  const std::vector<TransformKind> kinds{TransformKind::Identity,
                                         TransformKind::Reso,
                                         TransformKind::EReswo};
  const auto combo = make_combo(kinds, 4);

  Scenario clean{AluOp::Add, Word(4, 0b0110), Word(4, 0b0011), FaultSet{}};
  for (uint64_t mask : judge_bits(clean, combo)) CHECK(mask == 0xf);

  // A transient flip in version 0 only: versions 1 and 2 stay all-correct.
  Scenario t{AluOp::Xor, Word(4, 0b0110), Word(4, 0b0011),
             FaultSet{{}, TransientFlip{0, Operand::A, 2}}};
  const auto flags = judge_bits(t, combo);
  CHECK(flags[0] == (0xfull & ~(1ull << 2)));  // bit 2 corrupted in V1
  CHECK(flags[1] == 0xf);
  CHECK(flags[2] == 0xf);
}

TEST_CASE("accumulator is linear and order independent") {
  ScoreAccumulator a(3, 4), b(3, 4);
  const std::vector<uint64_t> m1{0xf, 0x3, 0x9};
  const std::vector<uint64_t> m2{0x0, 0xf, 0x5};
  a.accumulate_masks(m1, ScoringScheme::RewardPunishment);
  a.accumulate_masks(m2, ScoringScheme::RewardPunishment);
  b.accumulate_masks(m2, ScoringScheme::RewardPunishment);
  b.accumulate_masks(m1, ScoringScheme::RewardPunishment);
  CHECK(a.n_scenarios == 2);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i)
      CHECK(a.sums[j][i] == doctest::Approx(b.sums[j][i]));

  // k identical scenarios scale linearly.
  ScoreAccumulator c(3, 4);
  for (int k = 0; k < 5; ++k)
    c.accumulate_masks(m1, ScoringScheme::RewardPunishment);
  ScoreAccumulator once(3, 4);
  once.accumulate_masks(m1, ScoringScheme::RewardPunishment);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i)
      CHECK(c.sums[j][i] == doctest::Approx(5.0 * once.sums[j][i]));

  // accumulate() on explicit matrices agrees with the mask fast path.
  ScoreAccumulator d(3, 4);
  d.accumulate(score_scenario(m1, 4, ScoringScheme::RewardPunishment));
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i)
      CHECK(d.sums[j][i] == doctest::Approx(once.sums[j][i]));
}

namespace {

ScoreAccumulator acc_with_means(const std::vector<double>& means) {
  // One version per mean, one bit, N=1.
  ScoreAccumulator acc(static_cast<int>(means.size()), 1);
  acc.versions = static_cast<int>(means.size());
  for (size_t j = 0; j < means.size(); ++j) acc.sums[j][0] = means[j];
  acc.n_scenarios = 1;
  return acc;
}

}  // namespace

TEST_CASE("normalization examples") {
  const std::vector<std::string> names{"a", "b", "c"};

  const auto minmax =
      normalize(acc_with_means({-1.0, 0.0, 1.0}), NormalizationKind::MinMax,
                names);
  CHECK(minmax.weights[0][0] == doctest::Approx(0.0));
  CHECK(minmax.weights[1][0] == doctest::Approx(0.5));
  CHECK(minmax.weights[2][0] == doctest::Approx(1.0));

  const auto shift = normalize(acc_with_means({-0.4, 0.1, 0.3}),
                               NormalizationKind::AbsMinShift, names);
  CHECK(shift.weights[0][0] == doctest::Approx(0.0));
  CHECK(shift.weights[1][0] == doctest::Approx(0.5));
  CHECK(shift.weights[2][0] == doctest::Approx(0.7));

  // Independent recomputation: population sigma of (-1,0,1) is sqrt(2/3);
  // z = (-1.224745, 0, 1.224745); rectified plus the 0.01 floor.
  const double sigma = std::sqrt(2.0 / 3.0);
  const auto standard = normalize(acc_with_means({-1.0, 0.0, 1.0}),
                                  NormalizationKind::Standard, names);
  CHECK(standard.weights[0][0] == doctest::Approx(0.01));
  CHECK(standard.weights[1][0] == doctest::Approx(0.01));
  CHECK(standard.weights[2][0] == doctest::Approx(1.0 / sigma + 0.01));
  CHECK(standard.weights[2][0] == doctest::Approx(1.2347).epsilon(1e-3));
}

TEST_CASE("normalization degenerate and error cases") {
  const std::vector<std::string> names{"a", "b", "c"};
  const auto flat = normalize(acc_with_means({0.25, 0.25, 0.25}),
                              NormalizationKind::MinMax, names);
  for (int j = 0; j < 3; ++j) CHECK(flat.weights[j][0] == doctest::Approx(0.5));
  const auto flat_std = normalize(acc_with_means({0.25, 0.25, 0.25}),
                                  NormalizationKind::Standard, names);
  for (int j = 0; j < 3; ++j)
    CHECK(flat_std.weights[j][0] == doctest::Approx(0.5));

  ScoreAccumulator empty(3, 4);
  CHECK_THROWS_AS(normalize(empty, NormalizationKind::MinMax,
                            std::vector<std::string>{"a", "b", "c"}),
                  UsageError);
}

TEST_CASE("normalization commutes with version permutation") {
  const std::vector<std::string> names{"a", "b", "c"};
  const std::vector<double> means{-0.7, 0.2, 0.4};
  for (NormalizationKind kind :
       {NormalizationKind::MinMax, NormalizationKind::AbsMinShift,
        NormalizationKind::Standard}) {
    const auto fwd = normalize(acc_with_means(means), kind, names);
    const auto rev = normalize(acc_with_means({0.4, 0.2, -0.7}), kind, names);
    CHECK(fwd.weights[0][0] == doctest::Approx(rev.weights[2][0]));
    CHECK(fwd.weights[1][0] == doctest::Approx(rev.weights[1][0]));
    CHECK(fwd.weights[2][0] == doctest::Approx(rev.weights[0][0]));
  }
}

TEST_CASE("all normalizations emit non-negative weights") {
  for (NormalizationKind kind :
       {NormalizationKind::MinMax, NormalizationKind::AbsMinShift,
        NormalizationKind::Standard}) {
    const auto t = normalize(acc_with_means({-0.9, -0.1, 0.8}), kind,
                             {"a", "b", "c"});
    for (const auto& row : t.weights)
      for (double w : row) {
        CHECK(w >= 0.0);
        if (kind == NormalizationKind::MinMax) CHECK(w <= 1.0);
      }
  }
}
