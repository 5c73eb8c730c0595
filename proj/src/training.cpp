#include "ftealu/training.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "ftealu/rng.hpp"

namespace ftealu {

const char* fault_class_name(FaultClass c) {
  switch (c) {
    case FaultClass::None: return "none";
    case FaultClass::Single: return "single";
    case FaultClass::Double: return "double";
    case FaultClass::Transient: return "transient";
  }
  throw ConfigError("unknown fault class");
}

FaultClass classify(const FaultSet& f) {
  if (f.permanent.size() >= 2) return FaultClass::Double;
  if (f.permanent.size() == 1) return FaultClass::Single;
  if (f.transient) return FaultClass::Transient;
  return FaultClass::None;
}

void TrainingConfig::validate() const {
  if (folds < 2) throw UsageError("folds must be >= 2");
  if (operand_samples == 0 || operand_samples < -1)
    throw UsageError("operand sample count must be >= 1 (or -1 = exhaustive)");
  if (ops.empty()) throw UsageError("at least one ALU op required");
  if (combo.size() != 3 && combo.size() != 5)
    throw UsageError("combo must list 3 or 5 transforms");
  Word(width, 0);  // width check
}

int worker_count() {
  if (const char* env = std::getenv("FTEALU_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::vector<Scenario> build_dataset(const TrainingConfig& cfg) {
  cfg.validate();
  const auto pairs = cfg.operand_samples < 0
                         ? exhaustive_inputs(cfg.width)
                         : sample_inputs(cfg.width, cfg.operand_samples,
                                         cfg.seed);
  std::vector<FaultSet> faults;
  if (cfg.singles) {
    auto s = enumerate_single_faults(cfg.width);
    faults.insert(faults.end(), s.begin(), s.end());
  }
  if (cfg.doubles) {
    auto d = enumerate_double_faults(cfg.width);
    faults.insert(faults.end(), d.begin(), d.end());
  }
  if (cfg.vulnerable) {
    const auto combo = make_combo(cfg.combo, cfg.width);
    auto v = vulnerable_bit_faults(combo, cfg.width);
    faults.insert(faults.end(), v.begin(), v.end());
  }
  if (faults.empty()) throw UsageError("no fault class selected");

  const uint64_t count =
      static_cast<uint64_t>(pairs.size()) * faults.size() * cfg.ops.size();
  const uint64_t judged_bits =
      count * static_cast<uint64_t>(cfg.width) * cfg.combo.size();
  if (judged_bits > cfg.cap_judged_bits)
    throw UsageError("dataset of " + std::to_string(count) + " scenarios (" +
                     std::to_string(judged_bits) +
                     " judged bits) exceeds the cap of " +
                     std::to_string(cfg.cap_judged_bits) +
                     "; raise --cap to proceed");

  std::vector<Scenario> dataset;
  dataset.reserve(count);
  for (const auto& [a, b] : pairs)
    for (const FaultSet& f : faults)
      for (AluOp op : cfg.ops) dataset.push_back(Scenario{op, a, b, f});
  return dataset;
}

std::vector<EvalRow> evaluate_dataset(std::span<const Scenario> scenarios,
                                      std::span<const Transform> combo) {
  const size_t n = scenarios.size();
  std::vector<EvalRow> rows(n);
  const int nv = static_cast<int>(combo.size());

  auto eval_range = [&](size_t lo, size_t hi) {
    for (size_t k = lo; k < hi; ++k) {
      const Scenario& s = scenarios[k];
      EvalRow& row = rows[k];
      row.golden = static_cast<uint32_t>(golden(s.op, s.a, s.b).value);
      row.n_versions = static_cast<uint8_t>(nv);
      row.op = s.op;
      row.fclass = classify(s.faults);
      for (int j = 0; j < nv; ++j)
        row.results[static_cast<size_t>(j)] = static_cast<uint32_t>(
            execute_version(s.op, s.a, s.b, combo[static_cast<size_t>(j)],
                            s.faults, j)
                .decoded.value);
    }
  };

  const int workers = worker_count();
  constexpr size_t kBlock = 4096;
  if (workers <= 1 || n < 2 * kBlock) {
    eval_range(0, n);
    return rows;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const size_t lo = next.fetch_add(kBlock);
        if (lo >= n) return;
        eval_range(lo, std::min(lo + kBlock, n));
      }
    });
  for (auto& th : pool) th.join();
  return rows;
}

ScoreAccumulator accumulate_rows(std::span<const EvalRow> rows,
                                 std::span<const size_t> indices, int width,
                                 ScoringScheme scheme) {
  const int nv = rows.empty() ? 3 : static_cast<int>(rows[0].n_versions);
  ScoreAccumulator acc(nv, width);
  const uint64_t mask = Word(width, 0).mask();
  uint64_t masks[5];
  auto add_row = [&](const EvalRow& r) {
    for (int j = 0; j < nv; ++j)
      masks[j] = ~(static_cast<uint64_t>(r.results[static_cast<size_t>(j)]) ^
                   r.golden) &
                 mask;
    acc.accumulate_masks(std::span<const uint64_t>(masks, static_cast<size_t>(nv)),
                         scheme);
  };
  if (indices.empty())
    for (const EvalRow& r : rows) add_row(r);
  else
    for (size_t i : indices) add_row(rows[i]);
  return acc;
}

WeightTable train_weights(std::span<const EvalRow> rows,
                          const TrainingConfig& cfg) {
  if (rows.empty()) throw UsageError("train_weights: empty dataset");
  ScoreAccumulator acc = accumulate_rows(rows, {}, cfg.width, cfg.scheme);
  std::vector<std::string> names;
  names.reserve(cfg.combo.size());
  for (TransformKind k : cfg.combo) names.emplace_back(transform_name(k));
  return normalize(acc, cfg.norm, names);
}

double CoverageReport::op_coverage(AluOp op) const {
  auto it = per_op.find(op);
  return it == per_op.end() || it->second.first == 0
             ? 1.0
             : double(it->second.second) / it->second.first;
}

double CoverageReport::class_coverage(FaultClass c) const {
  auto it = per_class.find(c);
  return it == per_class.end() || it->second.first == 0
             ? 1.0
             : double(it->second.second) / it->second.first;
}

namespace {

uint32_t vote_row(const EvalRow& r, int width, const WeightTable* table) {
  const int nv = static_cast<int>(r.n_versions);
  uint32_t out = 0;
  for (int i = 0; i < width; ++i) {
    int bit;
    if (table) {
      double sum = 0.0, total = 0.0;
      int ones = 0;
      for (int j = 0; j < nv; ++j) {
        const double wj =
            table->weights[static_cast<size_t>(j)][static_cast<size_t>(i)];
        total += wj;
        if ((r.results[static_cast<size_t>(j)] >> i) & 1u) {
          sum += wj;
          ++ones;
        }
      }
      bit = total < kEpsTotalWeight ? (2 * ones > nv ? 1 : 0)
                                    : (sum / total >= 0.5 ? 1 : 0);
    } else {
      int ones = 0;
      for (int j = 0; j < nv; ++j)
        ones += static_cast<int>((r.results[static_cast<size_t>(j)] >> i) & 1u);
      bit = 2 * ones > nv ? 1 : 0;
    }
    out |= static_cast<uint32_t>(bit) << i;
  }
  return out;
}

}  // namespace

CoverageReport coverage(std::span<const EvalRow> rows,
                        std::span<const size_t> indices, int width,
                        const WeightTable* table) {
  if (table && table->width != width)
    throw ConfigError("coverage: table width mismatch");
  CoverageReport rep;
  auto add_row = [&](const EvalRow& r) {
    const bool corrected = vote_row(r, width, table) == r.golden;
    bool effective = false;
    for (int j = 0; j < static_cast<int>(r.n_versions); ++j)
      effective |= r.results[static_cast<size_t>(j)] != r.golden;
    ++rep.total;
    rep.corrected += corrected;
    if (effective) {
      ++rep.effective_total;
      rep.effective_corrected += corrected;
    }
    auto& op_counts = rep.per_op[r.op];
    ++op_counts.first;
    op_counts.second += corrected;
    auto& class_counts = rep.per_class[r.fclass];
    ++class_counts.first;
    class_counts.second += corrected;
  };
  if (indices.empty())
    for (const EvalRow& r : rows) add_row(r);
  else
    for (size_t i : indices) add_row(rows[i]);
  return rep;
}

std::vector<int> fold_assignment(size_t n, int folds, uint64_t seed) {
  // Seeded shuffle, then contiguous split of the shuffled order.
  const auto order = shuffled_indices(n, seed);
  std::vector<int> fold(n, 0);
  for (size_t pos = 0; pos < n; ++pos)
    fold[order[pos]] = static_cast<int>(pos * static_cast<size_t>(folds) / n);
  return fold;
}

CvReport cross_validate(std::span<const EvalRow> rows,
                        const TrainingConfig& cfg) {
  cfg.validate();
  const size_t n = rows.size();
  if (n < static_cast<size_t>(cfg.folds))
    throw UsageError("dataset smaller than fold count");
  const auto fold = fold_assignment(n, cfg.folds, cfg.seed);

  std::vector<std::string> names;
  for (TransformKind k : cfg.combo) names.emplace_back(transform_name(k));

  CvReport rep;
  for (int f = 0; f < cfg.folds; ++f) {
    std::vector<size_t> train_idx, test_idx;
    for (size_t i = 0; i < n; ++i)
      (fold[i] == f ? test_idx : train_idx).push_back(i);
    ScoreAccumulator acc =
        accumulate_rows(rows, train_idx, cfg.width, cfg.scheme);
    const WeightTable table = normalize(acc, cfg.norm, names);
    const CoverageReport train_cov = coverage(rows, train_idx, cfg.width, &table);
    const CoverageReport test_cov = coverage(rows, test_idx, cfg.width, &table);
    rep.fold_train.push_back(cfg.effective_only ? train_cov.effective()
                                                : train_cov.overall());
    rep.fold_test.push_back(cfg.effective_only ? test_cov.effective()
                                               : test_cov.overall());
  }
  for (double v : rep.fold_train) rep.mean_train += v;
  for (double v : rep.fold_test) rep.mean_test += v;
  rep.mean_train /= cfg.folds;
  rep.mean_test /= cfg.folds;
  rep.gap = std::abs(rep.mean_train - rep.mean_test);
  return rep;
}

}  // namespace ftealu
