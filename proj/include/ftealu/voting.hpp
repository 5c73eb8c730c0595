#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ftealu/transform.hpp"
#include "ftealu/word.hpp"

namespace ftealu {

/// Per-(version, bit) trust factors, learned at design time and immutable
/// at voting time.
struct WeightTable {
  int width = 4;
  std::vector<std::string> versions;           // 3 or 5 names
  std::vector<std::vector<double>> weights;    // [version][bit], all >= 0

  void validate() const;
};

// Text format: header `width=<w> versions=<name,...>` then one
// `bit,version,weight` row per cell, weights printed to 9 decimal places.
// Tables round-trip byte-identically.
void save_weight_table(std::ostream& os, const WeightTable& t);
WeightTable load_weight_table(std::istream& is);

/// Bitwise majority over an odd number of equal-width words.
Word majority_vote(std::span<const Word> results);

struct VoteTrace {
  std::vector<double> weighted_sums;  // per bit, numerator
  std::vector<double> total_weights;  // per bit, denominator
  std::vector<int> chosen;            // per bit, 0 or 1
};

/// Per bit i: s = sum_j W[j][i]*bit_j(i) / sum_j W[j][i]; output 1 iff
/// s >= 0.5. A degenerate total weight below 1e-9 falls back to bitwise
/// majority at that bit.
inline constexpr double kEpsTotalWeight = 1e-9;
Word weighted_vote(std::span<const Word> results, const WeightTable& table,
                   VoteTrace* trace = nullptr);

/// The full scheme: run every version serially on the one ALU, then vote.
/// A null table selects plain majority voting.
Word ft_ealu(AluOp op, const Word& a, const Word& b, const FaultSet& faults,
             std::span<const Transform> combo,
             const WeightTable* table = nullptr);

}  // namespace ftealu
