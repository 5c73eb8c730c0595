#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftealu/word.hpp"

namespace ftealu {

struct Transform;  // diversify layer; needed only by vulnerable_bit_faults

enum class Operand { A, B };

/// Permanent stuck-at on a physical operand lane. Lanes >= width (the
/// carry/headroom extension lanes) are never faulted.
struct StuckAt {
  Operand operand = Operand::A;
  int lane = 0;
  int value = 0;  // stuck bit value, 0 or 1

  bool operator==(const StuckAt&) const = default;
};

/// Single-execution bit flip: applies in exactly one version's encoded
/// operand image, then vanishes.
struct TransientFlip {
  int version = 0;
  Operand operand = Operand::A;
  int lane = 0;

  bool operator==(const TransientFlip&) const = default;
};

struct FaultSet {
  std::vector<StuckAt> permanent;  // size 0, 1 or 2
  std::optional<TransientFlip> transient;

  bool empty() const { return permanent.empty() && !transient; }
  bool operator==(const FaultSet&) const = default;
};

struct Scenario {
  AluOp op = AluOp::Add;
  Word a;
  Word b;
  FaultSet faults;
};

/// All single stuck-at hypotheses: 2 operands x width lanes x 2 values.
std::vector<FaultSet> enumerate_single_faults(int width);

/// All unordered pairs of distinct (operand, lane) positions x 4 value
/// combinations: C(2w, 2) * 4 sets. Pairs may straddle operands.
std::vector<FaultSet> enumerate_double_faults(int width);

/// All single transient flips for a given replica count.
std::vector<FaultSet> enumerate_transient_faults(int width, int versions);

/// Deterministic operand pairs from the seeded splitmix64 stream:
/// a_k = draw(seed, 2k), b_k = draw(seed, 2k+1), masked to width.
std::vector<std::pair<Word, Word>> sample_inputs(int width, int count,
                                                 uint64_t seed);

/// Every (a, b) pair at the given width; meant for w = 4 (256 pairs).
std::vector<std::pair<Word, Word>> exhaustive_inputs(int width);

/// Single faults biased toward the lanes the diversification operators
/// stress: each transform's fill lanes, the half-boundary lanes of the
/// swap-based kinds, plus lane 0 and lane w-1. Both polarities, both
/// operands; always a subset of enumerate_single_faults(width).
std::vector<FaultSet> vulnerable_bit_faults(std::span<const Transform> combo,
                                            int width);

// Line format (documented in the README): `op,a_hex,b_hex,fault_spec` with
// fault_spec entries joined by `|`, e.g. `A3@1|B0@0` = A lane 3 stuck at 1
// plus B lane 0 stuck at 0. A transient flip is `T<version><operand><lane>`.
std::string format_fault_set(const FaultSet& f);
FaultSet parse_fault_set(const std::string& spec);
std::string format_scenario(const Scenario& s);
Scenario parse_scenario(const std::string& line, int width);

void write_scenarios(std::ostream& os, std::span<const Scenario> scenarios);
std::vector<Scenario> read_scenarios(std::istream& is, int width);

}  // namespace ftealu
