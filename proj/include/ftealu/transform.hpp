#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ftealu/fault.hpp"
#include "ftealu/word.hpp"

namespace ftealu {

enum class TransformKind {
  Identity,  // V1, raw operands
  Reso,      // left shift by 1
  Reswo,     // halves swapped, no shift
  EReso,     // left shift by 2
  EReswo,    // halves swapped, each half shifted by 1
  RotReso,   // rotate left by 1
  RotEReso,  // rotate left by 2
};

inline constexpr TransformKind kAllTransforms[] = {
    TransformKind::Identity, TransformKind::Reso,     TransformKind::Reswo,
    TransformKind::EReso,    TransformKind::EReswo,   TransformKind::RotReso,
    TransformKind::RotEReso};

const char* transform_name(TransformKind k);
TransformKind transform_from_name(const std::string& name);

/// One significance-contiguous run of logical bits and the physical lanes
/// its arithmetic executes on. exec_lanes lists lanes in ascending
/// significance of the segment's integer, including leading fill lanes and
/// trailing extension lanes; data_shift is the exec-lane index holding
/// logical_lo (1 for shifted segments). Carry chains across segments in
/// list order.
struct Segment {
  int logical_lo = 0;
  int logical_hi = 0;  // inclusive
  std::vector<int> exec_lanes;
  int data_shift = 0;
};

/// A diversification scheme as a logical-to-physical lane mapping.
/// Decoding the encoding of any word is the identity; lanes >= width are
/// fault-free extension lanes.
struct Transform {
  TransformKind kind = TransformKind::Identity;
  int width = 4;
  int image_width = 4;          // lanes used, extension included
  std::vector<int> lane_of;     // logical bit -> physical lane
  std::vector<int> fill_lanes;  // constant-zero lanes below width
  std::vector<Segment> segments;  // in execution order
};

Transform make_transform(TransformKind kind, int width);
std::vector<Transform> make_combo(std::span<const TransformKind> kinds,
                                  int width);

/// Physical lane image of x under t; fill and unused lanes are zero.
uint64_t encode(const Transform& t, const Word& x);

/// Inverse of encode restricted to mapped lanes.
Word decode(const Transform& t, uint64_t image);

struct VersionResult {
  int version_id = 0;
  Word decoded;
  uint64_t raw_physical = 0;
};

/// One full encode -> fault -> execute -> decode pass. Stuck-at faults pin
/// lanes 0..w-1 of the designated operand image; a transient flip applies
/// only when its version matches version_id. ADD/SUB run segment by
/// segment with the carry chained between segments.
VersionResult execute_version(AluOp op, const Word& a, const Word& b,
                              const Transform& t, const FaultSet& faults,
                              int version_id = 0);

}  // namespace ftealu
