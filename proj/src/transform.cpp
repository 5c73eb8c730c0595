#include "ftealu/transform.hpp"

#include <algorithm>
#include <numeric>

namespace ftealu {

const char* transform_name(TransformKind k) {
  switch (k) {
    case TransformKind::Identity: return "basic";
    case TransformKind::Reso: return "RESO";
    case TransformKind::Reswo: return "RESWO";
    case TransformKind::EReso: return "E-RESO";
    case TransformKind::EReswo: return "E-RESWO";
    case TransformKind::RotReso: return "ROT-RESO";
    case TransformKind::RotEReso: return "ROT-E-RESO";
  }
  throw ConfigError("unknown transform kind");
}

TransformKind transform_from_name(const std::string& name) {
  for (TransformKind k : kAllTransforms)
    if (name == transform_name(k)) return k;
  throw UsageError("unknown transform: " + name);
}

namespace {

std::vector<int> lane_range(int lo, int count) {
  std::vector<int> v(static_cast<size_t>(count));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

}  // namespace

Transform make_transform(TransformKind kind, int width) {
  if (width < 4 || width > 32 || (width % 2) != 0)
    throw ConfigError("transforms need an even width in 4..32");
  const int w = width;
  const int h = w / 2;

  Transform t;
  t.kind = kind;
  t.width = w;
  t.lane_of.assign(static_cast<size_t>(w), 0);

  switch (kind) {
    case TransformKind::Identity: {
      for (int i = 0; i < w; ++i) t.lane_of[static_cast<size_t>(i)] = i;
      t.segments = {Segment{0, w - 1, lane_range(0, w), 0}};
      t.image_width = w;
      break;
    }
    case TransformKind::Reso: {
      // Logical i -> lane i+1; the vacated lane 0 is fill, the shifted-out
      // top bit lands on extension lane w.
      for (int i = 0; i < w; ++i) t.lane_of[static_cast<size_t>(i)] = i + 1;
      t.fill_lanes = {0};
      t.segments = {Segment{0, w - 1, lane_range(0, w + 1), 1}};
      t.image_width = w + 1;
      break;
    }
    case TransformKind::EReso: {
      for (int i = 0; i < w; ++i) t.lane_of[static_cast<size_t>(i)] = i + 2;
      t.fill_lanes = {0, 1};
      t.segments = {Segment{0, w - 1, lane_range(0, w + 2), 2}};
      t.image_width = w + 2;
      break;
    }
    case TransformKind::Reswo: {
      // True swap: low half occupies the high lanes and executes first so
      // its carry chains into the high half.
      for (int i = 0; i < h; ++i) t.lane_of[static_cast<size_t>(i)] = h + i;
      for (int i = h; i < w; ++i) t.lane_of[static_cast<size_t>(i)] = i - h;
      t.segments = {Segment{0, h - 1, lane_range(h, h), 0},
                    Segment{h, w - 1, lane_range(0, h), 0}};
      t.image_width = w;
      break;
    }
    case TransformKind::EReswo: {
      // Each swapped half is shifted by 1 inside its own half-wide field;
      // the half's top bit overflows onto a fault-free extension lane.
      for (int i = 0; i < h - 1; ++i)
        t.lane_of[static_cast<size_t>(i)] = h + 1 + i;
      t.lane_of[static_cast<size_t>(h - 1)] = w;
      for (int i = h; i < w - 1; ++i)
        t.lane_of[static_cast<size_t>(i)] = i - h + 1;
      t.lane_of[static_cast<size_t>(w - 1)] = w + 1;
      t.fill_lanes = {0, h};
      Segment low{0, h - 1, lane_range(h, h), 1};
      low.exec_lanes.push_back(w);
      Segment high{h, w - 1, lane_range(0, h), 1};
      high.exec_lanes.push_back(w + 1);
      t.segments = {low, high};
      t.image_width = w + 2;
      break;
    }
    case TransformKind::RotReso: {
      // Rotate left by 1; the wrapped top bit executes second so the carry
      // of the low run feeds it.
      for (int i = 0; i < w - 1; ++i) t.lane_of[static_cast<size_t>(i)] = i + 1;
      t.lane_of[static_cast<size_t>(w - 1)] = 0;
      t.segments = {Segment{0, w - 2, lane_range(1, w - 1), 0},
                    Segment{w - 1, w - 1, {0}, 0}};
      t.image_width = w;
      break;
    }
    case TransformKind::RotEReso: {
      for (int i = 0; i < w - 2; ++i) t.lane_of[static_cast<size_t>(i)] = i + 2;
      t.lane_of[static_cast<size_t>(w - 2)] = 0;
      t.lane_of[static_cast<size_t>(w - 1)] = 1;
      t.segments = {Segment{0, w - 3, lane_range(2, w - 2), 0},
                    Segment{w - 2, w - 1, {0, 1}, 0}};
      t.image_width = w;
      break;
    }
  }
  return t;
}

std::vector<Transform> make_combo(std::span<const TransformKind> kinds,
                                  int width) {
  std::vector<Transform> combo;
  combo.reserve(kinds.size());
  for (TransformKind k : kinds) combo.push_back(make_transform(k, width));
  return combo;
}

uint64_t encode(const Transform& t, const Word& x) {
  if (x.width != t.width) throw ConfigError("encode: width mismatch");
  uint64_t img = 0;
  for (int i = 0; i < t.width; ++i)
    if (x.bit(i))
      img |= 1ull << t.lane_of[static_cast<size_t>(i)];
  return img;
}

Word decode(const Transform& t, uint64_t image) {
  uint64_t v = 0;
  for (int i = 0; i < t.width; ++i)
    v |= ((image >> t.lane_of[static_cast<size_t>(i)]) & 1u) << i;
  return Word(t.width, v);
}

namespace {

uint64_t apply_faults(uint64_t img, const FaultSet& faults, Operand which,
                      int version_id) {
  for (const StuckAt& s : faults.permanent) {
    if (s.operand != which) continue;
    const uint64_t bit = 1ull << s.lane;
    img = s.value ? (img | bit) : (img & ~bit);
  }
  if (faults.transient && faults.transient->version == version_id &&
      faults.transient->operand == which)
    img ^= 1ull << faults.transient->lane;
  return img;
}

uint64_t gather(uint64_t img, const std::vector<int>& lanes) {
  uint64_t v = 0;
  for (size_t i = 0; i < lanes.size(); ++i)
    v |= ((img >> lanes[i]) & 1u) << i;
  return v;
}

void scatter(uint64_t bits, const std::vector<int>& lanes, uint64_t& img) {
  for (size_t i = 0; i < lanes.size(); ++i) {
    const uint64_t lane_bit = 1ull << lanes[i];
    if ((bits >> i) & 1u)
      img |= lane_bit;
    else
      img &= ~lane_bit;
  }
}

}  // namespace

VersionResult execute_version(AluOp op, const Word& a, const Word& b,
                              const Transform& t, const FaultSet& faults,
                              int version_id) {
  const uint64_t ia = apply_faults(encode(t, a), faults, Operand::A, version_id);
  const uint64_t ib = apply_faults(encode(t, b), faults, Operand::B, version_id);
  const uint64_t img_mask =
      t.image_width >= 64 ? ~0ull : ((1ull << t.image_width) - 1);

  uint64_t out = 0;
  if (is_logic(op)) {
    switch (op) {
      case AluOp::And: out = ia & ib; break;
      case AluOp::Or: out = ia | ib; break;
      case AluOp::Xor: out = ia ^ ib; break;
      default: out = ~ia; break;  // Not
    }
    out &= img_mask;
  } else {
    int carry = 0;
    for (const Segment& seg : t.segments) {
      const int len = static_cast<int>(seg.exec_lanes.size());
      const uint64_t seg_mask = (1ull << len) - 1;
      const uint64_t sa = gather(ia, seg.exec_lanes);
      const uint64_t sb = gather(ib, seg.exec_lanes);
      const uint64_t cin = static_cast<uint64_t>(carry) << seg.data_shift;
      uint64_t res;
      if (op == AluOp::Add) {
        const uint64_t total = sa + sb + cin;
        res = total & seg_mask;
        carry = static_cast<int>((total >> len) & 1u);
      } else {
        res = (sa - sb - cin) & seg_mask;
        carry = sa < sb + cin ? 1 : 0;  // borrow
      }
      scatter(res, seg.exec_lanes, out);
    }
  }
  return VersionResult{version_id, decode(t, out), out};
}

}  // namespace ftealu
