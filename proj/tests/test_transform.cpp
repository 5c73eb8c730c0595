#include <set>

#include "doctest.h"
#include "ftealu/rng.hpp"
#include "ftealu/transform.hpp"

using namespace ftealu;

namespace {

// Independent reference for the shift-by-one version: operate directly on
// shifted integers, never touching the Transform machinery.
uint64_t stuck(uint64_t img, int lane, int value) {
  return value ? img | (1ull << lane) : img & ~(1ull << lane);
}

uint64_t reso_add_oracle(int w, uint64_t a, uint64_t b, const FaultSet& f) {
  uint64_t ia = a << 1, ib = b << 1;
  for (const StuckAt& s : f.permanent)
    (s.operand == Operand::A ? ia : ib) = stuck(s.operand == Operand::A ? ia : ib,
                                                s.lane, s.value);
  const uint64_t sum = (ia + ib) & ((1ull << (w + 1)) - 1);
  return (sum >> 1) & ((1ull << w) - 1);
}

}  // namespace

TEST_CASE("make_transform lane mappings at w=4") {
  const auto id = make_transform(TransformKind::Identity, 4);
  CHECK(id.lane_of == std::vector<int>{0, 1, 2, 3});
  CHECK(id.fill_lanes.empty());

  const auto reso = make_transform(TransformKind::Reso, 4);
  CHECK(reso.lane_of == std::vector<int>{1, 2, 3, 4});
  CHECK(reso.fill_lanes == std::vector<int>{0});

  const auto ereswo = make_transform(TransformKind::EReswo, 4);
  CHECK(ereswo.lane_of == std::vector<int>{3, 4, 1, 5});
  CHECK(ereswo.fill_lanes == std::vector<int>{0, 2});

  const auto reswo = make_transform(TransformKind::Reswo, 4);
  CHECK(reswo.lane_of == std::vector<int>{2, 3, 0, 1});

  const auto rot = make_transform(TransformKind::RotReso, 4);
  CHECK(rot.lane_of == std::vector<int>{1, 2, 3, 0});

  const auto rot2 = make_transform(TransformKind::RotEReso, 4);
  CHECK(rot2.lane_of == std::vector<int>{2, 3, 0, 1});

  const auto ereso = make_transform(TransformKind::EReso, 4);
  CHECK(ereso.lane_of == std::vector<int>{2, 3, 4, 5});
  CHECK(ereso.fill_lanes == std::vector<int>{0, 1});
}

TEST_CASE("encode examples") {
  const auto reso = make_transform(TransformKind::Reso, 4);
  CHECK(encode(reso, Word(4, 0b0101)) == 0b01010);
  const auto id = make_transform(TransformKind::Identity, 4);
  CHECK(encode(id, Word(4, 0b1101)) == 0b1101);
  const auto ereswo = make_transform(TransformKind::EReswo, 4);
  // 0b1011: low half "11" at lanes 3 and ext 4; high half "10" at lanes 1
  // (bit 2 = 0) and ext 5.
  CHECK(encode(ereswo, Word(4, 0b1011)) == ((1u << 3) | (1u << 4) | (1u << 5)));
}

TEST_CASE("decode inverts encode") {
  for (TransformKind k : kAllTransforms) {
    const auto t = make_transform(k, 4);
    for (uint64_t v = 0; v < 16; ++v)
      CHECK(decode(t, encode(t, Word(4, v))) == Word(4, v));
  }
  for (TransformKind k : kAllTransforms) {
    const auto t = make_transform(k, 16);
    for (int i = 0; i < 200; ++i) {
      const Word x(16, rng_draw(7, static_cast<uint64_t>(i)) & 0xffff);
      CHECK(decode(t, encode(t, x)) == x);
    }
  }
}

TEST_CASE("segment images plus fill lanes partition the word lanes") {
  for (int w : {4, 8, 16}) {
    for (TransformKind k : kAllTransforms) {
      const auto t = make_transform(k, w);
      std::set<int> seen;
      for (int lane : t.lane_of)
        if (lane < w) CHECK(seen.insert(lane).second);
      for (int lane : t.fill_lanes) {
        CHECK(lane < w);
        CHECK(seen.insert(lane).second);
      }
      CHECK(static_cast<int>(seen.size()) == w);
      // Extension lanes stay inside the declared image.
      for (int lane : t.lane_of) CHECK(lane < t.image_width);
    }
  }
}

TEST_CASE("fault-free transparency, exhaustive w=4") {
  for (TransformKind k : kAllTransforms) {
    const auto t = make_transform(k, 4);
    for (AluOp op : kAllOps)
      for (uint64_t a = 0; a < 16; ++a)
        for (uint64_t b = 0; b < 16; ++b) {
          const Word wa(4, a), wb(4, b);
          CHECK(execute_version(op, wa, wb, t, FaultSet{}).decoded ==
                golden(op, wa, wb));
        }
  }
}

TEST_CASE("fault-free transparency, sampled w=16") {
  for (TransformKind k : kAllTransforms) {
    const auto t = make_transform(k, 16);
    for (AluOp op : kAllOps)
      for (int i = 0; i < 50; ++i) {
        const Word a(16, rng_draw(11, static_cast<uint64_t>(2 * i)) & 0xffff);
        const Word b(16, rng_draw(11, static_cast<uint64_t>(2 * i + 1)) & 0xffff);
        CHECK(execute_version(op, a, b, t, FaultSet{}).decoded ==
              golden(op, a, b));
      }
  }
}

TEST_CASE("worked stuck-at examples") {
  const auto reso = make_transform(TransformKind::Reso, 4);
  // Stuck lane sits below the shifted data's significance: masked.
  FaultSet lane0_sa1{{StuckAt{Operand::A, 0, 1}}, std::nullopt};
  CHECK(execute_version(AluOp::Add, Word(4, 0b0011), Word(4, 0b0001), reso,
                        lane0_sa1)
            .decoded == Word(4, 0b0100));

  const auto id = make_transform(TransformKind::Identity, 4);
  FaultSet lane1_sa1{{StuckAt{Operand::A, 1, 1}}, std::nullopt};
  CHECK(execute_version(AluOp::Add, Word(4, 0b0001), Word(4, 0b0001), id,
                        lane1_sa1)
            .decoded == Word(4, 0b0100));
  CHECK(golden(AluOp::Add, Word(4, 0b0001), Word(4, 0b0001)) == Word(4, 0b0010));
}

TEST_CASE("RESO add under faults matches the direct-shift oracle") {
  const auto reso = make_transform(TransformKind::Reso, 16);
  for (int i = 0; i < 500; ++i) {
    const uint64_t a = rng_draw(21, static_cast<uint64_t>(3 * i)) & 0xffff;
    const uint64_t b = rng_draw(21, static_cast<uint64_t>(3 * i + 1)) & 0xffff;
    const uint64_t r = rng_draw(21, static_cast<uint64_t>(3 * i + 2));
    FaultSet f{{StuckAt{(r & 1) ? Operand::A : Operand::B,
                        static_cast<int>((r >> 1) % 16),
                        static_cast<int>((r >> 6) & 1)}},
               std::nullopt};
    CHECK(execute_version(AluOp::Add, Word(16, a), Word(16, b), reso, f)
              .decoded.value == reso_add_oracle(16, a, b, f));
  }
}

TEST_CASE("fill-lane faults never disturb logic ops") {
  for (TransformKind k :
       {TransformKind::Reso, TransformKind::EReso, TransformKind::EReswo}) {
    const auto t = make_transform(k, 4);
    for (int lane : t.fill_lanes)
      for (Operand o : {Operand::A, Operand::B})
        for (int value : {0, 1})
          for (AluOp op : {AluOp::And, AluOp::Or, AluOp::Xor, AluOp::Not})
            for (uint64_t a = 0; a < 16; ++a)
              for (uint64_t b = 0; b < 16; ++b) {
                FaultSet f{{StuckAt{o, lane, value}}, std::nullopt};
                const Word wa(4, a), wb(4, b);
                CHECK(execute_version(op, wa, wb, t, f).decoded ==
                      golden(op, wa, wb));
              }
  }
}

TEST_CASE("permanent faults are stable across repeated execution") {
  const auto t = make_transform(TransformKind::EReswo, 4);
  FaultSet f{{StuckAt{Operand::A, 1, 1}, StuckAt{Operand::B, 3, 0}},
             std::nullopt};
  for (uint64_t a = 0; a < 16; ++a)
    for (uint64_t b = 0; b < 16; ++b) {
      const Word wa(4, a), wb(4, b);
      CHECK(execute_version(AluOp::Add, wa, wb, t, f).decoded ==
            execute_version(AluOp::Add, wa, wb, t, f).decoded);
    }
}

TEST_CASE("transient flips apply only in the matching version") {
  const auto t = make_transform(TransformKind::Reso, 4);
  FaultSet f{{}, TransientFlip{1, Operand::A, 2}};
  const Word a(4, 0b0110), b(4, 0b0011);
  CHECK(execute_version(AluOp::Add, a, b, t, f, 0).decoded ==
        golden(AluOp::Add, a, b));
  CHECK(execute_version(AluOp::Add, a, b, t, f, 1).decoded !=
        golden(AluOp::Add, a, b));
}

TEST_CASE("odd or out-of-range widths are rejected") {
  CHECK_THROWS_AS(make_transform(TransformKind::Reswo, 5), ConfigError);
  CHECK_THROWS_AS(make_transform(TransformKind::Identity, 34), ConfigError);
}
