#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace ftealu {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class AluOp { And, Or, Xor, Not, Add, Sub };

inline constexpr AluOp kAllOps[] = {AluOp::And, AluOp::Or,  AluOp::Xor,
                                    AluOp::Not, AluOp::Add, AluOp::Sub};

bool is_logic(AluOp op);
const char* op_name(AluOp op);
AluOp op_from_name(const std::string& name);

/// Fixed-width unsigned word, bit 0 = LSB. Widths are even (4..32) so the
/// half-splitting transforms are always defined.
struct Word {
  int width = 4;
  uint64_t value = 0;

  Word() = default;
  Word(int w, uint64_t v);

  uint64_t mask() const { return (width >= 64) ? ~0ull : ((1ull << width) - 1); }
  int bit(int i) const { return static_cast<int>((value >> i) & 1u); }

  bool operator==(const Word&) const = default;
};

std::string to_bin(const Word& w);
std::string to_hex(const Word& w);

/// Carry for ADD, borrow for SUB; forced to zero for logic ops.
struct CarryIO {
  int carry_in = 0;
  int carry_out = 0;
};

/// Reference ALU result, no faults, carry-in zero.
Word golden(AluOp op, const Word& a, const Word& b);

/// The single hardware ALU every execution version time-shares.
std::pair<Word, CarryIO> alu_exec(AluOp op, const Word& a, const Word& b,
                                  CarryIO carry);

}  // namespace ftealu
