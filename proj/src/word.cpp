#include "ftealu/word.hpp"

namespace ftealu {

bool is_logic(AluOp op) {
  return op == AluOp::And || op == AluOp::Or || op == AluOp::Xor ||
         op == AluOp::Not;
}

const char* op_name(AluOp op) {
  switch (op) {
    case AluOp::And: return "and";
    case AluOp::Or: return "or";
    case AluOp::Xor: return "xor";
    case AluOp::Not: return "not";
    case AluOp::Add: return "add";
    case AluOp::Sub: return "sub";
  }
  throw ConfigError("unknown ALU op");
}

AluOp op_from_name(const std::string& name) {
  for (AluOp op : kAllOps)
    if (name == op_name(op)) return op;
  throw UsageError("unknown ALU op: " + name);
}

Word::Word(int w, uint64_t v) : width(w), value(0) {
  if (w < 4 || w > 32 || (w % 2) != 0)
    throw ConfigError("unsupported word width " + std::to_string(w));
  value = v & mask();
}

std::string to_bin(const Word& w) {
  std::string s(static_cast<size_t>(w.width), '0');
  for (int i = 0; i < w.width; ++i)
    s[static_cast<size_t>(w.width - 1 - i)] = static_cast<char>('0' + w.bit(i));
  return s;
}

std::string to_hex(const Word& w) {
  static const char* digits = "0123456789abcdef";
  int n = (w.width + 3) / 4;
  std::string s(static_cast<size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    s[static_cast<size_t>(n - 1 - i)] = digits[(w.value >> (4 * i)) & 0xf];
  return s;
}

std::pair<Word, CarryIO> alu_exec(AluOp op, const Word& a, const Word& b,
                                  CarryIO carry) {
  if (a.width != b.width)
    throw ConfigError("operand width mismatch");
  const int w = a.width;
  const uint64_t m = a.mask();
  CarryIO out;
  uint64_t r = 0;
  switch (op) {
    case AluOp::And: r = a.value & b.value; break;
    case AluOp::Or: r = a.value | b.value; break;
    case AluOp::Xor: r = a.value ^ b.value; break;
    case AluOp::Not: r = ~a.value; break;  // unary, b ignored
    case AluOp::Add: {
      uint64_t total = a.value + b.value + static_cast<uint64_t>(carry.carry_in);
      r = total;
      out.carry_out = static_cast<int>((total >> w) & 1u);
      break;
    }
    case AluOp::Sub: {
      uint64_t sub = b.value + static_cast<uint64_t>(carry.carry_in);
      r = a.value - sub;
      out.carry_out = a.value < sub ? 1 : 0;  // borrow
      break;
    }
  }
  return {Word(w, r & m), out};
}

Word golden(AluOp op, const Word& a, const Word& b) {
  return alu_exec(op, a, b, CarryIO{}).first;
}

}  // namespace ftealu
