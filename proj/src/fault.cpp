#include "ftealu/fault.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "ftealu/rng.hpp"
#include "ftealu/transform.hpp"

namespace ftealu {

std::vector<FaultSet> enumerate_single_faults(int width) {
  if (width < 1) throw UsageError("width must be positive");
  std::vector<FaultSet> sets;
  sets.reserve(static_cast<size_t>(4 * width));
  for (Operand o : {Operand::A, Operand::B})
    for (int lane = 0; lane < width; ++lane)
      for (int value : {0, 1})
        sets.push_back(FaultSet{{StuckAt{o, lane, value}}, std::nullopt});
  return sets;
}

std::vector<FaultSet> enumerate_double_faults(int width) {
  if (width < 1) throw UsageError("width must be positive");
  // Positions 0..2w-1: operand A lanes then operand B lanes.
  const int positions = 2 * width;
  auto at = [width](int pos, int value) {
    return StuckAt{pos < width ? Operand::A : Operand::B, pos % width, value};
  };
  std::vector<FaultSet> sets;
  sets.reserve(static_cast<size_t>(positions * (positions - 1) / 2 * 4));
  for (int p = 0; p < positions; ++p)
    for (int q = p + 1; q < positions; ++q)
      for (int v1 : {0, 1})
        for (int v2 : {0, 1})
          sets.push_back(FaultSet{{at(p, v1), at(q, v2)}, std::nullopt});
  return sets;
}

std::vector<FaultSet> enumerate_transient_faults(int width, int versions) {
  std::vector<FaultSet> sets;
  for (int v = 0; v < versions; ++v)
    for (Operand o : {Operand::A, Operand::B})
      for (int lane = 0; lane < width; ++lane)
        sets.push_back(FaultSet{{}, TransientFlip{v, o, lane}});
  return sets;
}

std::vector<std::pair<Word, Word>> sample_inputs(int width, int count,
                                                 uint64_t seed) {
  if (count < 1) throw UsageError("sample count must be >= 1");
  std::vector<std::pair<Word, Word>> pairs;
  pairs.reserve(static_cast<size_t>(count));
  const uint64_t mask = Word(width, 0).mask();
  for (int k = 0; k < count; ++k)
    pairs.emplace_back(Word(width, rng_draw(seed, 2ull * k) & mask),
                       Word(width, rng_draw(seed, 2ull * k + 1) & mask));
  return pairs;
}

std::vector<std::pair<Word, Word>> exhaustive_inputs(int width) {
  if (width > 8) throw UsageError("exhaustive inputs limited to width <= 8");
  const uint64_t n = 1ull << width;
  std::vector<std::pair<Word, Word>> pairs;
  pairs.reserve(static_cast<size_t>(n * n));
  for (uint64_t a = 0; a < n; ++a)
    for (uint64_t b = 0; b < n; ++b)
      pairs.emplace_back(Word(width, a), Word(width, b));
  return pairs;
}

std::vector<FaultSet> vulnerable_bit_faults(std::span<const Transform> combo,
                                            int width) {
  if (combo.empty()) throw UsageError("vulnerable_bit_faults: empty combo");
  std::set<int> lanes{0, width - 1};
  for (const Transform& t : combo) {
    for (int f : t.fill_lanes) lanes.insert(f);
    if (t.kind == TransformKind::Reswo || t.kind == TransformKind::EReswo) {
      lanes.insert(width / 2 - 1);
      lanes.insert(width / 2);
    }
  }
  std::vector<FaultSet> sets;
  for (Operand o : {Operand::A, Operand::B})
    for (int lane : lanes)
      for (int value : {0, 1})
        sets.push_back(FaultSet{{StuckAt{o, lane, value}}, std::nullopt});
  return sets;
}

namespace {

char operand_char(Operand o) { return o == Operand::A ? 'A' : 'B'; }

Operand operand_from_char(char c) {
  if (c == 'A') return Operand::A;
  if (c == 'B') return Operand::B;
  throw UsageError(std::string("bad operand char: ") + c);
}

}  // namespace

std::string format_fault_set(const FaultSet& f) {
  std::ostringstream os;
  bool first = true;
  for (const StuckAt& s : f.permanent) {
    if (!first) os << '|';
    first = false;
    os << operand_char(s.operand) << s.lane << '@' << s.value;
  }
  if (f.transient) {
    if (!first) os << '|';
    os << 'T' << f.transient->version << operand_char(f.transient->operand)
       << f.transient->lane;
  }
  return os.str();
}

FaultSet parse_fault_set(const std::string& spec) {
  FaultSet f;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t bar = spec.find('|', pos);
    if (bar == std::string::npos) bar = spec.size();
    const std::string tok = spec.substr(pos, bar - pos);
    pos = bar + 1;
    if (tok.empty()) continue;
    if (tok[0] == 'T') {
      size_t i = 1, start = i;
      while (i < tok.size() && isdigit(static_cast<unsigned char>(tok[i]))) ++i;
      if (i == start || i >= tok.size())
        throw UsageError("bad transient token: " + tok);
      TransientFlip tr;
      tr.version = std::stoi(tok.substr(start, i - start));
      tr.operand = operand_from_char(tok[i]);
      tr.lane = std::stoi(tok.substr(i + 1));
      f.transient = tr;
    } else {
      const size_t at = tok.find('@');
      if (at == std::string::npos || at < 2)
        throw UsageError("bad stuck-at token: " + tok);
      StuckAt s;
      s.operand = operand_from_char(tok[0]);
      s.lane = std::stoi(tok.substr(1, at - 1));
      s.value = std::stoi(tok.substr(at + 1));
      if (s.value != 0 && s.value != 1)
        throw UsageError("stuck value must be 0 or 1: " + tok);
      f.permanent.push_back(s);
    }
  }
  return f;
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream os;
  os << op_name(s.op) << ',' << to_hex(s.a) << ',' << to_hex(s.b) << ','
     << format_fault_set(s.faults);
  return os.str();
}

Scenario parse_scenario(const std::string& line, int width) {
  std::istringstream is(line);
  std::string op, a_hex, b_hex, spec;
  if (!std::getline(is, op, ',') || !std::getline(is, a_hex, ',') ||
      !std::getline(is, b_hex, ','))
    throw UsageError("bad scenario line: " + line);
  std::getline(is, spec);  // fault spec may be empty
  Scenario s;
  s.op = op_from_name(op);
  s.a = Word(width, std::stoull(a_hex, nullptr, 16));
  s.b = Word(width, std::stoull(b_hex, nullptr, 16));
  s.faults = parse_fault_set(spec);
  return s;
}

void write_scenarios(std::ostream& os, std::span<const Scenario> scenarios) {
  for (const Scenario& s : scenarios) os << format_scenario(s) << '\n';
}

std::vector<Scenario> read_scenarios(std::istream& is, int width) {
  std::vector<Scenario> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_scenario(line, width));
  }
  return out;
}

}  // namespace ftealu
