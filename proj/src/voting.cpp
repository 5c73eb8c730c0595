#include "ftealu/voting.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace ftealu {

void WeightTable::validate() const {
  if (versions.size() != 3 && versions.size() != 5)
    throw ConfigError("weight table needs 3 or 5 versions");
  if (weights.size() != versions.size())
    throw ConfigError("weight table dimension mismatch");
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != width)
      throw ConfigError("weight table dimension mismatch");
    for (double v : row)
      if (!(v >= 0.0)) throw ConfigError("weights must be non-negative");
  }
}

void save_weight_table(std::ostream& os, const WeightTable& t) {
  os << "width=" << t.width << " versions=";
  for (size_t j = 0; j < t.versions.size(); ++j) {
    if (j) os << ',';
    os << t.versions[j];
  }
  os << '\n';
  char buf[32];
  for (int i = 0; i < t.width; ++i)
    for (size_t j = 0; j < t.versions.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.9f", t.weights[j][static_cast<size_t>(i)]);
      os << i << ',' << t.versions[j] << ',' << buf << '\n';
    }
}

WeightTable load_weight_table(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw UsageError("weight table: missing header");
  WeightTable t;
  {
    std::istringstream hs(header);
    std::string tok;
    hs >> tok;
    if (tok.rfind("width=", 0) != 0)
      throw UsageError("weight table: bad header: " + header);
    t.width = std::stoi(tok.substr(6));
    hs >> tok;
    if (tok.rfind("versions=", 0) != 0)
      throw UsageError("weight table: bad header: " + header);
    std::istringstream vs(tok.substr(9));
    std::string name;
    while (std::getline(vs, name, ',')) t.versions.push_back(name);
  }
  t.weights.assign(t.versions.size(),
                   std::vector<double>(static_cast<size_t>(t.width), 0.0));
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string bit_s, name, weight_s;
    if (!std::getline(ls, bit_s, ',') || !std::getline(ls, name, ',') ||
        !std::getline(ls, weight_s))
      throw UsageError("weight table: bad row: " + line);
    const int bit = std::stoi(bit_s);
    size_t j = 0;
    while (j < t.versions.size() && t.versions[j] != name) ++j;
    if (j == t.versions.size() || bit < 0 || bit >= t.width)
      throw UsageError("weight table: bad row: " + line);
    t.weights[j][static_cast<size_t>(bit)] = std::stod(weight_s);
  }
  t.validate();
  return t;
}

Word majority_vote(std::span<const Word> results) {
  if (results.empty() || results.size() % 2 == 0)
    throw ConfigError("majority vote needs an odd number of results");
  const int w = results[0].width;
  for (const Word& r : results)
    if (r.width != w) throw ConfigError("majority vote: width mismatch");
  uint64_t out = 0;
  for (int i = 0; i < w; ++i) {
    int ones = 0;
    for (const Word& r : results) ones += r.bit(i);
    if (2 * ones > static_cast<int>(results.size())) out |= 1ull << i;
  }
  return Word(w, out);
}

Word weighted_vote(std::span<const Word> results, const WeightTable& table,
                   VoteTrace* trace) {
  if (results.size() != table.versions.size())
    throw ConfigError("weighted vote: result count does not match table");
  const int w = table.width;
  for (const Word& r : results)
    if (r.width != w) throw ConfigError("weighted vote: width mismatch");
  if (trace) {
    trace->weighted_sums.assign(static_cast<size_t>(w), 0.0);
    trace->total_weights.assign(static_cast<size_t>(w), 0.0);
    trace->chosen.assign(static_cast<size_t>(w), 0);
  }
  uint64_t out = 0;
  for (int i = 0; i < w; ++i) {
    double sum = 0.0, total = 0.0;
    int ones = 0;
    for (size_t j = 0; j < results.size(); ++j) {
      const double wj = table.weights[j][static_cast<size_t>(i)];
      total += wj;
      if (results[j].bit(i)) {
        sum += wj;
        ++ones;
      }
    }
    int bit;
    if (total < kEpsTotalWeight)
      bit = 2 * ones > static_cast<int>(results.size()) ? 1 : 0;
    else
      bit = sum / total >= 0.5 ? 1 : 0;
    if (bit) out |= 1ull << i;
    if (trace) {
      trace->weighted_sums[static_cast<size_t>(i)] = sum;
      trace->total_weights[static_cast<size_t>(i)] = total;
      trace->chosen[static_cast<size_t>(i)] = bit;
    }
  }
  return Word(w, out);
}

Word ft_ealu(AluOp op, const Word& a, const Word& b, const FaultSet& faults,
             std::span<const Transform> combo, const WeightTable* table) {
  if (combo.size() != 3 && combo.size() != 5)
    throw ConfigError("ft_ealu needs a 3- or 5-version combo");
  if (table && table->versions.size() != combo.size())
    throw ConfigError("ft_ealu: table does not match combo size");
  std::vector<Word> results;
  results.reserve(combo.size());
  for (size_t j = 0; j < combo.size(); ++j)
    results.push_back(
        execute_version(op, a, b, combo[j], faults, static_cast<int>(j))
            .decoded);
  return table ? weighted_vote(results, *table) : majority_vote(results);
}

}  // namespace ftealu
