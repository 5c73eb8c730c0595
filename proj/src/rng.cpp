#include "ftealu/rng.hpp"

#include <utility>

namespace ftealu {

std::vector<size_t> shuffled_indices(size_t n, uint64_t seed) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  for (size_t i = n; i > 1; --i) {
    const size_t j = static_cast<size_t>(rng_draw(seed, i - 1) % i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

}  // namespace ftealu
