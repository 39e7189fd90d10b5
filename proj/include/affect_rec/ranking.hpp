#pragma once

// Deterministic top-k selection shared by PAC, group formation and reranking.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace affect::ranking {

/// Indices of the first `k` elements of [0, n) under the strict total order
/// `before`, in that order. `before` must be a total order so the result is
/// independent of the selection algorithm.
template <class Before>
std::vector<std::size_t> top_k(std::size_t n, std::size_t k, Before before) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  k = std::min(k, n);
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), before);
  idx.resize(k);
  return idx;
}

}  // namespace affect::ranking
