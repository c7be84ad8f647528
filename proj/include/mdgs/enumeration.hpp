#pragma once

#include <vector>

namespace mdgs {

// Visits index subsets of {0..pool-1} in increasing size, lexicographic within
// a size. The callback returns true to stop; the function reports whether it
// was stopped.
template <typename F>
bool for_each_subset_by_size(int pool, int max_size, F&& visit) {
  std::vector<int> idx;
  for (int size = 0; size <= max_size && size <= pool; ++size) {
    idx.resize(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      if (visit(static_cast<const std::vector<int>&>(idx))) return true;
      if (size == 0) break;
      int i = size - 1;
      while (i >= 0 && idx[i] == pool - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

}  // namespace mdgs
