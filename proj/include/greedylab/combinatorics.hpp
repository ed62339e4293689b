#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "greedylab/types.hpp"

namespace greedylab {

// Binomial coefficient, saturating at a large sentinel instead of overflowing.
uint64_t binomial(int n, int k);

// Number of subsets of size 1..k (the empty set is excluded).
uint64_t subset_count_up_to(int n, int k);

// Calls fn for every size-k subset of {1..n} in lexicographic order.
// fn receives 1-based labels.
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn);

// Every subset of `base` of size 1..max_size, lexicographic by (size, labels).
void for_each_subset_up_to(const std::vector<int>& base, int max_size,
                           const std::function<void(const std::vector<int>&)>& fn);

// All 2^k subsets of `base` (including the empty one).
void for_each_subset(const std::vector<int>& base,
                     const std::function<void(const std::vector<int>&)>& fn);

// Sign tuples over k slots. Real: {+1,-1}^k. Complex: m-th roots of unity.
// fn receives the tuple aligned with the slot order.
void for_each_sign_tuple(int k, bool real_field, int roots_of_unity,
                         const std::function<void(const std::vector<Complex>&)>& fn);

uint64_t sign_tuple_count(int k, bool real_field, int roots_of_unity);

}  // namespace greedylab
