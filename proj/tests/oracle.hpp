#ifndef SGEMBED_TESTS_ORACLE_HPP_
#define SGEMBED_TESTS_ORACLE_HPP_

// Naive reference implementations the engine is measured against. Everything
// here trades speed for obviousness: plain loops, no pruning, no sharing.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "sgembed/cayley_table.hpp"

namespace testsupport {

using sgembed::AssocCounterexample;
using sgembed::CayleyTable;

//! Every injective homomorphism source -> target, found by enumerating all
//! n!/(n-m)! injective maps and checking the homomorphism law at the leaf.
//! Maps are sorted lexicographically.
inline std::vector<std::vector<uint32_t>> brute_force_embeddings(const CayleyTable& src,
                                                                 const CayleyTable& tgt) {
  const uint32_t m = src.order();
  const uint32_t n = tgt.order();
  std::vector<std::vector<uint32_t>> found;
  if (m > n) {
    return found;
  }
  std::vector<uint32_t> map(m, 0);
  std::vector<uint8_t> used(n, 0);
  std::function<void(uint32_t)> extend = [&](uint32_t i) {
    if (i == m) {
      for (uint32_t a = 0; a < m; ++a) {
        for (uint32_t b = 0; b < m; ++b) {
          if (tgt.product(map[a], map[b]) != map[src.product(a, b)]) {
            return;
          }
        }
      }
      found.push_back(map);
      return;
    }
    for (uint32_t t = 0; t < n; ++t) {
      if (!used[t]) {
        used[t] = 1;
        map[i] = t;
        extend(i + 1);
        used[t] = 0;
      }
    }
  };
  extend(0);
  std::sort(found.begin(), found.end());
  return found;
}

//! Three nested loops, first failure in row-major (i, j, k) order; the
//! range scan happens first, exactly like the library contract.
inline bool naive_assoc(const CayleyTable& t, AssocCounterexample* fail = nullptr) {
  const uint32_t n = t.order();
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      if (t.product(i, j) >= n) {
        if (fail) {
          *fail = {i, j, j, true};
        }
        return false;
      }
    }
  }
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      for (uint32_t k = 0; k < n; ++k) {
        if (t.product(t.product(i, j), k) != t.product(i, t.product(j, k))) {
          if (fail) {
            *fail = {i, j, k, false};
          }
          return false;
        }
      }
    }
  }
  return true;
}

//! Is this set of permutations of 0..n-1 a group: contains the identity and
//! is closed under composition and inverse?
inline bool is_permutation_group(const std::vector<std::vector<uint32_t>>& maps) {
  if (maps.empty()) {
    return false;
  }
  const uint32_t n = static_cast<uint32_t>(maps[0].size());
  std::vector<std::vector<uint32_t>> sorted = maps;
  std::sort(sorted.begin(), sorted.end());
  auto contains = [&](const std::vector<uint32_t>& p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
  };
  std::vector<uint32_t> identity(n);
  for (uint32_t i = 0; i < n; ++i) {
    identity[i] = i;
  }
  if (!contains(identity)) {
    return false;
  }
  for (const auto& p : sorted) {
    std::vector<uint32_t> inverse(n);
    for (uint32_t i = 0; i < n; ++i) {
      inverse[p[i]] = i;
    }
    if (!contains(inverse)) {
      return false;
    }
    for (const auto& q : sorted) {
      std::vector<uint32_t> pq(n);
      for (uint32_t i = 0; i < n; ++i) {
        pq[i] = q[p[i]];
      }
      if (!contains(pq)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace testsupport

#endif  // SGEMBED_TESTS_ORACLE_HPP_
