#include "sgembed/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sgembed::kernels {

namespace {

  // Scans the n^2 entries for one outside 0..n-1; fills *fail row-major.
  bool range_check(const CayleyTable& table, AssocCounterexample* fail) {
    uint32_t n = table.order();
    const auto& e = table.entries();
    for (size_t idx = 0; idx < e.size(); ++idx) {
      if (e[idx] >= n) {
        if (fail != nullptr) {
          uint32_t i = static_cast<uint32_t>(idx / n);
          uint32_t j = static_cast<uint32_t>(idx % n);
          *fail = {i, j, j, true};
        }
        return false;
      }
    }
    return true;
  }

  // First non-associative triple with outer index i, or false.
  bool row_assoc(const CayleyTable& t, uint32_t i, AssocCounterexample* fail) {
    uint32_t n = t.order();
    for (uint32_t j = 0; j < n; ++j) {
      uint32_t ij = t.product(i, j);
      for (uint32_t k = 0; k < n; ++k) {
        if (t.product(ij, k) != t.product(i, t.product(j, k))) {
          if (fail != nullptr) {
            *fail = {i, j, k, false};
          }
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

bool assoc_serial(const CayleyTable& table, AssocCounterexample* fail) {
  if (!range_check(table, fail)) {
    return false;
  }
  uint32_t n = table.order();
  for (uint32_t i = 0; i < n; ++i) {
    if (!row_assoc(table, i, fail)) {
      return false;
    }
  }
  return true;
}

bool assoc_parallel(const CayleyTable& table, AssocCounterexample* fail, int threads) {
  if (!range_check(table, fail)) {
    return false;
  }
  uint32_t n = table.order();
  // Every thread records its smallest failing i; the global minimum then
  // re-derives (j, k), so the reported triple matches the serial one.
  uint32_t first_bad = n;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads) \
    reduction(min : first_bad)
#endif
  for (uint32_t i = 0; i < n; ++i) {
    if (i < first_bad && !row_assoc(table, i, nullptr)) {
      first_bad = i;
    }
  }
  (void) threads;
  if (first_bad == n) {
    return true;
  }
  if (fail != nullptr) {
    row_assoc(table, first_bad, fail);
  }
  return false;
}

namespace {

  // Walks powers of `a`, storing 1-based exponents of first visits in
  // scratch (0 = unvisited); visited entries are wiped before returning.
  IndexPeriod index_period_scratch(const CayleyTable& t, uint32_t a, std::vector<uint32_t>& scratch) {
    uint32_t power = a;
    uint32_t exponent = 1;
    while (scratch[power] == 0) {
      scratch[power] = exponent;
      power = t.product(power, a);
      ++exponent;
    }
    IndexPeriod ip{scratch[power], exponent - scratch[power]};
    power = a;
    while (scratch[power] != 0) {
      uint32_t next = t.product(power, a);
      scratch[power] = 0;
      power = next;
    }
    return ip;
  }

  void profile_element(const CayleyTable& t,
                       uint32_t i,
                       const std::vector<uint32_t>& freq,
                       const std::vector<uint32_t>& diag,
                       std::vector<uint32_t>& scratch,
                       ElementProfile& out) {
    uint32_t n = t.order();
    uint32_t row = 0;
    uint32_t col = 0;
    for (uint32_t j = 0; j < n; ++j) {
      row += t.product(i, j) == i;
      col += t.product(j, i) == i;
    }
    out.index_period = index_period_scratch(t, i, scratch);
    out.frequency = freq[i];
    out.diagonal_frequency = diag[i];
    out.row_frequency = row;
    out.column_frequency = col;
    out.is_idempotent = t.product(i, i) == i;
  }

}  // namespace

std::vector<ElementProfile> profiles_serial(const CayleyTable& table) {
  uint32_t n = table.order();
  std::vector<uint32_t> freq(n, 0);
  std::vector<uint32_t> diag(n, 0);
  for (uint32_t v : table.entries()) {
    ++freq[v];
  }
  for (uint32_t i = 0; i < n; ++i) {
    ++diag[table.product(i, i)];
  }
  std::vector<ElementProfile> out(n);
  std::vector<uint32_t> scratch(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    profile_element(table, i, freq, diag, scratch, out[i]);
  }
  return out;
}

std::vector<ElementProfile> profiles_parallel(const CayleyTable& table, int threads) {
  uint32_t n = table.order();
  std::vector<uint32_t> freq(n, 0);
  std::vector<uint32_t> diag(n, 0);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
  {
    std::vector<uint32_t> local(n, 0);
#pragma omp for schedule(static) nowait
    for (uint32_t i = 0; i < n; ++i) {
      for (uint32_t j = 0; j < n; ++j) {
        ++local[table.product(i, j)];
      }
    }
#pragma omp critical
    {
      for (uint32_t v = 0; v < n; ++v) {
        freq[v] += local[v];
      }
    }
  }
#else
  for (uint32_t v : table.entries()) {
    ++freq[v];
  }
#endif
  for (uint32_t i = 0; i < n; ++i) {
    ++diag[table.product(i, i)];
  }
  std::vector<ElementProfile> out(n);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
  {
    std::vector<uint32_t> scratch(n, 0);
#pragma omp for schedule(dynamic, 16)
    for (uint32_t i = 0; i < n; ++i) {
      profile_element(table, i, freq, diag, scratch, out[i]);
    }
  }
#else
  std::vector<uint32_t> scratch(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    profile_element(table, i, freq, diag, scratch, out[i]);
  }
#endif
  (void) threads;
  return out;
}

}  // namespace sgembed::kernels
