#ifndef SGEMBED_CAYLEY_TABLE_HPP_
#define SGEMBED_CAYLEY_TABLE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sgembed {

//! Dense multiplication table of a finite semigroup.
//!
//! Elements are indexed 0..n-1 internally; every text format is 1-based.
//! The constructor checks shape only, not entry ranges or associativity,
//! so that validate_associativity can diagnose both.
class CayleyTable {
 public:
  CayleyTable() = default;

  //! Row-major entries, 0-based; entries.size() must equal order * order.
  CayleyTable(uint32_t order, std::vector<uint32_t> entries);

  uint32_t order() const noexcept {
    return _order;
  }

  uint32_t product(uint32_t i, uint32_t j) const noexcept {
    return _entries[static_cast<size_t>(i) * _order + j];
  }

  void set_product(uint32_t i, uint32_t j, uint32_t k) noexcept {
    _entries[static_cast<size_t>(i) * _order + j] = k;
  }

  std::span<const uint32_t> row(uint32_t i) const noexcept {
    return {_entries.data() + static_cast<size_t>(i) * _order, _order};
  }

  const std::vector<uint32_t>& entries() const noexcept {
    return _entries;
  }

  bool operator==(const CayleyTable&) const = default;

 private:
  uint32_t _order = 0;
  std::vector<uint32_t> _entries;
};

//! 0-based triple (i, j, k) with (i * j) * k != i * (j * k), or an
//! out-of-range entry reported as (i, j, j).
struct AssocCounterexample {
  uint32_t i = 0;
  uint32_t j = 0;
  uint32_t k = 0;
  bool out_of_range = false;  // true if a table entry is not an element index

  bool operator==(const AssocCounterexample&) const = default;
};

//! Checks every entry is in range, then every triple for associativity.
//! Returns true if the table is a semigroup. On failure fills *fail (when
//! non-null) with the first bad entry or triple in row-major order; this is
//! the same triple regardless of thread count.
bool validate_associativity(const CayleyTable& table,
                            AssocCounterexample* fail = nullptr,
                            int threads = 1);

//! Parses the text form: first a line with n, then n lines of n 1-based
//! entries. '#' starts a comment; blank lines are skipped.
CayleyTable read_table(std::string_view text);

CayleyTable read_table_file(const std::string& path);

//! Inverse of read_table, without comments.
std::string write_table(const CayleyTable& table);

//! Table of the same semigroup with element i renamed perm[i].
CayleyTable relabel(const CayleyTable& table, std::span<const uint32_t> perm);

}  // namespace sgembed

#endif  // SGEMBED_CAYLEY_TABLE_HPP_
