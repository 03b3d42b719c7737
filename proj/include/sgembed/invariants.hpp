#ifndef SGEMBED_INVARIANTS_HPP_
#define SGEMBED_INVARIANTS_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sgembed/cayley_table.hpp"

namespace sgembed {

using Bigint = boost::multiprecision::cpp_int;

//! Smallest m, r >= 1 with a^(m+r) = a^m. Preserved by any embedding.
struct IndexPeriod {
  uint32_t index = 0;
  uint32_t period = 0;

  auto operator<=>(const IndexPeriod&) const = default;
};

//! Per-element statistics preserved by any isomorphism: how often the
//! element appears in the whole table, on the diagonal, in its own row and
//! in its own column, plus its index-period and idempotency.
struct ElementProfile {
  IndexPeriod index_period;
  uint32_t frequency = 0;
  uint32_t diagonal_frequency = 0;
  uint32_t row_frequency = 0;
  uint32_t column_frequency = 0;
  bool is_idempotent = false;

  auto operator<=>(const ElementProfile&) const = default;
};

IndexPeriod index_period(const CayleyTable& table, uint32_t element);

ElementProfile element_profile(const CayleyTable& table, uint32_t element);

//! Profiles of all elements at once; cheaper than n calls.
std::vector<ElementProfile> element_profiles(const CayleyTable& table,
                                             int threads = 1);

//! Isomorphism invariant of a whole table: the multisets of the per-element
//! statistics, kept sorted so equal tables-up-to-renaming compare equal.
struct TableProfile {
  uint32_t order = 0;
  std::vector<uint32_t> frequencies;
  std::vector<uint32_t> diagonal_frequencies;
  std::vector<uint32_t> row_frequencies;
  std::vector<uint32_t> column_frequencies;
  uint32_t idempotent_count = 0;
  std::vector<uint32_t> idempotent_frequencies;
  std::vector<ElementProfile> element_profiles;

  bool operator==(const TableProfile&) const = default;
};

TableProfile table_profile(const CayleyTable& table, int threads = 1);

//! Name of the first field on which the two profiles differ, in the order
//! the fields are declared, or "" when they are equal.
std::string first_profile_difference(const TableProfile& a, const TableProfile& b);

//! Deterministic multi-line description, suitable for terminal output.
std::string profile_report(const TableProfile& profile);

//! Which invariant grades the classes: embeddings preserve index-period
//! only, isomorphisms preserve the full element profile.
enum class PartitionMode { embedding, isomorphism };

//! Invariant value labelling one class; profile is engaged in isomorphism
//! mode only.
struct ClassKey {
  IndexPeriod index_period;
  std::optional<ElementProfile> profile;

  auto operator<=>(const ClassKey&) const = default;

  std::string to_string() const;
};

//! Source and target elements grouped by matching invariant values; the
//! candidate targets of a source element are exactly its class's targets.
struct ClassPartition {
  struct Class {
    ClassKey key;
    std::vector<uint32_t> source_elements;  // ascending
    std::vector<uint32_t> target_elements;  // ascending
  };

  PartitionMode mode = PartitionMode::embedding;
  std::vector<Class> classes;  // sorted by key
  //! Keys present in the target but not the source. Harmless for
  //! embeddings (those targets are simply never used); fatal for
  //! isomorphism (the caller never sees them: that is an infeasibility).
  std::vector<ClassKey> target_only_keys;
};

//! partition is engaged iff every source class has a large-enough matching
//! target class; otherwise infeasible_reason names the first violated key.
struct PartitionOutcome {
  std::optional<ClassPartition> partition;
  std::string infeasible_reason;
};

PartitionOutcome build_partition(const CayleyTable& source,
                                 const CayleyTable& target,
                                 PartitionMode mode,
                                 int threads = 1);

//! n * (n-1) * ... * (n-k+1), exact.
Bigint falling_factorial(uint64_t n, uint64_t k);

//! Number of injective class-respecting maps: over the classes, the product
//! of |targets|! / (|targets| - |sources|)!. Exact, hence arbitrary precision.
Bigint search_space_size(const ClassPartition& partition);

}  // namespace sgembed

#endif  // SGEMBED_INVARIANTS_HPP_
