#ifndef SGEMBED_SEARCH_HPP_
#define SGEMBED_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgembed/closure.hpp"
#include "sgembed/families.hpp"
#include "sgembed/invariants.hpp"

namespace sgembed {

inline constexpr std::size_t all_solutions = static_cast<std::size_t>(-1);

//! Prefix assignment of source elements to target elements: the backtrack
//! search state.
struct PartialMap {
  static constexpr uint32_t npos = static_cast<uint32_t>(-1);

  std::vector<uint32_t> assignment;  // per source element; npos = unassigned
  std::vector<uint8_t> used;         // per target element
  std::vector<uint32_t> assigned;    // source elements in assignment order
};

enum class DedupMode { none, conjugation, automorphism };

//! Complete injective homomorphisms, each independently re-verified, with
//! maps sorted lexicographically. Under a dedup mode, one map is kept per
//! orbit of its image.
struct SolutionSet {
  std::vector<std::vector<uint32_t>> maps;    // maps[s][i] = target of source i
  std::vector<std::vector<uint32_t>> images;  // sorted image index sets, aligned
  DedupMode dedup_mode = DedupMode::none;

  std::size_t size() const noexcept {
    return maps.size();
  }
  bool empty() const noexcept {
    return maps.empty();
  }
};

struct SearchOptions {
  std::size_t limit = all_solutions;
  bool use_partition = true;  // false: single class, for A/B testing
  int threads = 1;            // parallel root branches; limit = all only
};

//! Observability data for one search run: the theoretical class-respecting
//! search-space size next to what was actually visited.
struct SearchStats {
  Bigint search_space;  // product of falling factorials over the classes
  std::size_t class_count = 0;
  uint64_t nodes = 0;   // candidate assignments consistency-checked
  uint64_t leaves = 0;  // checks at the deepest level
  std::size_t raw_solutions = 0;
  bool feasible = true;
  std::string infeasible_reason;
};

//! Up to `limit` injective homomorphisms from source into target, by
//! partitioned backtrack over the index-period classes. With limit =
//! all_solutions the list is exhaustive. Deterministic: candidates are
//! tried in ascending target order, and the parallel mode merges branch
//! results in that same order.
SolutionSet find_embeddings(const CayleyTable& source,
                            const CayleyTable& target,
                            const SearchOptions& options = {},
                            SearchStats* stats = nullptr);

//! First isomorphism between the tables, or nullopt. Order and
//! table-profile mismatches short-circuit before any search.
std::optional<std::vector<uint32_t>> find_isomorphism(const CayleyTable& a,
                                                      const CayleyTable& b,
                                                      const SearchOptions& options = {},
                                                      SearchStats* stats = nullptr);

//! All isomorphisms of the table onto itself. The result is verified to be
//! a group (contains the identity, closed under composition and inverse).
SolutionSet automorphism_group(const CayleyTable& table,
                               const SearchOptions& options = {},
                               SearchStats* stats = nullptr);

//! Independent verifier: is map an injective homomorphism source -> target?
bool is_embedding(const CayleyTable& source,
                  const CayleyTable& target,
                  std::span<const uint32_t> map);

//! Keeps one representative map per orbit of solution images under the
//! degree-d conjugation action on the target's elements. The representative
//! image is the orbit member whose sorted element-encoding list is
//! lexicographically minimal. Requires element payloads.
SolutionSet dedup_images_conjugation(const SolutionSet& solutions,
                                     const GeneratedTable& target);

//! Same, under the automorphism group of the target table itself.
SolutionSet dedup_images_automorphism(const SolutionSet& solutions,
                                      const CayleyTable& target);

//! Smallest degree n <= max_degree with source embeddable into the family
//! at degree n. `progress`, when given, is called after each degree.
struct MinimalDegreeResult {
  std::optional<uint32_t> degree;
  uint32_t degrees_scanned = 0;
};

MinimalDegreeResult minimal_degree(
    const CayleyTable& source,
    Family family,
    uint32_t max_degree,
    std::size_t cap = default_element_cap,
    int threads = 1,
    void (*progress)(uint32_t degree, bool embeds, void* arg) = nullptr,
    void* progress_arg = nullptr);

//! One way of embedding the source into a 2-generated subsemigroup: the
//! (lexicographically first) generating pair, the subsemigroup it closes
//! to, and the embeddings into it, with image-level conjugation dedup.
struct TwoGenWay {
  std::pair<uint32_t, uint32_t> generators;  // 0-based target indices
  std::vector<uint32_t> closure;             // ascending target indices
  SolutionSet embeddings;                    // maps use whole-target indices
};

struct TwoGenStats {
  std::size_t pairs = 0;
  std::size_t distinct_closures = 0;  // as sets, strictly larger than the source
  std::size_t closure_classes = 0;    // after conjugation/duality dedup
  bool conjugation_available = false;
  bool duality_available = false;
};

//! Closes every unordered pair of target elements and keeps the closures
//! strictly larger than the source (a copy of the source can only ever be a
//! proper subset of a larger subsemigroup; a closure of equal size is the
//! source itself, not an overstructure). Equal closure sets are merged
//! under their lexicographically least pair; the survivors are deduped up
//! to conjugation, extended by the canonical duality of the element kind
//! when the table is closed under one, and each remaining class is
//! searched. Returned ways admit at least one embedding each; images are
//! deduped under the same group.
std::vector<TwoGenWay> two_generated_embeddings(const CayleyTable& source,
                                                const GeneratedTable& target,
                                                int threads = 1,
                                                TwoGenStats* stats = nullptr);

//! Overload for an abstract target with no element payloads: identical
//! pipeline, but no conjugation or duality dedup anywhere.
std::vector<TwoGenWay> two_generated_embeddings(const CayleyTable& source,
                                                const CayleyTable& target,
                                                int threads = 1,
                                                TwoGenStats* stats = nullptr);

}  // namespace sgembed

#endif  // SGEMBED_SEARCH_HPP_
