#ifndef SGEMBED_FAMILIES_HPP_
#define SGEMBED_FAMILIES_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "sgembed/closure.hpp"
#include "sgembed/invariants.hpp"

namespace sgembed {

//! The standard monoid families, by their usual symbols:
//! T_d  all transformations of d points          (order d^d)
//! S_d  permutations                             (order d!)
//! PT_d partial transformations                  (order (d+1)^d)
//! I_d  partial injections                       (order sum_k C(d,k)^2 k!)
//! P_d  bipartitions of 2d points                (order Bell(2d))
//! B(rauer)_d  bipartitions, all blocks size 2   (order (2d-1)!!)
//! TL_d Brauer diagrams that are planar          (order Catalan(d))
//! I*_d bipartitions whose blocks meet both rows (order sum_k S(d,k)^2 k!)
//! B_d  binary relations on d points             (order 2^(d^2))
enum class Family {
  full_transformation,
  symmetric_group,
  partial_transformation,
  symmetric_inverse,
  partition,
  brauer,
  temperley_lieb,
  dual_symmetric_inverse,
  binary_relation,
};

//! Command-line names: T S PT I P Brauer TL Istar BinRel.
std::optional<Family> family_from_name(std::string_view name);
std::string_view family_name(Family family);

ElementKind family_kind(Family family);

//! Exact order of the family monoid at the given degree.
Bigint family_order(Family family, uint32_t degree);

//! The full family monoid, elements sorted by canonical encoding, built by
//! direct enumeration. Throws GrowthCapError if the order exceeds cap.
GeneratedTable build_family(Family family,
                            uint32_t degree,
                            std::size_t cap = default_element_cap,
                            int threads = 1);

//! All distinct index-permutations of the table induced by conjugating
//! every element by a degree-d permutation (the identity is always among
//! them). Throws UnsupportedActionError if some conjugate lies outside the
//! table.
std::vector<std::vector<uint32_t>> conjugation_action(const GeneratedTable& table);

//! Index map of the canonical involutive anti-automorphism when the element
//! kind carries one (bipartition vertical flip, relation transpose) and the
//! table is closed under it; nullopt otherwise. Transformations have no
//! canonical duality.
std::optional<std::vector<uint32_t>> duality_action(const GeneratedTable& table);

}  // namespace sgembed

#endif  // SGEMBED_FAMILIES_HPP_
