#ifndef SGEMBED_CLOSURE_HPP_
#define SGEMBED_CLOSURE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sgembed/cayley_table.hpp"
#include "sgembed/elements.hpp"

namespace sgembed {

//! A CayleyTable together with the concrete elements realizing it, so that
//! composing elements i and j yields element table.product(i, j).
struct GeneratedTable {
  CayleyTable table;
  std::vector<Element> elements;  // aligned with table indices
  uint32_t degree = 0;
  std::unordered_map<std::string, uint32_t> index_of;  // encoding -> index

  //! Index of an element, or order() if it is not in the table.
  uint32_t find(const Element& e) const;
};

inline constexpr std::size_t default_element_cap = 100'000;

//! Closure of the generators under their composition law. Elements are
//! ordered by discovery: the generators first, in the given order with
//! duplicates dropped, then products breadth-first by word length, ties by
//! (left factor index, generator position).
GeneratedTable close_generators(const std::vector<Element>& generators,
                                std::size_t cap = default_element_cap,
                                int threads = 1);

//! Closure of a set of element indices inside an existing table; returns
//! the closed set in ascending order.
std::vector<uint32_t> close_indices(const CayleyTable& table,
                                    std::span<const uint32_t> seed);

//! Table induced on a closed index set (ascending); index i of the result
//! is element closed[i] of the original.
CayleyTable subtable(const CayleyTable& table, std::span<const uint32_t> closed);

//! Tabulates all pairwise products of a composition-closed element list.
CayleyTable table_from_elements(const std::vector<Element>& elements,
                                const std::unordered_map<std::string, uint32_t>& index_of,
                                int threads = 1);

//! Parsed generator file: `transformation <d>` | `bipartition <d>` |
//! `binary-relation <d>` on the first line, one generator per line after.
struct GeneratorFile {
  ElementKind kind = ElementKind::transformation;
  uint32_t degree = 0;
  std::vector<Element> generators;
};

GeneratorFile read_generators(std::string_view text);
GeneratorFile read_generators_file(const std::string& path);

}  // namespace sgembed

#endif  // SGEMBED_CLOSURE_HPP_
