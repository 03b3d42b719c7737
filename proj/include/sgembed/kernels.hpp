#ifndef SGEMBED_KERNELS_HPP_
#define SGEMBED_KERNELS_HPP_

#include <vector>

#include "sgembed/cayley_table.hpp"
#include "sgembed/invariants.hpp"

//! Serial reference implementations and their OpenMP counterparts. The
//! serial versions are the specification: the parallel ones must return
//! bit-identical results and are tested and benchmarked against them.
namespace sgembed::kernels {

bool assoc_serial(const CayleyTable& table, AssocCounterexample* fail);

bool assoc_parallel(const CayleyTable& table, AssocCounterexample* fail, int threads);

std::vector<ElementProfile> profiles_serial(const CayleyTable& table);

std::vector<ElementProfile> profiles_parallel(const CayleyTable& table, int threads);

}  // namespace sgembed::kernels

#endif  // SGEMBED_KERNELS_HPP_
