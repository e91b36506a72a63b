//! \file parallel.hpp
//  \brief OpenMP worker-count control and the parallel loop used by all kernels.
//
// Every hot loop in the library runs through par_for. With max_threads()==1
// (or CURLMESH_THREADS=1) the loop body executes serially in index order,
// which is the reference path the tests compare against. Reductions for
// diagnostics are always done serially over precomputed per-entity arrays so
// results are bit-identical for a given configuration.

#ifndef CURLMESH_PARALLEL_HPP_
#define CURLMESH_PARALLEL_HPP_

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace curlmesh {

int max_threads();
void set_max_threads(int n);  // n<=0 restores the hardware default

template <typename F>
inline void par_for(std::int64_t n, F&& body) {
#ifdef _OPENMP
  if (max_threads() > 1) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace curlmesh

#endif  // CURLMESH_PARALLEL_HPP_
