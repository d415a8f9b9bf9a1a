// include/svoa/qseries_mul.hpp — Cauchy-product kernels for QSeries.
#pragma once

#include <vector>

#include "svoa/scalar.hpp"

namespace svoa::kernel {

// Dense Cauchy product c[t] = sum_{i+j=t} a[i]*b[j], truncated to n_out
// output slots. The serial kernel is the reference; the parallel kernel
// distributes output slots across OpenMP threads (each slot is written by
// exactly one thread and GMP values are thread-safe as distinct objects).
// QSeries::operator* picks the parallel kernel for large jobs and tests
// cross-check the two on randomized inputs.
std::vector<Scalar> cauchy_serial(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                                  size_t n_out);
std::vector<Scalar> cauchy_parallel(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                                    size_t n_out);

}  // namespace svoa::kernel
