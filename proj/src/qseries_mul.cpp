#include "svoa/qseries_mul.hpp"

#include <algorithm>

#include "svoa/qseries.hpp"

namespace svoa::kernel {

namespace {
// Skip lists of nonzero positions pay off because character series are often
// sparse on the 1/48 grid (supports lie in single residue classes mod 24).
std::vector<size_t> nonzero_positions(const std::vector<Scalar>& v, size_t limit) {
  std::vector<size_t> pos;
  for (size_t i = 0; i < v.size() && i < limit; ++i)
    if (!v[i].is_zero()) pos.push_back(i);
  return pos;
}
}  // namespace

std::vector<Scalar> cauchy_serial(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                                  size_t n_out) {
  std::vector<Scalar> c(n_out);
  auto pa = nonzero_positions(a, n_out);
  for (size_t i : pa) {
    const Scalar& ai = a[i];
    size_t jmax = std::min(b.size(), n_out - i);
    for (size_t j = 0; j < jmax; ++j) {
      if (!b[j].is_zero()) c[i + j] += ai * b[j];
    }
  }
  return c;
}

std::vector<Scalar> cauchy_parallel(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                                    size_t n_out) {
#ifndef SVOA_HAVE_OPENMP
  return cauchy_serial(a, b, n_out);
#else
  std::vector<Scalar> c(n_out);
  auto pa = nonzero_positions(a, n_out);
  const long n = static_cast<long>(n_out);
#pragma omp parallel for schedule(dynamic, 16)
  for (long t = 0; t < n; ++t) {
    Scalar acc;
    for (size_t i : pa) {
      if (static_cast<long>(i) > t) break;
      size_t j = static_cast<size_t>(t) - i;
      if (j < b.size() && !b[j].is_zero()) acc += a[i] * b[j];
    }
    c[static_cast<size_t>(t)] = std::move(acc);
  }
  return c;
#endif
}

}  // namespace svoa::kernel
