#pragma once

#include "fairsc/numerics.hpp"
#include "fairsc/types.hpp"

namespace fairsc::test {

inline Matrix random_symmetric(Rng& rng, Index n) {
  Matrix a = gaussian_matrix(rng, n, n);
  return Matrix(0.5 * (a + a.transpose()));
}

inline Matrix random_spd(Rng& rng, Index n, double shift = 0.5) {
  Matrix a = gaussian_matrix(rng, n, n);
  return Matrix(a * a.transpose() / static_cast<double>(n) +
                shift * Matrix::Identity(n, n));
}

inline Matrix random_orthonormal(Rng& rng, Index n, Index k) {
  const SvdResult svd = thin_svd(gaussian_matrix(rng, n, k));
  return svd.left;
}

}  // namespace fairsc::test
