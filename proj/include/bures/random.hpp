#ifndef BURES_RANDOM_HPP
#define BURES_RANDOM_HPP

// Seeded random states and unitaries for trials and property tests.

#include <random>

#include "bures/matcore.hpp"
#include "bures/states.hpp"

namespace bures {

using Rng = std::mt19937_64;

inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = complex(normal(rng), normal(rng));
  return g;
}

/// Hilbert-Schmidt distributed full-rank state G G^dagger / Tr.
inline DensityMatrix random_density(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from(matcore::symmetrized(rho));
}

/// Full-rank state with every eigenvalue at least `floor` (floor < 1/n).
inline DensityMatrix random_density_bounded(Eigen::Index n, double floor, Rng& rng) {
  const auto rho = random_density(n, rng);
  ComplexMatrix mixed = (1.0 - n * floor) * rho.matrix() + floor * ComplexMatrix::Identity(n, n);
  return DensityMatrix::from(matcore::symmetrized(mixed));
}

inline ComplexVector random_unit_vector(Eigen::Index n, Rng& rng) {
  ComplexVector v = ginibre(n, 1, rng).col(0);
  return v / v.norm();
}

/// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal removed.
inline ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(n, n, rng));
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline HermitianMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  return HermitianMatrix::symmetrize(ginibre(n, n, rng));
}

/// Hermitian with zero trace.
inline HermitianMatrix random_traceless_hermitian(Eigen::Index n, Rng& rng) {
  ComplexMatrix h = random_hermitian(n, rng).matrix();
  h -= (h.trace().real() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  return HermitianMatrix::symmetrize(h);
}

}  // namespace bures

#endif  // BURES_RANDOM_HPP
