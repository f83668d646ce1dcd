#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bures/bures.hpp"
#include "support.hpp"

using namespace bures;

namespace {

RealVector random_coeffs(Eigen::Index m, Rng& rng) {
  std::normal_distribution<double> normal;
  RealVector v(m);
  for (Eigen::Index i = 0; i < m; ++i) v(i) = normal(rng);
  return v;
}

BlochVector random_state_bloch(int n, const GeneratorBasis& basis, Rng& rng) {
  return bloch_from_density(random_density(n, rng), basis);
}

double levi_civita(int i, int j, int k) {
  return 0.5 * (i - j) * (j - k) * (k - i);
}

}  // namespace

TEST(GeneratorBasis, RejectsOutOfRangeDimension) {
  EXPECT_THROW(generator_basis(1), validation_error);
  EXPECT_THROW(generator_basis(17), validation_error);
}

TEST(GeneratorBasis, QubitIsPauliAlgebra) {
  const auto basis = generator_basis(2);
  const closedform::Vector3 e[3] = {closedform::Vector3::UnitX(), closedform::Vector3::UnitY(),
                                    closedform::Vector3::UnitZ()};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(matcore::max_abs(basis.sigma(i) - closedform::pauli_dot(e[i])), 0.0);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(basis.d()(i, j, k), 0.0);
        EXPECT_EQ(basis.f()(i, j, k), levi_civita(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)));
      }
  }
}

TEST(GeneratorBasis, TraceOrthonormality) {
  for (int n = 2; n <= 6; ++n) {
    const auto basis = generator_basis(n);
    ASSERT_EQ(basis.size(), static_cast<std::size_t>(n * n - 1));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_NEAR(std::abs(basis.sigma(i).trace()), 0.0, 1e-15);
      EXPECT_LE(matcore::hermiticity_residual(basis.sigma(i)), 0.0);
    }
    EXPECT_LE(sun::check_algebra(basis).trace_orthogonality, 1e-14);
  }
}

TEST(GeneratorBasis, QutritStructureConstants) {
  // Symmetric pairs first, then antisymmetric, then diagonal: sigma_1..sigma_8 are
  // s01, s02, s12, a01, a02, a12, h1, h2 (zero based 0..7).
  const auto basis = generator_basis(3);
  // d for the first generator with itself and the last diagonal one.
  EXPECT_NEAR(basis.d()(0, 0, 7), 1.0 / std::sqrt(3.0), 1e-15);
  // The first three generators s01, s02, s12 are all symmetric, so their f
  // vanishes; the f = 1 entry sits on (s01, a01, h1).
  EXPECT_EQ(basis.f()(0, 1, 2), 0.0);
  EXPECT_NEAR(basis.f()(0, 3, 6), 1.0, 1e-15);
  EXPECT_NEAR(basis.f()(0, 2, 4), 0.5, 1e-15);
  EXPECT_NEAR(basis.f()(1, 4, 7), std::sqrt(3.0) / 2, 1e-15);
}

TEST(GeneratorBasis, AlgebraIdentitiesUpToSixteen) {
  for (int n : {2, 3, 4, 5, 8}) {
    const auto r = sun::check_algebra(generator_basis(n));
    EXPECT_LE(r.worst(), 1e-12) << "N = " << n;
  }
}

TEST(GeneratorBasis, CombineAndTracesAreInverse) {
  Rng rng(1);
  const auto basis = generator_basis(4);
  const RealVector c = random_coeffs(15, rng);
  const Eigen::VectorXcd back = basis.traces_against(basis.combine(c)) / 2.0;
  EXPECT_LE((back.real() - c).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE(back.imag().cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SolveTangentG, MaximallyMixedQubit) {
  const auto basis = generator_basis(2);
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const RealVector xdot = random_coeffs(3, rng);
    const auto gen = sun::solve_tangent_G(BlochVector(2, RealVector::Zero(3)), xdot, basis);
    EXPECT_EQ(gen.g0, 0.0);
    EXPECT_LE((gen.g - xdot).cwiseAbs().maxCoeff(), 1e-15);
  }
  RealVector e1 = RealVector::Zero(3);
  e1(0) = 1.0;
  const BlochVector origin(2, RealVector::Zero(3));
  const auto gen = sun::solve_tangent_G(origin, e1, basis);
  EXPECT_LE(sun::reconstruction_residual(gen, origin, e1, basis), 1e-12);
}

TEST(SolveTangentG, ZeroVelocityGivesZeroGenerator) {
  Rng rng(3);
  const auto basis = generator_basis(3);
  const auto x = random_state_bloch(3, basis, rng);
  const auto gen = sun::solve_tangent_G(x, RealVector::Zero(8), basis);
  EXPECT_EQ(gen.g0, 0.0);
  EXPECT_EQ(gen.g.cwiseAbs().maxCoeff(), 0.0);
}

TEST(SolveTangentG, ReconstructsRandomVelocities) {
  Rng rng(4);
  for (int n : {2, 3, 4, 5}) {
    const auto basis = generator_basis(n);
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_state_bloch(n, basis, rng);
      const RealVector xdot = random_coeffs(n * n - 1, rng);
      const auto gen = sun::solve_tangent_G(x, xdot, basis);
      EXPECT_LE(sun::reconstruction_residual(gen, x, xdot, basis), 1e-9);
      EXPECT_LE(matcore::hermiticity_residual(gen.as_matrix), 0.0);
    }
  }
}

TEST(SolveTangentG, QubitClosedForm) {
  // N = 2: g0 = -x.xdot/(1 - x^2), g = xdot - g0 x.
  Rng rng(5);
  const auto basis = generator_basis(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto xv = testing_support::random_bloch(rng);
    const RealVector x = Eigen::Vector3d(xv);
    const RealVector xdot = random_coeffs(3, rng);
    const auto gen = sun::solve_tangent_G(BlochVector(2, x), xdot, basis);
    const double g0 = -x.dot(xdot) / (1.0 - x.squaredNorm());
    EXPECT_NEAR(gen.g0, g0, 1e-12);
    EXPECT_LE((gen.g - (xdot - g0 * x)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SolveTangentG, SingularAtPureStates) {
  const auto basis = generator_basis(2);
  RealVector x(3);
  x << 0.0, 0.0, 1.0;
  RealVector xdot(3);
  xdot << 1.0, 0.0, 0.0;
  EXPECT_THROW(sun::solve_tangent_G(BlochVector(2, x), xdot, basis), numerical_error);
}

TEST(SolveTangentG, RejectsNonState) {
  const auto basis = generator_basis(3);
  RealVector x = RealVector::Zero(8);
  x(7) = 1.5;
  x(0) = 1.2;
  EXPECT_THROW(sun::solve_tangent_G(BlochVector(3, x), RealVector::Zero(8), basis), validation_error);
}

TEST(UnitaryTangent, QubitIsCrossProduct) {
  Rng rng(6);
  const auto basis = generator_basis(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Vector3d x = testing_support::random_bloch(rng);
    const Eigen::Vector3d y(random_coeffs(3, rng));
    const auto gen = sun::unitary_tangent(y, BlochVector(2, x), basis);
    EXPECT_LE((Eigen::Vector3d(gen.g) - x.cross(y)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE(std::abs(x.dot(Eigen::Vector3d(gen.g))), 1e-15);
  }
}

TEST(UnitaryTangent, OrthogonalToStateAndZeroTrace) {
  Rng rng(7);
  for (int n : {2, 3, 4}) {
    const auto basis = generator_basis(n);
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_state_bloch(n, basis, rng);
      const RealVector y = random_coeffs(n * n - 1, rng);
      const auto gen = sun::unitary_tangent(y, x, basis);
      EXPECT_EQ(gen.g0, 0.0);
      EXPECT_LE(std::abs(x.coords().dot(gen.g)), 1e-12 * std::max(1.0, x.coords().norm() * gen.g.norm()));
    }
  }
}

TEST(UnitaryTangent, ZeroInputGivesZero) {
  const auto basis = generator_basis(3);
  Rng rng(8);
  const auto gen = sun::unitary_tangent(RealVector::Zero(8), random_state_bloch(3, basis, rng), basis);
  EXPECT_EQ(gen.g.cwiseAbs().maxCoeff(), 0.0);
}

TEST(UnitaryTangent, PreservesSpectrumToFirstOrder) {
  // drho = G rho + rho G is a commutator, so d/dt Tr[rho^k] = 0.
  Rng rng(9);
  const auto basis = generator_basis(3);
  const auto rho = random_density(3, rng);
  const auto x = bloch_from_density(rho, basis);
  const auto gen = sun::unitary_tangent(random_coeffs(8, rng), x, basis);
  const ComplexMatrix drho = gen.as_matrix * rho.matrix() + rho.matrix() * gen.as_matrix;
  EXPECT_NEAR(std::abs(drho.trace()), 0.0, 1e-14);
  EXPECT_NEAR(std::abs((rho.matrix() * drho).trace()), 0.0, 1e-14);
  EXPECT_NEAR(std::abs((rho.matrix() * rho.matrix() * drho).trace()), 0.0, 1e-14);
}

TEST(HamiltonianFromY, ZeroInput) {
  const auto basis = generator_basis(3);
  Rng rng(10);
  const auto field = sun::hamiltonian_from_Y(RealVector::Zero(8), random_state_bloch(3, basis, rng), basis);
  EXPECT_EQ(field.b.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(field.parallel.cwiseAbs().maxCoeff(), 0.0);
}

TEST(HamiltonianFromY, QubitPureStateHasNoParallelPart) {
  Rng rng(11);
  const auto basis = generator_basis(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Vector3d x = testing_support::random_bloch(rng).normalized();
    const auto field = sun::hamiltonian_from_Y(random_coeffs(3, rng), BlochVector(2, x), basis);
    EXPECT_LE(field.parallel.cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(HamiltonianFromY, MatchesDirectMatrixProduct) {
  Rng rng(12);
  const auto basis = generator_basis(3);
  const double n = 3.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_state_bloch(3, basis, rng);
    const RealVector y = random_coeffs(8, rng);
    const double y0 = -(2.0 / n) * x.coords().dot(y);
    const ComplexMatrix yy = sun::generator_matrix(y0, y, basis);
    const ComplexMatrix rho = density_from_bloch(x, basis).matrix();
    const ComplexMatrix h = rho * yy + yy * rho;
    const RealVector direct = (basis.traces_against(h).real() / 2.0) * (n * n / 2.0);
    const auto field = sun::hamiltonian_from_Y(y, x, basis);
    EXPECT_LE((field.b - direct).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(h.trace().real(), 0.0, 1e-14);
    EXPECT_LE((field.parallel + field.perpendicular - field.b).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(CharacteristicInvariants, MaximallyMixedBinomials) {
  for (int n : {2, 3, 5, 8}) {
    const auto s = sun::characteristic_invariants(DensityMatrix::maximally_mixed(n));
    double binom = 1.0;
    for (int k = 1; k <= n; ++k) {
      binom = binom * (n - k + 1) / k;
      EXPECT_NEAR(s(k - 1), binom / std::pow(n, k), 1e-14);
    }
  }
}

TEST(CharacteristicInvariants, QubitDeterminantAndUnitTrace) {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density(2, rng);
    const auto s = sun::characteristic_invariants(rho);
    EXPECT_NEAR(s(0), 1.0, 1e-14);
    EXPECT_NEAR(s(1), rho.matrix().determinant().real(), 1e-14);
  }
}

TEST(CharacteristicInvariants, MatchEigenvaluePolynomials) {
  Rng rng(14);
  for (int n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto rho = random_density(n, rng);
      const auto s = sun::characteristic_invariants(rho);
      const auto ev = matcore::spectral_decompose(rho.hermitian()).eigenvalues;
      RealVector e = RealVector::Zero(n + 1);
      e(0) = 1.0;
      for (int i = 0; i < n; ++i)
        for (int k = i + 1; k >= 1; --k) e(k) += ev(i) * e(k - 1);
      EXPECT_LE((s - e.tail(n)).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(s(0), 1.0, 1e-13);
    }
  }
}
