#include <gtest/gtest.h>

#include <cmath>

#include "bures/bures.hpp"
#include "support.hpp"

using namespace bures;
using testing_support::diag;

TEST(DensityMatrix, RejectsWrongTrace) {
  try {
    DensityMatrix::from(diag({0.5, 0.6}));
    FAIL() << "expected validation_error";
  } catch (const validation_error& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
}

TEST(DensityMatrix, RejectsNegativeEigenvalue) {
  try {
    DensityMatrix::from(diag({1.1, -0.1}));
    FAIL() << "expected validation_error";
  } catch (const validation_error& e) {
    EXPECT_NE(std::string(e.what()).find("eigenvalue"), std::string::npos);
  }
}

TEST(DensityMatrix, RejectsNonHermitian) {
  ComplexMatrix m = diag({0.5, 0.5});
  m(0, 1) = 0.2;
  EXPECT_THROW(DensityMatrix::from(m), validation_error);
}

TEST(DensityMatrix, PureAndMixedPurity) {
  EXPECT_DOUBLE_EQ(DensityMatrix::maximally_mixed(4).purity(), 0.25);
  ComplexVector psi(3);
  psi << 1.0, complex(0.0, 1.0), 1.0;
  EXPECT_NEAR(DensityMatrix::pure(psi / std::sqrt(3.0)).purity(), 1.0, 1e-15);
}

TEST(Bloch, ZeroVectorIsMaximallyMixed) {
  for (int n : {2, 3, 5}) {
    const auto basis = generator_basis(n);
    const auto rho = density_from_bloch(BlochVector(n, RealVector::Zero(n * n - 1)), basis);
    EXPECT_LE(matcore::max_abs(rho.matrix() - DensityMatrix::maximally_mixed(n).matrix()), 1e-15);
  }
}

TEST(Bloch, NorthPoleIsKetZero) {
  const auto basis = generator_basis(2);
  RealVector x(3);
  x << 0.0, 0.0, 1.0;
  const auto rho = density_from_bloch(BlochVector(2, x), basis);
  EXPECT_LE(matcore::max_abs(rho.matrix() - diag({1.0, 0.0})), 1e-15);
}

TEST(Bloch, PureStatesSitOnTheSphere) {
  Rng rng(21);
  for (int n : {2, 3, 4, 6}) {
    const auto basis = generator_basis(n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto rho = DensityMatrix::pure(random_unit_vector(n, rng));
      const auto x = bloch_from_density(rho, basis);
      EXPECT_NEAR(x.coords().squaredNorm(), BlochVector::pure_radius_squared(n), 1e-12);
      EXPECT_LE(matcore::max_abs(density_from_bloch(x, basis).matrix() - rho.matrix()), 1e-13);
    }
  }
}

TEST(Bloch, RejectsWrongLengthAndOutsideBall) {
  EXPECT_THROW(BlochVector(3, RealVector::Zero(3)), validation_error);
  RealVector far = RealVector::Zero(3);
  far(0) = 1.5;
  EXPECT_THROW(BlochVector(2, far), validation_error);
}

TEST(Bloch, RejectsInsideBallButNotPositive) {
  // Along the last diagonal generator of N = 3, |x|^2 = N(N-1)/2 is pure in one
  // direction and indefinite in the other.
  const auto basis = generator_basis(3);
  int rejected = 0;
  for (double sign : {1.0, -1.0}) {
    RealVector x = RealVector::Zero(8);
    x(7) = sign * std::sqrt(3.0);
    try {
      density_from_bloch(BlochVector(3, x), basis);
    } catch (const validation_error&) {
      ++rejected;
    }
  }
  EXPECT_EQ(rejected, 1);
}

TEST(Werner, ZeroIsMaximallyMixed) {
  for (auto kind : {werner_kind::ghz, werner_kind::w}) {
    EXPECT_LE(matcore::max_abs(werner(kind, 0.0).matrix() - DensityMatrix::maximally_mixed(8).matrix()), 0.0);
  }
}

TEST(Werner, SpectrumIsOneLargeAndSevenSmall) {
  for (int k = 1; k <= 9; ++k) {
    const double p = 0.1 * k;
    for (auto kind : {werner_kind::ghz, werner_kind::w}) {
      const auto sd = matcore::spectral_decompose(werner(kind, p).hermitian());
      for (int i = 0; i < 7; ++i) EXPECT_NEAR(sd.eigenvalues(i), (1 - p) / 8, 1e-12);
      EXPECT_NEAR(sd.eigenvalues(7), (1 + 7 * p) / 8, 1e-12);
    }
  }
}

TEST(Werner, OneIsTheProjector) {
  const ComplexVector ghz = ghz_vector();
  EXPECT_LE(matcore::max_abs(werner(werner_kind::ghz, 1.0).matrix() - ghz * ghz.adjoint()), 1e-16);
  EXPECT_NEAR(std::abs(ghz_vector().dot(w_vector())), 0.0, 0.0);
}

TEST(Werner, RejectsOutOfRange) {
  EXPECT_THROW(werner(werner_kind::w, -0.1), validation_error);
  EXPECT_THROW(werner(werner_kind::w, 1.1), validation_error);
}

TEST(Purification, MaximallyMixedRootIsScaledIdentity) {
  const auto a = canonical_purification(DensityMatrix::maximally_mixed(2));
  EXPECT_LE(matcore::max_abs(a.matrix() - ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)), 1e-15);
}

TEST(Purification, GaugeDoesNotChangeProjection) {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density(3, rng);
    const ComplexMatrix u = random_unitary(3, rng);
    const auto a = canonical_purification(rho, u);
    EXPECT_LE(matcore::max_abs(project(a.matrix()).matrix() - rho.matrix()), 1e-13);
    EXPECT_LE(matcore::max_abs(project(a.matrix()).matrix() -
                               project(canonical_purification(rho).matrix()).matrix()),
              1e-13);
  }
}

TEST(Purification, QubitRootIsHermitianSquareRoot) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density(2, rng);
    const auto a = canonical_purification(rho).matrix();
    EXPECT_LE(matcore::max_abs(a - a.adjoint()), 1e-15);
    EXPECT_LE(matcore::max_abs(a * a - rho.matrix()), 1e-14);
  }
}

TEST(Purification, RejectsNonUnitaryGauge) {
  EXPECT_THROW(canonical_purification(DensityMatrix::maximally_mixed(2), 2.0 * ComplexMatrix::Identity(2, 2)),
               validation_error);
}

TEST(Purification, MismatchedTargetRejected) {
  EXPECT_THROW(make_purification(ComplexMatrix::Identity(2, 2), DensityMatrix::maximally_mixed(2)), validation_error);
}

TEST(Project, IdentityOverRootN) {
  EXPECT_LE(matcore::max_abs(project(ComplexMatrix::Identity(4, 4) / 2.0).matrix() -
                             DensityMatrix::maximally_mixed(4).matrix()),
            1e-16);
}

TEST(Project, RejectsUnnormalized) { EXPECT_THROW(project(ComplexMatrix::Identity(2, 2)), validation_error); }

TEST(Project, PartialTraceOfVectorizedPurification) {
  Rng rng(12);
  const auto rho = random_density(3, rng);
  const auto a = canonical_purification(rho, random_unitary(3, rng));
  const ComplexVector v = purification_vector(a.matrix());
  EXPECT_NEAR(v.norm(), 1.0, 1e-14);
  EXPECT_LE(matcore::max_abs(reduced_state(v, 3, 3) - rho.matrix()), 1e-14);
}
