#ifndef BURES_MATCORE_HPP
#define BURES_MATCORE_HPP

// Dense complex matrix foundation: Hermitian spectral decomposition, spectral
// matrix functions and the positive polar factor |A| = sqrt(A A^dagger).
//
// Tolerance policy
//   * Hermiticity: max |H_ij - conj(H_ji)| <= tol * max(1, max |H_ij|);
//     accepted inputs are replaced by (H + H^dagger) / 2.
//   * Eigenvalue clamp: |lambda| <= clamp is an exact zero before sqrt or
//     inversion. The default clamp is 1e-12 * max |lambda|.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "bures/errors.hpp"

namespace bures {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace matcore {

inline constexpr double default_hermiticity_tol = 1e-10;
inline constexpr double default_relative_clamp = 1e-12;

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_residual(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

inline ComplexMatrix symmetrized(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw validation_error(os.str());
  }
}

/// Square complex matrix that is Hermitian up to the construction tolerance.
/// The stored entries are exactly Hermitian (symmetrized on construction).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Validates hermiticity against `tol` (relative to max(1, max |H_ij|)).
  static HermitianMatrix from(const ComplexMatrix& m, double tol = default_hermiticity_tol) {
    require_square(m, "hermitian matrix");
    const double residual = hermiticity_residual(m);
    const double scale = std::max(1.0, max_abs(m));
    if (!(residual <= tol * scale)) {
      std::ostringstream os;
      os << "matrix is not Hermitian: max |H - H^dagger| = " << residual;
      throw validation_error(os.str(), residual);
    }
    return HermitianMatrix(symmetrized(m));
  }

  /// For results that are Hermitian by construction; symmetrizes away roundoff.
  static HermitianMatrix symmetrize(const ComplexMatrix& m) {
    require_square(m, "hermitian matrix");
    return HermitianMatrix(symmetrized(m));
  }

  static HermitianMatrix identity(Eigen::Index n) {
    return HermitianMatrix(ComplexMatrix::Identity(n, n));
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double trace() const { return m_.trace().real(); }

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Eigenvalues ascending; eigenvectors in the matching columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }

  double spectral_radius() const {
    return dim() == 0 ? 0.0 : std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(dim() - 1)));
  }

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<complex>().asDiagonal() * eigenvectors.adjoint();
  }
};

inline SpectralDecomposition spectral_decompose(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("Hermitian eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline SpectralDecomposition spectral_decompose(const ComplexMatrix& m,
                                                double tol = default_hermiticity_tol) {
  return spectral_decompose(HermitianMatrix::from(m, tol));
}

/// How a spectral function treats the eigenvalues it is handed.
enum class spectral_domain {
  real_line,    ///< f applied to every eigenvalue as is
  nonnegative,  ///< eigenvalues in [-clamp, 0) raised to 0; below -clamp rejected
  support,      ///< like nonnegative, but |lambda| <= clamp maps to 0 without calling f
};

inline double default_clamp(const SpectralDecomposition& sd) {
  return default_relative_clamp * sd.spectral_radius();
}

template <class F>
HermitianMatrix hermitian_function(const SpectralDecomposition& sd, F&& f, spectral_domain domain,
                                   std::optional<double> clamp = std::nullopt) {
  const double cut = clamp.value_or(default_clamp(sd));
  RealVector mapped(sd.dim());
  for (Eigen::Index i = 0; i < sd.dim(); ++i) {
    double lambda = sd.eigenvalues(i);
    if (domain != spectral_domain::real_line) {
      if (lambda < -cut) {
        std::ostringstream os;
        os << "matrix is not positive semidefinite: eigenvalue " << lambda << " below -" << cut;
        throw validation_error(os.str(), -lambda);
      }
      if (std::abs(lambda) <= cut) {
        lambda = 0.0;
        if (domain == spectral_domain::support) {
          mapped(i) = 0.0;
          continue;
        }
      }
    }
    mapped(i) = f(lambda);
  }
  return HermitianMatrix::symmetrize(sd.eigenvectors * mapped.cast<complex>().asDiagonal() *
                                     sd.eigenvectors.adjoint());
}

template <class F>
HermitianMatrix hermitian_function(const HermitianMatrix& h, F&& f, spectral_domain domain,
                                   std::optional<double> clamp = std::nullopt) {
  return hermitian_function(spectral_decompose(h), std::forward<F>(f), domain, clamp);
}

/// Principal (PSD) square root.
inline HermitianMatrix sqrtm(const SpectralDecomposition& sd, std::optional<double> clamp = std::nullopt) {
  return hermitian_function(sd, [](double x) { return std::sqrt(x); }, spectral_domain::nonnegative, clamp);
}

inline HermitianMatrix sqrtm(const HermitianMatrix& h, std::optional<double> clamp = std::nullopt) {
  return sqrtm(spectral_decompose(h), clamp);
}

/// Pseudo-inverse square root: inverted on the support only.
inline HermitianMatrix inv_sqrtm(const SpectralDecomposition& sd, std::optional<double> clamp = std::nullopt) {
  return hermitian_function(sd, [](double x) { return 1.0 / std::sqrt(x); }, spectral_domain::support, clamp);
}

inline HermitianMatrix inv_sqrtm(const HermitianMatrix& h, std::optional<double> clamp = std::nullopt) {
  return inv_sqrtm(spectral_decompose(h), clamp);
}

// Variants for operands already known to be PSD (validated states, products
// such as rho1^{1/2} rho2 rho1^{1/2}): every eigenvalue <= clamp, including
// negative roundoff, is an exact zero.

inline HermitianMatrix psd_sqrtm(const SpectralDecomposition& sd, double clamp) {
  return hermitian_function(
      sd, [clamp](double x) { return x <= clamp ? 0.0 : std::sqrt(x); }, spectral_domain::real_line);
}

inline HermitianMatrix psd_inv_sqrtm(const SpectralDecomposition& sd, double clamp) {
  return hermitian_function(
      sd, [clamp](double x) { return x <= clamp ? 0.0 : 1.0 / std::sqrt(x); }, spectral_domain::real_line);
}

/// |A| = sqrt(A A^dagger).
inline HermitianMatrix polar_positive(const ComplexMatrix& a) {
  require_square(a, "polar_positive");
  const auto sd = spectral_decompose(HermitianMatrix::symmetrize(a * a.adjoint()));
  return psd_sqrtm(sd, default_clamp(sd));
}

inline double smallest_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace matcore

using matcore::HermitianMatrix;
using matcore::SpectralDecomposition;

}  // namespace bures

#endif  // BURES_MATCORE_HPP
