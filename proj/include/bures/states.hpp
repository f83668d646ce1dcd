#ifndef BURES_STATES_HPP
#define BURES_STATES_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <string_view>
#include <utility>

#include "bures/generator_basis.hpp"
#include "bures/matcore.hpp"

namespace bures {

struct StateTolerance {
  double hermiticity = matcore::default_hermiticity_tol;
  double trace = 1e-12;
  double psd = 1e-12;
};

/// Hermitian, positive-semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  static DensityMatrix from(const ComplexMatrix& m, StateTolerance tol = {}) {
    auto h = HermitianMatrix::from(m, tol.hermiticity);
    const double trace = h.trace();
    if (!(std::abs(trace - 1.0) <= tol.trace)) {
      std::ostringstream os;
      os << "not a state: trace " << trace << " deviates from 1 by " << std::abs(trace - 1.0);
      throw validation_error(os.str(), std::abs(trace - 1.0));
    }
    const double lowest = matcore::smallest_eigenvalue(h);
    if (lowest < -tol.psd) {
      std::ostringstream os;
      os << "not a state: most negative eigenvalue " << lowest;
      throw validation_error(os.str(), -lowest);
    }
    return DensityMatrix(std::move(h));
  }

  static DensityMatrix maximally_mixed(Eigen::Index n) {
    return DensityMatrix(HermitianMatrix::symmetrize(ComplexMatrix::Identity(n, n) / static_cast<double>(n)));
  }

  /// |psi><psi| for a unit vector psi (normalized here).
  static DensityMatrix pure(const ComplexVector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw validation_error("pure state from a zero vector");
    const ComplexVector u = psi / norm;
    return DensityMatrix(HermitianMatrix::symmetrize(u * u.adjoint()));
  }

  const HermitianMatrix& hermitian() const noexcept { return h_; }
  const ComplexMatrix& matrix() const noexcept { return h_.matrix(); }
  Eigen::Index dim() const noexcept { return h_.dim(); }
  double purity() const { return (matrix() * matrix()).trace().real(); }

 private:
  explicit DensityMatrix(HermitianMatrix h) : h_(std::move(h)) {}
  HermitianMatrix h_;
};

inline void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw validation_error(os.str());
  }
}

/// Real coefficients x of rho = (I + x . sigma) / N.
class BlochVector {
 public:
  BlochVector() = default;

  BlochVector(int n, RealVector coords) : n_(n), coords_(std::move(coords)) {
    const auto expected = static_cast<Eigen::Index>(n) * n - 1;
    if (n < 2 || coords_.size() != expected) {
      std::ostringstream os;
      os << "Bloch vector for N = " << n << " needs " << expected << " coordinates, got " << coords_.size();
      throw validation_error(os.str());
    }
    const double excess = coords_.squaredNorm() - pure_radius_squared(n);
    if (excess > 1e-10) {
      std::ostringstream os;
      os << "Bloch vector exceeds the pure-state radius: |x|^2 - N(N-1)/2 = " << excess;
      throw validation_error(os.str(), excess);
    }
  }

  /// |x|^2 of every pure state: N (N - 1) / 2.
  static double pure_radius_squared(int n) { return 0.5 * n * (n - 1.0); }

  int dim() const noexcept { return n_; }
  const RealVector& coords() const noexcept { return coords_; }

 private:
  int n_ = 0;
  RealVector coords_;
};

/// Most negative eigenvalue admitted when building a state from Bloch coordinates.
inline constexpr double bloch_psd_admission = 1e-10;

inline DensityMatrix density_from_bloch(const BlochVector& x, const GeneratorBasis& basis) {
  if (x.dim() != basis.dim()) throw validation_error("Bloch vector and generator basis dimensions differ");
  const double n = basis.dim();
  ComplexMatrix rho = (ComplexMatrix::Identity(basis.dim(), basis.dim()) + basis.combine(x.coords())) / n;
  return DensityMatrix::from(rho, {.trace = 1e-12, .psd = bloch_psd_admission});
}

/// x_i = (N / 2) Tr[rho s_i].
inline BlochVector bloch_from_density(const DensityMatrix& rho, const GeneratorBasis& basis) {
  if (rho.dim() != basis.dim()) throw validation_error("state and generator basis dimensions differ");
  const RealVector x = basis.traces_against(rho.matrix()).real() * (0.5 * basis.dim());
  return BlochVector(basis.dim(), x);
}

// ---------------------------------------------------------------------------
// Three-qubit Werner family. Basis ordering |abc> -> 4a + 2b + c.

enum class werner_kind { ghz, w };

inline ComplexVector ghz_vector() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v;
}

inline ComplexVector w_vector() {
  ComplexVector v = ComplexVector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return v;
}

inline ComplexVector werner_vector(werner_kind kind) {
  return kind == werner_kind::ghz ? ghz_vector() : w_vector();
}

inline std::string_view to_string(werner_kind kind) { return kind == werner_kind::ghz ? "ghz" : "w"; }

/// (1 - p) I / 8 + p |Phi><Phi|.
inline DensityMatrix werner(werner_kind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "Werner mixing probability " << p << " outside [0, 1]";
    throw validation_error(os.str());
  }
  const ComplexVector phi = werner_vector(kind);
  ComplexMatrix rho = ComplexMatrix::Identity(8, 8) * ((1.0 - p) / 8.0) + p * (phi * phi.adjoint());
  return DensityMatrix::from(rho);
}

// ---------------------------------------------------------------------------
// Purifications in state-matrix form: A with A A^dagger = rho.

class Purification {
 public:
  Purification() = default;

  const ComplexMatrix& matrix() const noexcept { return a_; }
  const DensityMatrix& target() const noexcept { return target_; }
  Eigen::Index dim() const noexcept { return a_.rows(); }

 private:
  friend Purification make_purification(ComplexMatrix a, DensityMatrix target);
  Purification(ComplexMatrix a, DensityMatrix target) : a_(std::move(a)), target_(std::move(target)) {}

  ComplexMatrix a_;
  DensityMatrix target_;
};

inline Purification make_purification(ComplexMatrix a, DensityMatrix target) {
  const double residual = matcore::max_abs(a * a.adjoint() - target.matrix());
  if (residual > 1e-10) {
    std::ostringstream os;
    os << "purification does not project to its target: max |A A^dagger - rho| = " << residual;
    throw validation_error(os.str(), residual);
  }
  return Purification(std::move(a), std::move(target));
}

inline constexpr double default_unitarity_tol = 1e-10;

inline double unitarity_residual(const ComplexMatrix& u) {
  return matcore::max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

/// pi(A) = A A^dagger, validated as a state. Rejects Tr[A A^dagger] != 1.
inline DensityMatrix project(const ComplexMatrix& a, double trace_tol = 1e-10) {
  matcore::require_square(a, "project");
  const ComplexMatrix rho = a * a.adjoint();
  const double trace = rho.trace().real();
  if (!(std::abs(trace - 1.0) <= trace_tol)) {
    std::ostringstream os;
    os << "not normalized: Tr[A A^dagger] = " << trace;
    throw validation_error(os.str(), std::abs(trace - 1.0));
  }
  return DensityMatrix::from(matcore::symmetrized(rho), {.trace = trace_tol, .psd = 1e-12});
}

/// A = sqrt(rho) U, with U = I when no gauge is given.
inline Purification canonical_purification(const DensityMatrix& rho,
                                           const std::optional<ComplexMatrix>& gauge = std::nullopt) {
  const auto sd = matcore::spectral_decompose(rho.hermitian());
  ComplexMatrix a = matcore::psd_sqrtm(sd, matcore::default_clamp(sd)).matrix();
  if (gauge) {
    if (gauge->rows() != rho.dim() || gauge->cols() != rho.dim()) {
      throw validation_error("gauge unitary has the wrong dimension");
    }
    const double residual = unitarity_residual(*gauge);
    if (residual > default_unitarity_tol) {
      std::ostringstream os;
      os << "gauge is not unitary: max |U^dagger U - I| = " << residual;
      throw validation_error(os.str(), residual);
    }
    a = a * *gauge;
  }
  return make_purification(std::move(a), rho);
}

/// Row-major vectorization |A> = sum_ij A_ij |i>|j>, i.e. sum_k sqrt(l_k) |k> (x) U^T |k>
/// for A = sqrt(rho) U.
inline ComplexVector purification_vector(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  ComplexVector v(n * a.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

/// Partial trace of |v><v| over the second factor (dimension n2).
inline ComplexMatrix reduced_state(const ComplexVector& v, Eigen::Index n1, Eigen::Index n2) {
  if (v.size() != n1 * n2) throw validation_error("vector length does not match n1 * n2");
  ComplexMatrix out = ComplexMatrix::Zero(n1, n1);
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index k = 0; k < n1; ++k)
      for (Eigen::Index j = 0; j < n2; ++j) out(i, k) += v(i * n2 + j) * std::conj(v(k * n2 + j));
  return out;
}

}  // namespace bures

#endif  // BURES_STATES_HPP
