#ifndef BURES_SUN_HPP
#define BURES_SUN_HPP

// Tangent generators in the su(N) expansion
//
//   G = (g0 I + g . sigma) / N,   rho = (I + x . sigma) / N,
//
// where drho = G rho + rho G fixes (g0, g) through
//
//   (I + X(x) + D(x)) g = (N/2) xdot,   g0 = -(2/N) x . g,
//   X_kj = -(2/N) x_k x_j,   D_kj = sum_i x_i d_ikj.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "bures/generator_basis.hpp"
#include "bures/matcore.hpp"
#include "bures/states.hpp"

namespace bures {
namespace sun {

struct TangentGenerator {
  double g0 = 0.0;
  RealVector g;
  ComplexMatrix as_matrix;  ///< (g0 I + g . sigma) / N
  double reciprocal_condition = 1.0;  ///< of the linear system, 1 when no solve was needed
};

inline ComplexMatrix generator_matrix(double g0, const RealVector& g, const GeneratorBasis& basis) {
  const auto n = basis.dim();
  return (g0 * ComplexMatrix::Identity(n, n) + basis.combine(g)) / static_cast<double>(n);
}

/// D(x)_kj = sum_i x_i d_ikj.
inline RealMatrix d_contraction(const RealVector& x, const GeneratorBasis& basis) {
  basis.require_length(x);
  const auto m = static_cast<Eigen::Index>(basis.size());
  RealMatrix out = RealMatrix::Zero(m, m);
  const auto& d = basis.d();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (x(i) == 0.0) continue;
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index j = 0; j < m; ++j) out(k, j) += x(i) * d(i, k, j);
  }
  return out;
}

/// Dtilde(x)_kj = sum_i x_i f_ijk.
inline RealMatrix f_contraction(const RealVector& x, const GeneratorBasis& basis) {
  basis.require_length(x);
  const auto m = static_cast<Eigen::Index>(basis.size());
  RealMatrix out = RealMatrix::Zero(m, m);
  const auto& f = basis.f();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (x(i) == 0.0) continue;
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index j = 0; j < m; ++j) out(k, j) += x(i) * f(i, j, k);
  }
  return out;
}

/// I + X(x) + D(x).
inline RealMatrix tangent_system(const RealVector& x, const GeneratorBasis& basis) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  return RealMatrix::Identity(m, m) - (2.0 / basis.dim()) * x * x.transpose() + d_contraction(x, basis);
}

/// Systems with reciprocal condition below this are reported as singular.
inline constexpr double singular_rcond = 1e-13;

/// Solves drho = G rho + rho G for the Hermitian G at the state x with velocity xdot.
/// I + X + D is real symmetric, so its eigenvalues give both the solve and the
/// condition number min |mu| / max |mu|.
inline TangentGenerator solve_tangent_G(const BlochVector& x, const RealVector& xdot, const GeneratorBasis& basis) {
  if (x.dim() != basis.dim()) throw validation_error("Bloch vector and generator basis dimensions differ");
  basis.require_length(xdot);
  density_from_bloch(x, basis);  // rejects points outside the state body

  const Eigen::SelfAdjointEigenSolver<RealMatrix> eig(tangent_system(x.coords(), basis));
  const RealVector mu = eig.eigenvalues();
  const double largest = mu.cwiseAbs().maxCoeff();
  const double rcond = largest > 0.0 ? mu.cwiseAbs().minCoeff() / largest : 0.0;
  if (!(rcond > singular_rcond)) {
    std::ostringstream os;
    os << "tangent system I + X + D is singular at this state (rcond " << rcond << ")";
    throw numerical_error(os.str(), rcond);
  }
  const RealMatrix& v = eig.eigenvectors();
  TangentGenerator out;
  out.g = v * ((v.transpose() * (0.5 * basis.dim() * xdot)).array() / mu.array()).matrix();
  out.g0 = -(2.0 / basis.dim()) * x.coords().dot(out.g);
  out.as_matrix = generator_matrix(out.g0, out.g, basis);
  out.reciprocal_condition = rcond;
  return out;
}

/// max |G rho + rho G - drho| with drho = (xdot . sigma) / N.
inline double reconstruction_residual(const TangentGenerator& gen, const BlochVector& x, const RealVector& xdot,
                                      const GeneratorBasis& basis) {
  const auto n = static_cast<double>(basis.dim());
  const ComplexMatrix rho = (ComplexMatrix::Identity(basis.dim(), basis.dim()) + basis.combine(x.coords())) / n;
  const ComplexMatrix drho = basis.combine(xdot) / n;
  return matcore::max_abs(gen.as_matrix * rho + rho * gen.as_matrix - drho);
}

/// Unitary evolution: g = Dtilde(x) y, g0 = 0. The generator's flow
/// G rho + rho G is a commutator, so it preserves the spectrum of rho.
inline TangentGenerator unitary_tangent(const RealVector& y, const BlochVector& x, const GeneratorBasis& basis) {
  if (x.dim() != basis.dim()) throw validation_error("Bloch vector and generator basis dimensions differ");
  basis.require_length(y);
  TangentGenerator out;
  out.g = f_contraction(x.coords(), basis) * y;
  out.g0 = 0.0;
  out.as_matrix = generator_matrix(0.0, out.g, basis);
  return out;
}

struct MagneticField {
  RealVector b;
  RealVector parallel;       ///< (B . xhat) xhat
  RealVector perpendicular;  ///< B - parallel
};

/// Hamiltonian H = rho Y + Y rho with Y = (y0 I + y . sigma) / N and
/// y0 = -(2/N) x . y, so that (N^2 / 2) H = B . sigma with B = (I + X + D) y.
inline MagneticField hamiltonian_from_Y(const RealVector& y, const BlochVector& x, const GeneratorBasis& basis) {
  if (x.dim() != basis.dim()) throw validation_error("Bloch vector and generator basis dimensions differ");
  basis.require_length(y);
  MagneticField out;
  out.b = tangent_system(x.coords(), basis) * y;
  const double norm = x.coords().norm();
  if (norm == 0.0) {
    out.parallel = RealVector::Zero(out.b.size());
  } else {
    const RealVector xhat = x.coords() / norm;
    out.parallel = out.b.dot(xhat) * xhat;
  }
  out.perpendicular = out.b - out.parallel;
  return out;
}

/// Elementary symmetric polynomials S_1..S_N of the eigenvalues of rho from
/// power traces (Newton's identities), no diagonalization:
///   S_k = (1/k) sum_{j=1..k} (-1)^{j-1} S_{k-j} Tr[rho^j],  S_0 = 1.
inline RealVector characteristic_invariants(const DensityMatrix& rho) {
  const auto n = rho.dim();
  std::vector<double> power_traces(static_cast<std::size_t>(n) + 1, 0.0);
  ComplexMatrix power = rho.matrix();
  for (Eigen::Index j = 1; j <= n; ++j) {
    power_traces[static_cast<std::size_t>(j)] = power.trace().real();
    if (j < n) power = power * rho.matrix();
  }
  RealVector s(n + 1);
  s(0) = 1.0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (Eigen::Index j = 1; j <= k; ++j) {
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      acc += sign * s(k - j) * power_traces[static_cast<std::size_t>(j)];
    }
    s(k) = acc / static_cast<double>(k);
  }
  return s.tail(n);
}

struct AlgebraReport {
  double trace_orthogonality = 0.0;  ///< max |Tr[s_i s_j] - 2 delta_ij|
  double f_antisymmetry = 0.0;       ///< max deviation of f from total antisymmetry
  double d_symmetry = 0.0;           ///< max deviation of d from total symmetry
  double completeness = 0.0;         ///< max |sum_i (s_i)_AB (s_i)_CD - 2 d_AD d_BC + (2/N) d_AB d_CD|
  double closure = 0.0;              ///< max |s_i s_j - (2/N) delta_ij I - (d_ijk + i f_ijk) s_k|

  double worst() const {
    return std::max({trace_orthogonality, f_antisymmetry, d_symmetry, completeness, closure});
  }
};

/// Residuals of the defining identities of the generator basis.
inline AlgebraReport check_algebra(const GeneratorBasis& basis) {
  AlgebraReport r;
  const auto m = basis.size();
  const auto n = basis.dim();
  const auto& f = basis.f();
  const auto& d = basis.d();

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const complex tr = (basis.sigma(i) * basis.sigma(j)).trace();
      r.trace_orthogonality = std::max(r.trace_orthogonality, std::abs(tr - (i == j ? 2.0 : 0.0)));
      for (std::size_t k = 0; k < m; ++k) {
        const double fijk = f(i, j, k);
        const double dijk = d(i, j, k);
        r.f_antisymmetry = std::max({r.f_antisymmetry, std::abs(fijk + f(j, i, k)), std::abs(fijk + f(i, k, j)),
                                     std::abs(fijk - f(j, k, i))});
        r.d_symmetry = std::max({r.d_symmetry, std::abs(dijk - d(j, i, k)), std::abs(dijk - d(i, k, j)),
                                 std::abs(dijk - d(j, k, i))});
      }
    }
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          complex sum = 0.0;
          for (std::size_t i = 0; i < m; ++i) sum += basis.sigma(i)(a, b) * basis.sigma(i)(c, e);
          const double expected = 2.0 * (a == e && b == c) - (2.0 / n) * (a == b && c == e);
          r.completeness = std::max(r.completeness, std::abs(sum - expected));
        }

  const auto mi = static_cast<Eigen::Index>(m);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  RealVector dcoef(mi);
  RealVector fcoef(mi);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        dcoef(static_cast<Eigen::Index>(k)) = d(i, j, k);
        fcoef(static_cast<Eigen::Index>(k)) = f(i, j, k);
      }
      const ComplexMatrix expected =
          (i == j ? 2.0 / n : 0.0) * id + basis.combine(dcoef) + complex(0.0, 1.0) * basis.combine(fcoef);
      r.closure = std::max(r.closure, matcore::max_abs(basis.sigma(i) * basis.sigma(j) - expected));
    }
  }
  return r;
}

}  // namespace sun
}  // namespace bures

#endif  // BURES_SUN_HPP
