#ifndef BURES_CLOSEDFORM_HPP
#define BURES_CLOSEDFORM_HPP

// Analytic geodesics for three families, each checked in the test suite
// against the generic construction in geodesy.hpp:
//
//   * maximally mixed state I/N to a pure state |psi><psi|;
//   * three-qubit Werner states built on |GHZ> and |W>, including the
//     orthogonal pure limit p = 1;
//   * arbitrary pairs of full-rank qubit states in Bloch coordinates.
//
// Some of these expressions are commonly quoted in a form that disagrees with
// the numerical oracle; `errata()` lists each one with the corrected form used
// here.

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string_view>

#include <Eigen/Dense>

#include "bures/matcore.hpp"
#include "bures/states.hpp"

namespace bures {
namespace closedform {

using Vector3 = Eigen::Vector3d;

namespace detail {

inline void require_parameter(double s, double s_star) {
  if (!(s >= -1e-12 && s <= s_star + 1e-12)) {
    std::ostringstream os;
    os << "geodesic parameter s = " << s << " outside [0, " << s_star << "]";
    throw validation_error(os.str());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Maximally mixed -> pure.

/// rho(s) = f^2 I/N + (g^2 + (2/sqrt N) f g) |psi><psi|, with cos s* = 1/sqrt N,
/// tan s* = sqrt(N - 1), f = cos s - sin s / sqrt(N - 1), g = sin s sqrt(N / (N - 1)).
inline DensityMatrix maxmixed_to_pure(int n, const ComplexVector& psi, double s) {
  if (n < 2 || psi.size() != n) throw validation_error("maxmixed_to_pure: need N >= 2 and a length-N vector");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw validation_error("maxmixed_to_pure: psi must be a unit vector");
  const double s_star = std::acos(1.0 / std::sqrt(static_cast<double>(n)));
  detail::require_parameter(s, s_star);
  s = std::clamp(s, 0.0, s_star);
  const double f = std::cos(s) - std::sin(s) / std::sqrt(n - 1.0);
  const double g = std::sin(s) * std::sqrt(n / (n - 1.0));
  const double weight = g * g + 2.0 / std::sqrt(static_cast<double>(n)) * f * g;
  ComplexMatrix rho = (f * f / n) * ComplexMatrix::Identity(n, n) + weight * (psi * psi.adjoint());
  return DensityMatrix::from(matcore::symmetrized(rho), {.trace = 1e-10, .psd = 1e-10});
}

// ---------------------------------------------------------------------------
// Werner states (1 - p) I/8 + p |Phi><Phi|, Phi in {GHZ, W}.

namespace detail {

inline void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << p << " outside [0, 1]";
    throw validation_error(os.str());
  }
}

inline ComplexMatrix ket_bra(int row, int col) {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(row, col) = 1.0;
  return m;
}

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

// |001>, |010>, |100>, |011>, |101>, |110>: everything but |000> and |111>.
inline ComplexMatrix mixed_weight_projector() {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  for (int i = 1; i < 7; ++i) m(i, i) = 1.0;
  return m;
}

}  // namespace detail

/// sqrt F(rho_GHZ(p), rho_W(q)). Both states are diagonal in a common basis
/// ({GHZ, W} and their orthogonal complement), so the root fidelity is a sum
/// of square roots of eigenvalue products.
inline double werner_root_fidelity(double p, double q) {
  detail::require_probability(p, "p");
  detail::require_probability(q, "q");
  return (6.0 * std::sqrt((1.0 - p) * (1.0 - q)) + std::sqrt((1.0 - p) * (1.0 + 7.0 * q)) +
          std::sqrt((1.0 - q) * (1.0 + 7.0 * p))) /
         8.0;
}

/// Equal-probability form (3 (1 - p) + sqrt((1 - p)(1 + 7p))) / 4.
inline double werner_root_fidelity(double p) {
  detail::require_probability(p, "p");
  return (3.0 * (1.0 - p) + std::sqrt((1.0 - p) * (1.0 + 7.0 * p))) / 4.0;
}

/// M* for rho_GHZ(p) -> rho_W(p), written in the computational basis:
///   (1 + a) |GHZ><GHZ| - (|000><111| + |111><000|) + (b - 1) |W><W| + sum of the six
///   mixed-weight projectors, with a = sqrt((1 - p)/(1 + 7p)) and b = 1/a.
/// Singular at p = 1.
inline ComplexMatrix werner_geometric_mean(double p) {
  detail::require_probability(p, "p");
  if (p >= 1.0) throw validation_error("M singular at s*=pi/2: Werner geometric mean diverges at p = 1");
  const double a = std::sqrt((1.0 - p) / (1.0 + 7.0 * p));
  return (1.0 + a) * detail::projector(ghz_vector()) - (detail::ket_bra(0, 7) + detail::ket_bra(7, 0)) +
         (1.0 / a - 1.0) * detail::projector(w_vector()) + detail::mixed_weight_projector();
}

/// M* rho_GHZ + rho_GHZ M* for equal probabilities:
///   (1/4)((1 - p) + c) |GHZ><GHZ| - (1/4)(1 - p)(|000><111| + |111><000|)
///   + (1/4)(c - (1 - p)) |W><W| + (1/4)(1 - p) (six mixed-weight projectors),
/// c = sqrt((1 - p)(1 + 7p)). Its trace is 2 sqrt F and it vanishes at p = 1.
inline ComplexMatrix werner_cross_term(double p) {
  detail::require_probability(p, "p");
  const double c = std::sqrt((1.0 - p) * (1.0 + 7.0 * p));
  const double q = 1.0 - p;
  return 0.25 * ((q + c) * detail::projector(ghz_vector()) - q * (detail::ket_bra(0, 7) + detail::ket_bra(7, 0)) +
                 (c - q) * detail::projector(w_vector()) + q * detail::mixed_weight_projector());
}

// ---------------------------------------------------------------------------
// Orthogonal pure endpoints.

namespace detail {

inline void require_orthonormal_pair(const ComplexVector& psi1, const ComplexVector& psi2) {
  if (psi1.size() != psi2.size()) throw validation_error("orthogonal pure geodesic: vector lengths differ");
  if (std::abs(psi1.norm() - 1.0) > 1e-10 || std::abs(psi2.norm() - 1.0) > 1e-10) {
    throw validation_error("orthogonal pure geodesic: vectors must be normalized");
  }
  const double overlap = std::abs(psi1.dot(psi2));
  if (overlap > 1e-10) {
    std::ostringstream os;
    os << "orthogonal pure geodesic: |<psi1|psi2>| = " << overlap << " is not zero";
    throw validation_error(os.str(), overlap);
  }
}

}  // namespace detail

struct PureGeodesicPoint {
  ComplexVector a;    ///< state-vector purification cos s |psi1> + sin s |psi2>
  DensityMatrix rho;  ///< a a^dagger, with coherences cos s sin s (|psi1><psi2| + h.c.)
};

/// M_{pi/2} = |psi1><psi2| + |psi2><psi1|, which maps |psi1> to |psi2>.
inline ComplexMatrix orthogonal_pure_transport(const ComplexVector& psi1, const ComplexVector& psi2) {
  detail::require_orthonormal_pair(psi1, psi2);
  return psi1 * psi2.adjoint() + psi2 * psi1.adjoint();
}

inline PureGeodesicPoint orthogonal_pure_geodesic(const ComplexVector& psi1, const ComplexVector& psi2, double s) {
  detail::require_orthonormal_pair(psi1, psi2);
  detail::require_parameter(s, std::numbers::pi / 2);
  ComplexVector a = std::cos(s) * psi1 + std::sin(s) * psi2;
  return {a, DensityMatrix::pure(a)};
}

/// Rank-2 state-matrix lift cos s |psi1><psi1| + sin s |psi2><psi2|. It is a
/// second horizontal geodesic between the same endpoints; its projection is the
/// incoherent mixture cos^2 s |psi1><psi1| + sin^2 s |psi2><psi2|.
inline ComplexMatrix orthogonal_projector_lift(const ComplexVector& psi1, const ComplexVector& psi2, double s) {
  detail::require_orthonormal_pair(psi1, psi2);
  detail::require_parameter(s, std::numbers::pi / 2);
  return std::cos(s) * detail::projector(psi1) + std::sin(s) * detail::projector(psi2);
}

// ---------------------------------------------------------------------------
// Qubits: rho1 = (I + x . sigma)/2, rho2 = (I + y . sigma)/2.

inline ComplexMatrix pauli_dot(const Vector3& v) {
  const complex i1(0.0, 1.0);
  ComplexMatrix m(2, 2);
  m << v(2), v(0) - i1 * v(1), v(0) + i1 * v(1), -v(2);
  return m;
}

inline Vector3 bloch_of(const ComplexMatrix& rho2x2) {
  return {2.0 * rho2x2(1, 0).real(), 2.0 * rho2x2(1, 0).imag(), (rho2x2(0, 0) - rho2x2(1, 1)).real()};
}

inline ComplexMatrix qubit_state(const Vector3& x) {
  return 0.5 * (ComplexMatrix::Identity(2, 2) + pauli_dot(x));
}

namespace detail {

inline void require_full_rank(const Vector3& x) {
  if (!(x.norm() < 1.0)) {
    std::ostringstream os;
    os << "qubit closed form needs |x| < 1, got " << x.norm();
    throw validation_error(os.str());
  }
}

inline void require_state(const Vector3& y) {
  if (!(y.norm() <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "qubit closed form needs |y| <= 1, got " << y.norm();
    throw validation_error(os.str());
  }
}

/// x / |x|, falling back to y / |y| and then z when x vanishes.
inline Vector3 direction(const Vector3& x, const Vector3& y) {
  if (x.norm() >= 1e-12) return x.normalized();
  if (y.norm() >= 1e-12) return y.normalized();
  return Vector3::UnitZ();
}

}  // namespace detail

struct QubitRoot {
  HermitianMatrix sqrt_rho;
  HermitianMatrix inv_sqrt_rho;
};

/// Principal root sqrt(rho) = (a+ I + a- xhat . sigma) / sqrt 2 and its inverse
/// (a+ I - a- xhat . sigma) / sqrt(2 det rho), a+- = sqrt(1/2 +- sqrt(det rho)).
inline QubitRoot qubit_root(const Vector3& x) {
  detail::require_full_rank(x);
  const double det = 0.25 * (1.0 - x.squaredNorm());
  const double root_det = std::sqrt(det);
  const double a_plus = std::sqrt(0.5 + root_det);
  const double a_minus = std::sqrt(std::max(0.0, 0.5 - root_det));
  const ComplexMatrix n_sigma = pauli_dot(detail::direction(x, Vector3::UnitZ()));
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  return {HermitianMatrix::symmetrize((a_plus * id + a_minus * n_sigma) / std::sqrt(2.0)),
          HermitianMatrix::symmetrize((a_plus * id - a_minus * n_sigma) / std::sqrt(2.0 * det))};
}

struct QubitTau {
  double tau0;
  Vector3 tau_vec;
  double lambda_plus;
  double lambda_minus;
  ComplexVector eigvec_plus;   ///< |Lambda+>
  ComplexVector eigvec_minus;  ///< |Lambda->
};

/// tau = sqrt(rho1) rho2 sqrt(rho1) = tau0 I + tau_vec . sigma with
///   tau0    = (1 + |x| y_par) / 4
///   tau_vec = ((|x| + y_par) xhat + sqrt(1 - |x|^2) y_perp) / 4
/// where y_par = y . xhat and y_perp = y - y_par xhat.
inline QubitTau qubit_tau(const Vector3& x, const Vector3& y) {
  detail::require_full_rank(x);
  detail::require_state(y);
  const double r = x.norm();
  const Vector3 xhat = detail::direction(x, y);
  const double y_par = y.dot(xhat);
  const Vector3 y_perp = y - y_par * xhat;

  QubitTau out;
  out.tau0 = 0.25 * (1.0 + r * y_par);
  out.tau_vec = 0.25 * ((r + y_par) * xhat + std::sqrt(1.0 - r * r) * y_perp);
  const double t = out.tau_vec.norm();
  out.lambda_plus = out.tau0 + t;
  out.lambda_minus = out.tau0 - t;

  // (tau3 +- |tau|, tau1 + i tau2) / sqrt(2 |tau| (|tau| +- tau3)); the spectral
  // route covers |tau| = 0 and tau along -+z where the normalization vanishes.
  const double t3 = out.tau_vec(2);
  const complex lower(out.tau_vec(0), out.tau_vec(1));
  const double guard = 1e-12;
  if (t > guard && t + t3 > guard * t && t - t3 > guard * t) {
    out.eigvec_plus = ComplexVector(2);
    out.eigvec_plus << t3 + t, lower;
    out.eigvec_plus /= std::sqrt(2.0 * t * (t + t3));
    out.eigvec_minus = ComplexVector(2);
    out.eigvec_minus << t3 - t, lower;
    out.eigvec_minus /= std::sqrt(2.0 * t * (t - t3));
  } else {
    const auto sd = matcore::spectral_decompose(HermitianMatrix::symmetrize(pauli_dot(out.tau_vec)));
    out.eigvec_minus = sd.eigenvectors.col(0);
    out.eigvec_plus = sd.eigenvectors.col(1);
  }
  return out;
}

/// sqrt F = sqrt(Lambda+) + sqrt(Lambda-).
inline double qubit_fidelity(const QubitTau& tau) {
  return std::clamp(std::sqrt(std::max(0.0, tau.lambda_plus)) + std::sqrt(std::max(0.0, tau.lambda_minus)), 0.0, 1.0);
}

inline double qubit_fidelity(const Vector3& x, const Vector3& y) { return qubit_fidelity(qubit_tau(x, y)); }

/// Bloch vector r(s) of the geodesic point at Bures angle s from x toward y:
///   r(s) = f^2 x + g^2 y + 2 f g sum_{i=+-} sqrt(Lambda_i) (w_i,par + w_i,perp / sqrt(1 - |x|^2)),
/// w_i = <Lambda_i| sigma |Lambda_i>, split along and across xhat.
inline Vector3 qubit_orbit(const Vector3& x, const Vector3& y, double s) {
  const QubitTau tau = qubit_tau(x, y);
  const double rf = qubit_fidelity(tau);
  const double s_star = std::acos(rf);
  detail::require_parameter(s, s_star);
  if (s_star < 1e-8) return x;
  s = std::clamp(s, 0.0, s_star);

  const double f = std::sin(s_star - s) / std::sin(s_star);
  const double g = std::sin(s) / std::sin(s_star);
  const Vector3 xhat = detail::direction(x, y);
  const double stretch = 1.0 / std::sqrt(1.0 - x.squaredNorm());

  Vector3 cross = Vector3::Zero();
  const std::array<std::pair<double, const ComplexVector*>, 2> terms{
      {{tau.lambda_plus, &tau.eigvec_plus}, {tau.lambda_minus, &tau.eigvec_minus}}};
  for (const auto& [lambda, v] : terms) {
    const Vector3 w = bloch_of(*v * v->adjoint());
    const Vector3 w_par = w.dot(xhat) * xhat;
    cross += std::sqrt(std::max(0.0, lambda)) * (w_par + stretch * (w - w_par));
  }
  return f * f * x + g * g * y + 2.0 * f * g * cross;
}

// ---------------------------------------------------------------------------

struct Erratum {
  std::string_view formula;
  std::string_view reference_form;
  std::string_view implemented_form;
  std::string_view evidence;
};

/// Closed forms whose commonly quoted version disagrees with the numerical oracle.
inline constexpr std::array<Erratum, 8> errata() {
  return {{
      {"qubit square root", "(a- I + a+ xhat.sigma)/sqrt2", "(a+ I + a- xhat.sigma)/sqrt2",
       "quoted form squares to rho but is indefinite (x = 0 gives xhat.sigma/sqrt2); principal root matches "
       "the spectral square root"},
      {"qubit inverse square root", "(-a- I + a+ xhat.sigma)/sqrt(2 det)", "(a+ I - a- xhat.sigma)/sqrt(2 det)",
       "inverse of the principal root; matches the spectral inverse root"},
      {"qubit tau, perpendicular part", "-(1/2)(1 - x^2) y_perp / 4", "+sqrt(1 - x^2) y_perp / 4",
       "x = 0 requires tau = rho2/2, i.e. tau_vec = y/4; matches sqrt(rho1) rho2 sqrt(rho1) entrywise"},
      {"qubit tau eigenvectors", "(tau3 +- |tau|, tau1 + tau2)", "(tau3 +- |tau|, tau1 + i tau2)",
       "eigen-equation of tau_vec.sigma; quoted form fails whenever tau2 != 0"},
      {"qubit cross-term states", "w_par - w_perp/sqrt(1 - x^2)", "w_par + w_perp/sqrt(1 - x^2)",
       "sign follows the principal root; the orbit matches the generic geodesic to 1e-9"},
      {"Werner cross term", "-(1/4)(1 - p)|W><W|", "(1/4)(sqrt((1 - p)(1 + 7p)) - (1 - p))|W><W|",
       "trace must equal 2 sqrt F; matches M* rho + rho M* from the generic pipeline"},
      {"geodesic trace identity", "f^2 + g^2 + cos(s*) f g = 1", "f^2 + g^2 + 2 cos(s*) f g = 1",
       "expansion of Tr[M(s) rho1 M(s)]; verified on sampled (s, s*)"},
      {"qubit tangent generator, N = 2", "g0 = (1/2) x.xdot/(1 - x^2), g = xdot/2 - g0 x",
       "g0 = -x.xdot/(1 - x^2), g = xdot - g0 x with G = (g0 I + g.sigma)/2",
       "general linear system at N = 2; G rho + rho G reproduces drho"},
  }};
}

}  // namespace closedform
}  // namespace bures

#endif  // BURES_CLOSEDFORM_HPP
