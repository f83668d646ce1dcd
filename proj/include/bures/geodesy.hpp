#ifndef BURES_GEODESY_HPP
#define BURES_GEODESY_HPP

// Bures geometry of density matrices through the Uhlmann purification bundle.
//
// The geodesic from rho1 to rho2 is generated by the geometric-mean operator
//
//   M* = rho1^{-1/2} sqrt(rho1^{1/2} rho2 rho1^{1/2}) rho1^{-1/2},   M* rho1 M* = rho2,
//
// through M(s) = f(s) I + g(s) M*, rho(s) = M(s) rho1 M(s), A(s) = M(s) A(0),
// with s the Bures angle measured from rho1 and
//
//   f(s) = cos s (1 - tan s / tan s*) = sin(s* - s) / sin s*,   g(s) = sin s / sin s*.

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "bures/matcore.hpp"
#include "bures/states.hpp"

namespace bures {
namespace geodesy {

/// Endpoints closer than this Bures angle give the constant path M(s) = I.
inline constexpr double degenerate_angle = 1e-8;
/// cos s* below this marks orthogonal endpoints.
inline constexpr double orthogonal_cosine = 1e-8;
/// Max-entry distance at which two endpoints are treated as the same state.
inline constexpr double identical_state_tol = 1e-13;
/// rho2 must satisfy max |rho2 - P rho2 P| <= this, P the support projector of rho1.
inline constexpr double support_residual_tol = 1e-9;
/// Eigenvalues of rho1^{1/2} rho2 rho1^{1/2} below this times N times the
/// scale max(||tau||, Tr rho1 Tr rho2) are eigensolver roundoff and count as
/// zero. Keeping them would add sqrt(roundoff) ~ 1e-8 to the fidelity.
inline constexpr double fidelity_kernel_clamp = 16 * std::numeric_limits<double>::epsilon();

struct BuresSummary {
  double root_fidelity;
  double bures_angle;     ///< D_A = arccos sqrt F, radians
  double bures_distance;  ///< D_B = sqrt(Tr rho1 + Tr rho2 - 2 sqrt F)
};

namespace detail {

struct RootFidelityParts {
  HermitianMatrix sqrt_tau;
  double value;
};

// sqrt(tau) with tau = s1 rho2 s1 for a precomputed s1 = rho1^{1/2}.
inline RootFidelityParts root_fidelity_parts(const ComplexMatrix& s1, const DensityMatrix& rho1,
                                             const DensityMatrix& rho2) {
  const auto tau = HermitianMatrix::symmetrize(s1 * rho2.matrix() * s1);
  const auto sd = matcore::spectral_decompose(tau);
  const double scale = std::max(sd.spectral_radius(), rho1.hermitian().trace() * rho2.hermitian().trace());
  auto root = matcore::psd_sqrtm(sd, fidelity_kernel_clamp * static_cast<double>(sd.dim()) * scale);
  const double value = std::clamp(root.trace(), 0.0, 1.0);
  return {std::move(root), value};
}

inline ComplexVector phase_fixed(ComplexVector v) {
  v /= v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

inline bool is_pure(const SpectralDecomposition& sd) {
  return sd.eigenvalues(sd.dim() - 1) >= 1.0 - 1e-10;
}

}  // namespace detail

/// sqrt F = Tr sqrt(rho1^{1/2} rho2 rho1^{1/2}), clamped to [0, 1].
inline double root_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1, rho2);
  if (matcore::max_abs(rho1.matrix() - rho2.matrix()) == 0.0) return 1.0;
  const auto sd1 = matcore::spectral_decompose(rho1.hermitian());
  const auto s1 = matcore::psd_sqrtm(sd1, matcore::default_clamp(sd1));
  return detail::root_fidelity_parts(s1.matrix(), rho1, rho2).value;
}

inline BuresSummary bures(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const double rf = root_fidelity(rho1, rho2);
  const double db2 = rho1.hermitian().trace() + rho2.hermitian().trace() - 2.0 * rf;
  return {rf, std::acos(rf), std::sqrt(std::max(0.0, db2))};
}

/// Endpoints with the cached geometric-mean operator and Bures angle s*.
class GeodesicPath {
 public:
  const DensityMatrix& rho1() const noexcept { return rho1_; }
  const DensityMatrix& rho2() const noexcept { return rho2_; }
  const HermitianMatrix& m_star() const noexcept { return m_star_; }
  double s_star() const noexcept { return s_star_; }
  double root_fidelity() const noexcept { return root_fidelity_; }
  bool degenerate() const noexcept { return degenerate_; }
  bool orthogonal() const noexcept { return orthogonal_; }
  Eigen::Index dim() const noexcept { return rho1_.dim(); }

 private:
  friend GeodesicPath geometric_mean_operator(const DensityMatrix&, const DensityMatrix&);
  GeodesicPath(DensityMatrix rho1, DensityMatrix rho2, HermitianMatrix m_star, double s_star, double rf,
               bool degenerate, bool orthogonal)
      : rho1_(std::move(rho1)),
        rho2_(std::move(rho2)),
        m_star_(std::move(m_star)),
        s_star_(s_star),
        root_fidelity_(rf),
        degenerate_(degenerate),
        orthogonal_(orthogonal) {}

  DensityMatrix rho1_;
  DensityMatrix rho2_;
  HermitianMatrix m_star_;
  double s_star_ = 0.0;
  double root_fidelity_ = 1.0;
  bool degenerate_ = false;
  bool orthogonal_ = false;
};

/// Builds M* and s* for the geodesic rho1 -> rho2.
///
/// rho1 may be rank deficient provided rho2 lives on its support; rho1^{-1/2}
/// is then the pseudo-inverse. Orthogonal endpoints (sqrt F = 0) admit a
/// geodesic only when both are pure, with M* = |psi2><psi1| + |psi1><psi2|
/// and each eigenvector's first nonzero component made real positive.
inline GeodesicPath geometric_mean_operator(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1, rho2);
  const auto n = rho1.dim();
  const auto identity = HermitianMatrix::identity(n);

  if (matcore::max_abs(rho1.matrix() - rho2.matrix()) <= identical_state_tol) {
    return GeodesicPath(rho1, rho2, identity, 0.0, 1.0, true, false);
  }

  const auto sd1 = matcore::spectral_decompose(rho1.hermitian());
  const double clamp1 = matcore::default_clamp(sd1);
  const auto s1 = matcore::psd_sqrtm(sd1, clamp1);
  auto [sqrt_tau, rf] = detail::root_fidelity_parts(s1.matrix(), rho1, rho2);
  const double s_star = std::acos(rf);

  if (s_star < degenerate_angle) {
    return GeodesicPath(rho1, rho2, identity, s_star, rf, true, false);
  }

  if (rf < orthogonal_cosine) {
    const auto sd2 = matcore::spectral_decompose(rho2.hermitian());
    if (!detail::is_pure(sd1) || !detail::is_pure(sd2)) {
      std::ostringstream os;
      os << "M singular at s*=pi/2: endpoints are orthogonal (sqrt F = " << rf
         << ") and not both pure, so the geodesic between them is not unique";
      throw validation_error(os.str(), rf);
    }
    const ComplexVector psi1 = detail::phase_fixed(sd1.eigenvectors.col(n - 1));
    const ComplexVector psi2 = detail::phase_fixed(sd2.eigenvectors.col(n - 1));
    auto m = HermitianMatrix::symmetrize(psi2 * psi1.adjoint() + psi1 * psi2.adjoint());
    return GeodesicPath(rho1, rho2, std::move(m), std::numbers::pi / 2, 0.0, false, true);
  }

  if (sd1.eigenvalues(0) <= clamp1) {
    ComplexMatrix support = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (sd1.eigenvalues(i) > clamp1) support += sd1.eigenvectors.col(i) * sd1.eigenvectors.col(i).adjoint();
    }
    const double residual = matcore::max_abs(rho2.matrix() - support * rho2.matrix() * support);
    if (residual > support_residual_tol) {
      std::ostringstream os;
      os << "geodesic undefined through rank-deficient start: rho2 leaves the support of rho1 (residual "
         << residual << ")";
      throw validation_error(os.str(), residual);
    }
  }

  const auto inv_s1 = matcore::psd_inv_sqrtm(sd1, clamp1);
  auto m = HermitianMatrix::symmetrize(inv_s1.matrix() * sqrt_tau.matrix() * inv_s1.matrix());
  return GeodesicPath(rho1, rho2, std::move(m), s_star, rf, false, false);
}

struct TransportCoefficients {
  double f;
  double g;
};

inline double checked_parameter(const GeodesicPath& path, double s) {
  constexpr double slack = 1e-12;
  if (!(s >= -slack && s <= path.s_star() + slack)) {
    std::ostringstream os;
    os << "geodesic parameter s = " << s << " outside [0, s*] with s* = " << path.s_star();
    throw validation_error(os.str());
  }
  return std::clamp(s, 0.0, path.s_star());
}

/// f(s), g(s) of M(s) = f I + g M*. For orthogonal endpoints these reduce to cos s, sin s.
inline TransportCoefficients transport_coefficients(const GeodesicPath& path, double s) {
  s = checked_parameter(path, s);
  if (path.degenerate()) return {1.0, 0.0};
  const double ss = path.s_star();
  return {std::sin(ss - s) / std::sin(ss), std::sin(s) / std::sin(ss)};
}

/// d/ds of (f, g).
inline TransportCoefficients transport_rates(const GeodesicPath& path, double s) {
  s = checked_parameter(path, s);
  if (path.degenerate()) return {0.0, 0.0};
  const double ss = path.s_star();
  return {-std::cos(ss - s) / std::sin(ss), std::cos(s) / std::sin(ss)};
}

inline HermitianMatrix transport_operator(const GeodesicPath& path, double s) {
  const auto [f, g] = transport_coefficients(path, s);
  const auto n = path.dim();
  return HermitianMatrix::symmetrize(f * ComplexMatrix::Identity(n, n) + g * path.m_star().matrix());
}

/// rho(s) = M(s) rho1 M(s).
inline DensityMatrix geodesic_point(const GeodesicPath& path, double s) {
  const auto m = transport_operator(path, s);
  const ComplexMatrix rho = m.matrix() * path.rho1().matrix() * m.matrix();
  return DensityMatrix::from(matcore::symmetrized(rho), {.trace = 1e-10, .psd = 1e-10});
}

/// G0 = (M* - cos s* I) / sin s*, the Hermitian generator of the lift at s = 0.
inline HermitianMatrix initial_tangent(const GeodesicPath& path) {
  if (path.degenerate()) throw validation_error("degenerate geodesic has no initial tangent");
  const auto n = path.dim();
  const double ss = path.s_star();
  return HermitianMatrix::symmetrize((path.m_star().matrix() - std::cos(ss) * ComplexMatrix::Identity(n, n)) /
                                     std::sin(ss));
}

inline void require_lifts_start(const Purification& a0, const GeodesicPath& path) {
  const double residual = matcore::max_abs(a0.matrix() * a0.matrix().adjoint() - path.rho1().matrix());
  if (a0.dim() != path.dim() || residual > 1e-10) {
    std::ostringstream os;
    os << "purification does not project to the start of the geodesic (residual " << residual << ")";
    throw validation_error(os.str(), residual);
  }
}

/// A(s) = M(s) A0, the horizontal geodesic over rho(s) starting at A0.
inline Purification horizontal_lift(const Purification& a0, const GeodesicPath& path, double s) {
  require_lifts_start(a0, path);
  return make_purification(transport_operator(path, s).matrix() * a0.matrix(), geodesic_point(path, s));
}

/// dA/ds along the horizontal geodesic.
inline ComplexMatrix lift_velocity(const Purification& a0, const GeodesicPath& path, double s) {
  require_lifts_start(a0, path);
  const auto [df, dg] = transport_rates(path, s);
  const auto n = path.dim();
  return (df * ComplexMatrix::Identity(n, n) + dg * path.m_star().matrix()) * a0.matrix();
}

/// max |Adot^dagger A - A^dagger Adot|; zero iff the tangent is horizontal.
inline double hlc_residual(const ComplexMatrix& a, const ComplexMatrix& adot) {
  if (a.rows() != adot.rows() || a.cols() != adot.cols()) {
    throw validation_error("hlc_residual: A and dA/ds differ in shape");
  }
  const ComplexMatrix c = adot.adjoint() * a;
  return matcore::max_abs(c - c.adjoint());
}

/// ds^2 = (1/2) sum_ij |<i|drho|j>|^2 / (l_i + l_j) in the eigenbasis of rho.
/// Pairs with l_i + l_j at or below the clamp are skipped.
inline double hubner_metric(const DensityMatrix& rho, const HermitianMatrix& drho) {
  if (drho.dim() != rho.dim()) throw validation_error("hubner_metric: dimension mismatch");
  const double tr = drho.trace();
  const double scale = std::max(1.0, matcore::max_abs(drho.matrix()));
  if (std::abs(tr) > 1e-10 * scale) {
    std::ostringstream os;
    os << "hubner_metric: tangent must be traceless, Tr[drho] = " << tr;
    throw validation_error(os.str(), std::abs(tr));
  }
  const auto sd = matcore::spectral_decompose(rho.hermitian());
  const double clamp = matcore::default_clamp(sd);
  const ComplexMatrix d = sd.eigenvectors.adjoint() * drho.matrix() * sd.eigenvectors;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sd.dim(); ++i) {
    for (Eigen::Index j = 0; j < sd.dim(); ++j) {
      const double denom = sd.eigenvalues(i) + sd.eigenvalues(j);
      if (denom > clamp) sum += std::norm(d(i, j)) / denom;
    }
  }
  return 0.5 * sum;
}

/// U = sqrt(rho1^{1/2} rho2 rho1^{1/2}) rho1^{-1/2} rho2^{-1/2}; unitary for
/// invertible rho1, rho2, with Tr[U sqrt(rho2) sqrt(rho1)] = sqrt F.
inline ComplexMatrix uhlmann_unitary(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1, rho2);
  const auto sd1 = matcore::spectral_decompose(rho1.hermitian());
  const auto sd2 = matcore::spectral_decompose(rho2.hermitian());
  for (const auto* sd : {&sd1, &sd2}) {
    if (sd->eigenvalues(0) <= matcore::default_clamp(*sd)) {
      std::ostringstream os;
      os << "Uhlmann unitary construction requires invertible inputs (smallest eigenvalue "
         << sd->eigenvalues(0) << ")";
      throw validation_error(os.str(), sd->eigenvalues(0));
    }
  }
  const auto s1 = matcore::psd_sqrtm(sd1, matcore::default_clamp(sd1));
  const auto [sqrt_tau, rf] = detail::root_fidelity_parts(s1.matrix(), rho1, rho2);
  return sqrt_tau.matrix() * matcore::psd_inv_sqrtm(sd1, matcore::default_clamp(sd1)).matrix() *
         matcore::psd_inv_sqrtm(sd2, matcore::default_clamp(sd2)).matrix();
}

}  // namespace geodesy

using geodesy::BuresSummary;
using geodesy::GeodesicPath;

}  // namespace bures

#endif  // BURES_GEODESY_HPP
