// Walks the Bures geodesic from a mixed qubit state to a pure one and prints
// the fidelity to the start against cos s.
#include <cmath>
#include <cstdio>

#include "bures/bures.hpp"

int main() {
  using namespace bures;
  const auto start = DensityMatrix::from(closedform::qubit_state({0.2, 0.0, 0.3}));
  ComplexVector psi(2);
  psi << 1.0, complex(0.0, 1.0);
  const auto target = DensityMatrix::pure(psi / std::sqrt(2.0));

  const auto path = geodesy::geometric_mean_operator(start, target);
  std::printf("root fidelity %.12f, s* = %.12f\n", path.root_fidelity(), path.s_star());
  for (int k = 0; k <= 4; ++k) {
    const double s = path.s_star() * k / 4.0;
    const auto rho = geodesy::geodesic_point(path, s);
    std::printf("s=%.6f  sqrtF=%.12f  cos s=%.12f  purity=%.6f\n", s, geodesy::root_fidelity(start, rho),
                std::cos(s), rho.purity());
  }
}
