#pragma once

#include <random>

#include "bures/bures.hpp"

namespace testing_support {

using namespace bures;

// Uniform point in the open Bloch ball of radius < max_radius.
inline closedform::Vector3 random_bloch(Rng& rng, double max_radius = 0.95) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  closedform::Vector3 v(normal(rng), normal(rng), normal(rng));
  return v.normalized() * max_radius * std::cbrt(unit(rng));
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

}  // namespace testing_support
