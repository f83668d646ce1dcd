#ifndef BURES_GENERATOR_BASIS_HPP
#define BURES_GENERATOR_BASIS_HPP

#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "bures/matcore.hpp"

namespace bures {

/// Dense rank-3 real tensor with cubic shape n x n x n.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}

  std::size_t extent() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Generalized Gell-Mann generators of su(N) in the defining representation,
/// normalized to Tr[s_i s_j] = 2 delta_ij, with
///   f_ijk = Tr[[s_i, s_j] s_k] / 4i   (totally antisymmetric)
///   d_ijk = Tr[{s_i, s_j} s_k] / 4    (totally symmetric).
///
/// Ordering: symmetric off-diagonal generators for the pairs (a, b), a < b, in
/// lexicographic order; then the antisymmetric ones in the same order; then
/// the N - 1 diagonal generators. Indices are zero-based.
class GeneratorBasis {
 public:
  static constexpr int min_dim = 2;
  static constexpr int max_dim = 16;

  explicit GeneratorBasis(int n) : n_(n) {
    if (n < min_dim || n > max_dim) {
      std::ostringstream os;
      os << "generator basis dimension " << n << " outside [" << min_dim << ", " << max_dim << "]";
      throw validation_error(os.str());
    }
    build_generators();
    build_structure_constants();
  }

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return sigmas_.size(); }
  const ComplexMatrix& sigma(std::size_t i) const { return sigmas_.at(i); }
  const std::vector<ComplexMatrix>& sigmas() const noexcept { return sigmas_; }
  const Tensor3& f() const noexcept { return f_; }
  const Tensor3& d() const noexcept { return d_; }

  /// sum_i c_i s_i
  ComplexMatrix combine(const RealVector& c) const {
    require_length(c);
    ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
    for (std::size_t i = 0; i < size(); ++i) {
      for (const auto& e : sparse_[i]) out(e.row, e.col) += c(static_cast<Eigen::Index>(i)) * e.value;
    }
    return out;
  }

  /// Tr[m s_i] for every generator.
  Eigen::VectorXcd traces_against(const ComplexMatrix& m) const {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
      complex acc = 0.0;
      for (const auto& e : sparse_[i]) acc += m(e.col, e.row) * e.value;
      out(static_cast<Eigen::Index>(i)) = acc;
    }
    return out;
  }

  void require_length(const RealVector& v) const {
    if (static_cast<std::size_t>(v.size()) != size()) {
      std::ostringstream os;
      os << "vector length " << v.size() << " does not match N^2 - 1 = " << size();
      throw validation_error(os.str());
    }
  }

 private:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    complex value;
  };

  void add(std::vector<Entry> entries) {
    ComplexMatrix m = ComplexMatrix::Zero(n_, n_);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    sigmas_.push_back(std::move(m));
    sparse_.push_back(std::move(entries));
  }

  void build_generators() {
    const complex i1(0.0, 1.0);
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) add({{a, b, 1.0}, {b, a, 1.0}});
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) add({{a, b, -i1}, {b, a, i1}});
    for (int l = 1; l < n_; ++l) {
      const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
      std::vector<Entry> diag;
      for (int m = 0; m < l; ++m) diag.push_back({m, m, scale});
      diag.push_back({l, l, -l * scale});
      add(std::move(diag));
    }
  }

  // Tr[s_i s_j s_k] = 2 (d_ijk + i f_ijk) for traceless generators, so a
  // single triple-product trace yields both tensors.
  void build_structure_constants() {
    const std::size_t m = size();
    f_ = Tensor3(m);
    d_ = Tensor3(m);
    ComplexMatrix product(n_, n_);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        product.setZero();
        for (const auto& ei : sparse_[i])
          for (const auto& ej : sparse_[j])
            if (ei.col == ej.row) product(ei.row, ej.col) += ei.value * ej.value;
        for (std::size_t k = 0; k < m; ++k) {
          complex t = 0.0;
          for (const auto& ek : sparse_[k]) t += product(ek.col, ek.row) * ek.value;
          d_(i, j, k) = 0.5 * t.real();
          f_(i, j, k) = 0.5 * t.imag();
        }
      }
    }
  }

  int n_;
  std::vector<ComplexMatrix> sigmas_;
  std::vector<std::vector<Entry>> sparse_;
  Tensor3 f_;
  Tensor3 d_;
};

inline GeneratorBasis generator_basis(int n) { return GeneratorBasis(n); }

}  // namespace bures

#endif  // BURES_GENERATOR_BASIS_HPP
