#pragma once

// Shared constructions for the test suites: small metric spaces built by
// hand (independently of the library's generators) and the standard example
// operators.

#include <roecart/operators.hpp>
#include <roecart/space.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

namespace testsupport {

inline roecart::SpacePtr interval_space(int n) {
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = std::abs(i - j);
  return std::make_shared<const roecart::FiniteSpace>(std::move(d));
}

inline roecart::SpacePtr cycle_space(int n) {
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int a = std::abs(i - j);
      d(i, j) = std::min(a, n - a);
    }
  return std::make_shared<const roecart::FiniteSpace>(std::move(d));
}

inline roecart::Operator square_op(const roecart::SpacePtr& s, Eigen::MatrixXcd m) {
  return roecart::Operator(s, s, std::move(m));
}

// delta_k -> delta_{k+1 mod n}; unitary on any metric over the cycle.
inline roecart::Operator cyclic_shift(const roecart::SpacePtr& s) {
  const int n = s->size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) m((k + 1) % n, k) = 1.0;
  return square_op(s, std::move(m));
}

// delta_k -> delta_{k+1}, no wraparound: the propagation-1 band operator.
inline roecart::Operator path_shift(const roecart::SpacePtr& s) {
  const int n = s->size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) m(k + 1, k) = 1.0;
  return square_op(s, std::move(m));
}

// delta_k -> delta_{n-1-k}; a self-adjoint permutation unitary.
inline roecart::Operator flip_op(const roecart::SpacePtr& s) {
  const int n = s->size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) m(n - 1 - k, k) = 1.0;
  return square_op(s, std::move(m));
}

inline roecart::Operator diag_op(const roecart::SpacePtr& s,
                                 std::vector<std::complex<double>> values) {
  const int n = s->size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = values[static_cast<std::size_t>(k)];
  return square_op(s, std::move(m));
}

// Discrete Fourier unitary: every entry has squared modulus 1/n, the
// maximally spread-out conjugator.
inline roecart::Operator dft_op(const roecart::SpacePtr& s) {
  const int n = s->size();
  Eigen::MatrixXcd m(n, n);
  const double tau = 8.0 * std::atan(1.0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      m(x, y) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), tau * x * y / n);
  return square_op(s, std::move(m));
}

inline roecart::Entourage ent(int n, std::vector<std::pair<int, int>> pairs) {
  return roecart::Entourage(n, std::move(pairs));
}

inline double max_abs_diff(const roecart::Operator& a, const roecart::Operator& b) {
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

}  // namespace testsupport
