#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>

#include "roecart/space.hpp"

namespace roecart {

// Raised when an iterative numeric routine fails to reach its tolerance.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// A linear map ell^2(domain) -> ell^2(codomain) with explicit matrix entries
// a(x, y) = <delta_x, a delta_y>.  Immutable after construction.
class Operator {
 public:
  Operator(SpacePtr codomain, SpacePtr domain, Eigen::MatrixXcd entries);

  static Operator zero(SpacePtr codomain, SpacePtr domain);
  static Operator identity(SpacePtr space);

  const SpacePtr& codomain() const { return codomain_; }
  const SpacePtr& domain() const { return domain_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::complex<double> entry(int x, int y) const { return entries_(x, y); }
  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }

  // Square means acting on one space: the two metrics must agree.
  bool is_square() const { return same_space(*codomain_, *domain_); }

  Operator adjoint() const;

  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  Operator operator*(const Operator& other) const;  // composition
  Operator scaled(std::complex<double> c) const;

 private:
  SpacePtr codomain_;
  SpacePtr domain_;
  Eigen::MatrixXcd entries_;
};

// A function on a space, viewed as a multiplication (diagonal) operator.
class DiagonalFunction {
 public:
  DiagonalFunction(SpacePtr space, Eigen::VectorXcd values);

  const SpacePtr& space() const { return space_; }
  const Eigen::VectorXcd& values() const { return values_; }
  std::complex<double> value(int x) const { return values_(x); }

  Operator to_operator() const;

 private:
  SpacePtr space_;
  Eigen::VectorXcd values_;
};

// Structural support of a square operator: pairs carrying entries above the
// structural-zero threshold.
Entourage support(const Operator& a);

// Largest distance on the support; empty (null when serialized) for the zero
// operator, which has no supported pair.
std::optional<double> propagation(const Operator& a);

// Zero all entries with d(x, y) > s.  Contractive in every norm computed here.
Operator band_truncate(const Operator& a, double s);

// Keep the main diagonal.  As a map on operators this is the conditional
// expectation onto the diagonal subalgebra.
DiagonalFunction diag_expectation(const Operator& a);

// Largest singular value.  Matrices whose thin side is at most
// kDenseNormLimit go through an exact dense eigensolve of the Gram matrix;
// larger ones use power iteration on a*a from a fixed deterministic start
// vector, stopping when the Hermitian residual certifies the eigenvalue to
// the requested relative tolerance.  Throws numeric_error with the last
// residual if the iteration cap (10 * dimension) is reached first.
inline constexpr int kDenseNormLimit = 64;
double spectral_norm(const Eigen::MatrixXcd& m, double tol = 1e-12);
double spectral_norm(const Operator& a, double tol = 1e-12);

// At most one supported entry in every row and every column.
bool is_single_diagonal(const Operator& a);

// sup |a(x, y)| for a single-diagonal operator; equals its spectral norm.
double single_diagonal_norm(const Operator& a);

// 0/1 matrix of a slice-bound-1 entourage: a partial translation operator.
Operator partial_isometry(SpacePtr space, const Entourage& e);

// Drop entries of a single-diagonal operator below eps in modulus.
Operator eps_truncate(const Operator& a, double eps);

// Whether conjugation by a maps the diagonal subalgebra into itself.  For
// matrices this holds exactly when the support is single-diagonal.
bool normalizes_diag(const Operator& a);

}  // namespace roecart
