#include "roecart/operators.hpp"

#include <algorithm>
#include <cmath>

namespace roecart {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_square(const Operator& a, const char* who) {
  if (!a.is_square())
    throw std::invalid_argument(std::string(who) + " needs codomain and domain to be one space");
}

}  // namespace

Operator::Operator(SpacePtr codomain, SpacePtr domain, Eigen::MatrixXcd entries)
    : codomain_(std::move(codomain)), domain_(std::move(domain)), entries_(std::move(entries)) {
  require(codomain_ != nullptr && domain_ != nullptr, "operator needs both spaces");
  require(entries_.rows() == codomain_->size() && entries_.cols() == domain_->size(),
          "entry matrix shape does not match the spaces");
}

Operator Operator::zero(SpacePtr codomain, SpacePtr domain) {
  require(codomain != nullptr && domain != nullptr, "operator needs both spaces");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(codomain->size(), domain->size());
  return Operator(std::move(codomain), std::move(domain), std::move(m));
}

Operator Operator::identity(SpacePtr space) {
  require(space != nullptr, "operator needs a space");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(space->size(), space->size());
  return Operator(space, space, std::move(m));
}

Operator Operator::adjoint() const { return Operator(domain_, codomain_, entries_.adjoint()); }

Operator Operator::operator+(const Operator& other) const {
  require(same_space(*codomain_, *other.codomain_) && same_space(*domain_, *other.domain_),
          "operator sum across different spaces");
  return Operator(codomain_, domain_, entries_ + other.entries_);
}

Operator Operator::operator-(const Operator& other) const {
  require(same_space(*codomain_, *other.codomain_) && same_space(*domain_, *other.domain_),
          "operator difference across different spaces");
  return Operator(codomain_, domain_, entries_ - other.entries_);
}

Operator Operator::operator*(const Operator& other) const {
  require(same_space(*domain_, *other.codomain_),
          "operator composition needs matching inner space");
  return Operator(codomain_, other.domain_, entries_ * other.entries_);
}

Operator Operator::scaled(std::complex<double> c) const {
  return Operator(codomain_, domain_, c * entries_);
}

DiagonalFunction::DiagonalFunction(SpacePtr space, Eigen::VectorXcd values)
    : space_(std::move(space)), values_(std::move(values)) {
  require(space_ != nullptr, "diagonal function needs a space");
  require(values_.size() == space_->size(), "diagonal value count does not match the space");
}

Operator DiagonalFunction::to_operator() const {
  Eigen::MatrixXcd m = values_.asDiagonal();
  return Operator(space_, space_, std::move(m));
}

Entourage support(const Operator& a) {
  require_square(a, "support");
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < a.rows(); ++x)
    for (int y = 0; y < a.cols(); ++y)
      if (std::abs(a.entry(x, y)) > kStructuralZero) pairs.emplace_back(x, y);
  return Entourage(a.rows(), std::move(pairs));
}

std::optional<double> propagation(const Operator& a) {
  require_square(a, "propagation");
  const FiniteSpace& space = *a.codomain();
  std::optional<double> prop;
  for (int x = 0; x < a.rows(); ++x)
    for (int y = 0; y < a.cols(); ++y)
      if (std::abs(a.entry(x, y)) > kStructuralZero)
        prop = std::max(prop.value_or(0.0), space.dist(x, y));
  return prop;
}

Operator band_truncate(const Operator& a, double s) {
  require_square(a, "band_truncate");
  require(s >= 0, "band width must be nonnegative");
  const FiniteSpace& space = *a.codomain();
  Eigen::MatrixXcd m = a.entries();
  for (int x = 0; x < a.rows(); ++x)
    for (int y = 0; y < a.cols(); ++y)
      if (space.dist(x, y) > s) m(x, y) = 0.0;
  return Operator(a.codomain(), a.domain(), std::move(m));
}

DiagonalFunction diag_expectation(const Operator& a) {
  require_square(a, "diag_expectation");
  return DiagonalFunction(a.codomain(), a.entries().diagonal());
}

double spectral_norm(const Eigen::MatrixXcd& m, double tol) {
  require(tol > 0, "spectral norm tolerance must be positive");
  if (m.size() == 0) return 0.0;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;

  // The Gram matrix of the thin side carries the squared singular values.
  const Eigen::MatrixXcd g =
      m.cols() <= m.rows() ? (m.adjoint() * m).eval() : (m * m.adjoint()).eval();
  const Eigen::Index k = g.rows();

  if (k <= kDenseNormLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }

  // Fixed start vector: a deterministic integer-hash pattern, so repeated
  // runs iterate identically.
  Eigen::VectorXcd x(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto h = (static_cast<std::uint64_t>(i) * 2654435761ull) >> 16 & 0xffff;
    x(i) = 0.5 + static_cast<double>(h) / 65536.0;
  }
  x /= x.norm();

  const long cap = 10 * static_cast<long>(k);
  double lambda = 0.0;
  double residual = 0.0;
  for (long it = 0; it < cap; ++it) {
    Eigen::VectorXcd y = g * x;
    lambda = std::max(0.0, y.dot(x).real());
    residual = (y - lambda * x).norm();
    // Hermitian residual bound: the top eigenvalue is within `residual`
    // of lambda, so this certifies the requested relative tolerance.
    if (residual <= tol * std::max(lambda, scale * scale)) return std::sqrt(lambda);
    const double ynorm = y.norm();
    if (ynorm == 0.0) return 0.0;
    x = y / ynorm;
  }
  throw numeric_error("spectral norm power iteration did not converge", residual);
}

double spectral_norm(const Operator& a, double tol) { return spectral_norm(a.entries(), tol); }

bool is_single_diagonal(const Operator& a) {
  std::vector<int> row(static_cast<std::size_t>(a.rows()), 0);
  std::vector<int> col(static_cast<std::size_t>(a.cols()), 0);
  for (int x = 0; x < a.rows(); ++x)
    for (int y = 0; y < a.cols(); ++y)
      if (std::abs(a.entry(x, y)) > kStructuralZero)
        if (++row[x] > 1 || ++col[y] > 1) return false;
  return true;
}

double single_diagonal_norm(const Operator& a) {
  require(is_single_diagonal(a), "single_diagonal_norm needs a single-diagonal operator");
  return a.entries().size() == 0 ? 0.0 : a.entries().cwiseAbs().maxCoeff();
}

Operator partial_isometry(SpacePtr space, const Entourage& e) {
  require(space != nullptr, "partial isometry needs a space");
  require(e.space_size() == space->size(), "entourage does not match the space");
  require(slice_bound(e) <= 1, "partial isometry needs a slice-bound-1 entourage");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space->size(), space->size());
  for (const auto& [x, y] : e.pairs()) m(x, y) = 1.0;
  return Operator(space, space, std::move(m));
}

Operator eps_truncate(const Operator& a, double eps) {
  require(eps > 0, "truncation threshold must be positive");
  require(is_single_diagonal(a), "eps_truncate needs a single-diagonal operator");
  Eigen::MatrixXcd m = a.entries();
  for (int x = 0; x < a.rows(); ++x)
    for (int y = 0; y < a.cols(); ++y)
      if (std::abs(m(x, y)) < eps) m(x, y) = 0.0;
  return Operator(a.codomain(), a.domain(), std::move(m));
}

bool normalizes_diag(const Operator& a) {
  require_square(a, "normalizes_diag");
  return is_single_diagonal(a);
}

}  // namespace roecart
