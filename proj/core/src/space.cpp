#include "roecart/space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace roecart {

namespace {

void check_index(int i, int n, const char* what) {
  if (i < 0 || i >= n)
    throw std::invalid_argument(std::string(what) + " index out of range: " + std::to_string(i));
}

}  // namespace

FiniteSpace::FiniteSpace(Eigen::MatrixXd dist, std::vector<std::string> labels)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
  const auto n = dist_.rows();
  if (n < 1 || dist_.cols() != n)
    throw std::invalid_argument("distance matrix must be square and nonempty");
  if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != n)
    throw std::invalid_argument("label count does not match point count");

  for (Eigen::Index x = 0; x < n; ++x) {
    if (std::abs(dist_(x, x)) > kMetricTol)
      throw std::invalid_argument("nonzero diagonal in distance matrix");
    dist_(x, x) = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) {
      if (x == y) continue;
      if (!(dist_(x, y) > kMetricTol))
        throw std::invalid_argument("off-diagonal distances must be strictly positive");
      if (std::abs(dist_(x, y) - dist_(y, x)) > kMetricTol)
        throw std::invalid_argument("distance matrix is not symmetric");
    }
  }
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      for (Eigen::Index z = 0; z < n; ++z)
        if (dist_(x, z) > dist_(x, y) + dist_(y, z) + kMetricTol)
          throw std::invalid_argument("triangle inequality fails");

  std::set<double> seen;
  seen.insert(0.0);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = x + 1; y < n; ++y) seen.insert(dist_(x, y));
  values_.assign(seen.begin(), seen.end());
  diameter_ = *seen.rbegin();
}

std::vector<int> FiniteSpace::ball(int center, double r) const {
  check_index(center, size(), "ball center");
  if (r < 0) throw std::invalid_argument("ball radius must be nonnegative");
  std::vector<int> out;
  for (int y = 0; y < size(); ++y)
    if (dist_(center, y) <= r) out.push_back(y);
  return out;
}

int FiniteSpace::growth(double r) const {
  if (r < 0) throw std::invalid_argument("growth radius must be nonnegative");
  int best = 0;
  for (int x = 0; x < size(); ++x) {
    int count = 0;
    for (int y = 0; y < size(); ++y)
      if (dist_(x, y) <= r) ++count;
    best = std::max(best, count);
  }
  return best;
}

bool same_space(const FiniteSpace& a, const FiniteSpace& b) {
  return a.size() == b.size() && a.dist_matrix() == b.dist_matrix();
}

SpacePtr make_squares_space(int count) {
  if (count < 1) throw std::invalid_argument("squares space needs at least one point");
  Eigen::MatrixXd dist(count, count);
  std::vector<std::string> labels(count);
  for (int i = 0; i < count; ++i) {
    const double pi = static_cast<double>(i + 1) * (i + 1);
    labels[i] = std::to_string(static_cast<long long>(pi));
    for (int j = 0; j < count; ++j) {
      const double pj = static_cast<double>(j + 1) * (j + 1);
      dist(i, j) = std::abs(pi - pj);
    }
  }
  return std::make_shared<FiniteSpace>(std::move(dist), std::move(labels));
}

Entourage::Entourage(int space_size, std::vector<std::pair<int, int>> pairs)
    : space_size_(space_size), pairs_(std::move(pairs)) {
  if (space_size_ < 1) throw std::invalid_argument("entourage needs a positive space size");
  for (const auto& [x, y] : pairs_) {
    check_index(x, space_size_, "entourage pair");
    check_index(y, space_size_, "entourage pair");
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool Entourage::contains_pair(int x, int y) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(x, y));
}

bool Entourage::subset_of(const Entourage& other) const {
  if (space_size_ != other.space_size_) return false;
  return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

Entourage Entourage::union_with(const Entourage& other) const {
  if (space_size_ != other.space_size_)
    throw std::invalid_argument("entourage union across different spaces");
  std::vector<std::pair<int, int>> merged;
  merged.reserve(pairs_.size() + other.pairs_.size());
  std::merge(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end(),
             std::back_inserter(merged));
  return Entourage(space_size_, std::move(merged));
}

Entourage diagonal_entourage(int space_size) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(space_size);
  for (int x = 0; x < space_size; ++x) pairs.emplace_back(x, x);
  return Entourage(space_size, std::move(pairs));
}

Entourage metric_entourage(const FiniteSpace& space, double r) {
  if (r < 0) throw std::invalid_argument("metric entourage radius must be nonnegative");
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < space.size(); ++x)
    for (int y = 0; y < space.size(); ++y)
      if (space.dist(x, y) <= r) pairs.emplace_back(x, y);
  return Entourage(space.size(), std::move(pairs));
}

Entourage compose(const Entourage& e, const Entourage& f) {
  if (e.space_size() != f.space_size())
    throw std::invalid_argument("entourage composition across different spaces");
  const int n = e.space_size();
  // Row lists of f: y -> all z with (y, z) in f.
  std::vector<std::vector<int>> rows_f(n);
  for (const auto& [y, z] : f.pairs()) rows_f[y].push_back(z);

  std::vector<std::pair<int, int>> pairs;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int current_row = -1;
  auto flush = [&](int row) {
    for (std::size_t z = 0; z < seen.size(); ++z)
      if (seen[z]) {
        pairs.emplace_back(row, static_cast<int>(z));
        seen[z] = 0;
      }
  };
  for (const auto& [x, y] : e.pairs()) {
    if (x != current_row) {
      if (current_row >= 0) flush(current_row);
      current_row = x;
    }
    for (int z : rows_f[y]) seen[z] = 1;
  }
  if (current_row >= 0) flush(current_row);
  return Entourage(n, std::move(pairs));
}

Entourage inverse(const Entourage& e) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(e.size());
  for (const auto& [x, y] : e.pairs()) pairs.emplace_back(y, x);
  return Entourage(e.space_size(), std::move(pairs));
}

int slice_bound(const Entourage& e) {
  std::vector<int> row(static_cast<std::size_t>(e.space_size()), 0);
  std::vector<int> col(static_cast<std::size_t>(e.space_size()), 0);
  int best = 0;
  for (const auto& [x, y] : e.pairs()) {
    best = std::max(best, ++row[x]);
    best = std::max(best, ++col[y]);
  }
  return best;
}

CoarseGenerators::CoarseGenerators(SpacePtr space, std::vector<Entourage> generators)
    : space_(std::move(space)),
      generators_(std::move(generators)),
      closure_(diagonal_entourage(space_ ? space_->size() : 1)) {
  if (!space_) throw std::invalid_argument("coarse generators need a space");
  Entourage u = diagonal_entourage(space_->size());
  for (const auto& g : generators_) {
    if (g.space_size() != space_->size())
      throw std::invalid_argument("generator does not match the space");
    u = u.union_with(g).union_with(inverse(g));
  }
  // Fixpoint of U -> U + U o U.  Every composition of members of the
  // generated structure is a subset of the final U, so one set suffices.
  const long cap = static_cast<long>(space_->size()) * space_->size();
  for (long step = 0;; ++step) {
    Entourage next = u.union_with(compose(u, u));
    if (next == u) break;
    if (step >= cap) throw std::runtime_error("coarse closure failed to stabilize");
    u = std::move(next);
  }
  closure_ = std::move(u);
}

bool CoarseGenerators::contains(const Entourage& e) const {
  if (e.space_size() != space_->size())
    throw std::invalid_argument("entourage does not match the space");
  return e.subset_of(closure_);
}

namespace {

void check_map(const CoarseMap& f) {
  if (!f.domain || !f.codomain) throw std::invalid_argument("coarse map needs both spaces");
  if (static_cast<int>(f.values.size()) != f.domain->size())
    throw std::invalid_argument("coarse map must assign every domain point");
  for (int v : f.values) check_index(v, f.codomain->size(), "coarse map value");
}

}  // namespace

std::vector<std::pair<double, double>> expansion_profile(const CoarseMap& f) {
  check_map(f);
  std::vector<std::pair<double, double>> profile;
  for (double r : f.domain->distance_values()) {
    double omega = 0.0;
    for (int x = 0; x < f.domain->size(); ++x)
      for (int y = 0; y < f.domain->size(); ++y)
        if (f.domain->dist(x, y) <= r)
          omega = std::max(omega, f.codomain->dist(f.values[x], f.values[y]));
    profile.emplace_back(r, omega);
  }
  return profile;
}

double closeness(const CoarseMap& f, const CoarseMap& g) {
  check_map(f);
  check_map(g);
  if (!same_space(*f.codomain, *g.domain) || !same_space(*f.domain, *g.codomain))
    throw std::invalid_argument("closeness needs maps running in opposite directions");
  double worst = 0.0;
  for (int x = 0; x < f.domain->size(); ++x)
    worst = std::max(worst, f.domain->dist(x, g.values[f.values[x]]));
  return worst;
}

EquivalenceCertificate coarse_equivalence(const CoarseMap& f, const CoarseMap& g) {
  EquivalenceCertificate cert;
  cert.omega_f = expansion_profile(f);
  cert.omega_g = expansion_profile(g);
  cert.closeness_domain = closeness(f, g);
  cert.closeness_codomain = closeness(g, f);
  return cert;
}

}  // namespace roecart
