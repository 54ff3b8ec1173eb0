#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "roecart/tolerances.hpp"

namespace roecart {

// A finite metric space given by an explicit distance matrix.  The matrix is
// validated on construction (zero diagonal, symmetry, strict positivity off
// the diagonal, triangle inequality, all within kMetricTol) and is immutable
// afterwards, so instances can be shared freely across threads.
class FiniteSpace {
 public:
  explicit FiniteSpace(Eigen::MatrixXd dist, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(dist_.rows()); }
  double dist(int x, int y) const { return dist_(x, y); }
  const Eigen::MatrixXd& dist_matrix() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double diameter() const { return diameter_; }

  // Closed ball, ascending indices.
  std::vector<int> ball(int center, double r) const;

  // Bounded-geometry growth: the largest closed-ball cardinality at radius r.
  int growth(double r) const;

  // Sorted distinct values of the metric, always starting at 0.
  const std::vector<double>& distance_values() const { return values_; }

 private:
  Eigen::MatrixXd dist_;
  std::vector<std::string> labels_;
  std::vector<double> values_;
  double diameter_ = 0.0;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

// Two spaces are interchangeable when their metrics agree entry for entry.
bool same_space(const FiniteSpace& a, const FiniteSpace& b);

// {k^2 : 1 <= k <= count} with the metric inherited from the integers.
// Sparse at the far end: consecutive gaps grow linearly.
SpacePtr make_squares_space(int count);

// A set of ordered index pairs over one space, kept sorted and deduplicated
// so equal entourages compare equal and serialize identically.
class Entourage {
 public:
  Entourage(int space_size, std::vector<std::pair<int, int>> pairs);

  int space_size() const { return space_size_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }

  bool contains_pair(int x, int y) const;
  bool subset_of(const Entourage& other) const;
  Entourage union_with(const Entourage& other) const;

  friend bool operator==(const Entourage& a, const Entourage& b) {
    return a.space_size_ == b.space_size_ && a.pairs_ == b.pairs_;
  }

 private:
  int space_size_;
  std::vector<std::pair<int, int>> pairs_;
};

Entourage diagonal_entourage(int space_size);
Entourage metric_entourage(const FiniteSpace& space, double r);
Entourage compose(const Entourage& e, const Entourage& f);
Entourage inverse(const Entourage& e);

// Largest number of pairs sharing one row or one column; 0 for the empty set.
int slice_bound(const Entourage& e);

// Generators of a coarse structure on a fixed space.  The structure they
// generate consists of all subsets of the closure of
// diagonal + generators + inverses under composition and union, so membership
// reduces to containment in that closure.  The closure is computed once, on
// construction; the fixpoint iteration is capped (it cannot fail on valid
// input, the cap guards corrupted pair data).
class CoarseGenerators {
 public:
  CoarseGenerators(SpacePtr space, std::vector<Entourage> generators);

  const SpacePtr& space() const { return space_; }
  const std::vector<Entourage>& generators() const { return generators_; }
  const Entourage& closure() const { return closure_; }

  bool contains(const Entourage& e) const;

 private:
  SpacePtr space_;
  std::vector<Entourage> generators_;
  Entourage closure_;
};

// A map between finite spaces, stored by images of indices.
struct CoarseMap {
  SpacePtr domain;
  SpacePtr codomain;
  std::vector<int> values;
};

// Expansion modulus sampled at the distinct distances of the domain:
// omega(r) = max { d(f(x), f(x')) : d(x, x') <= r }.
std::vector<std::pair<double, double>> expansion_profile(const CoarseMap& f);

// sup_x d(x, g(f(x))); g must run opposite to f.
double closeness(const CoarseMap& f, const CoarseMap& g);

// Certificate that f and g witness a coarse equivalence: both expansion
// profiles plus the two closeness defects.
struct EquivalenceCertificate {
  std::vector<std::pair<double, double>> omega_f;
  std::vector<std::pair<double, double>> omega_g;
  double closeness_domain = 0.0;
  double closeness_codomain = 0.0;
};

EquivalenceCertificate coarse_equivalence(const CoarseMap& f, const CoarseMap& g);

}  // namespace roecart
