#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "roecart/cartan.hpp"
#include "roecart/matching.hpp"
#include "roecart/operators.hpp"
#include "roecart/space.hpp"

namespace roecart {

// delta-localization of a unitary v: X_{y,delta} collects the x carrying at
// least delta of the squared column mass, |v_xy|^2 >= delta.  Column masses
// sum to 1, so each set has at most floor(1/delta) members.
struct SupportSets {
  double delta = 0.0;
  std::vector<std::vector<int>> x_of_y;
  std::vector<std::vector<int>> y_of_x;
  // Metric diameter of each X_{y,delta}; 0 for empty and singleton sets.
  std::vector<double> x_set_diameter;
};

SupportSets support_sets(const Operator& v, double delta);

// Descending {1/2, 1/4, ..., 2^-20}.
std::vector<double> default_delta_grid();

// Raised by recover_bijection when no grid delta passes the two-sided Hall
// check.  A meaningful negative outcome, kept apart from plain input errors
// so callers can report it as such.
class delta_selection_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest grid delta whose support graph admits a Y-saturating matching and
// whose transpose admits an X-saturating matching.  nullopt when the grid is
// exhausted.
std::optional<double> select_delta(const Operator& v, const std::vector<double>& grid);

struct RecoveryReport {
  double delta = 0.0;
  std::vector<int> f;  // injection Y -> X, f(y) in X_{y,delta}
  std::vector<int> g;  // injection X -> Y, g(x) in Y_{x,delta}
  std::vector<int> h;  // bijection X -> Y from the two injections
  Operator u;          // correcting unitary w* v*, w the permutation of h
  std::vector<std::pair<double, double>> band_error;          // s -> ||u - trunc(u, s)||
  std::vector<std::pair<double, std::pair<double, double>>> ql;  // s -> (lower, upper)
  // max_x d_Y(h(x), sigma(x)) against a planted permutation, when supplied.
  std::optional<double> displacement;
  double unitary_defect = 0.0;       // ||u*u - I||_max
  double conjugation_residual = 0.0; // ||u v - w*||_max
};

// Full recovery pipeline: delta selection, two Hall matchings, the
// injections-to-bijection step, w and u = w* v*, plus quantitative profiles.
RecoveryReport recover_bijection(const Operator& v, const SpacePtr& x_space,
                                 const SpacePtr& y_space, const std::vector<double>& grid,
                                 const std::vector<int>* planted = nullptr);

// For each s: upper = ||u - band_truncate(u, s)||, a bound on ||p_C u p_D||
// over all C, D with d(C, D) > s; lower = the max of ||p_C u p_D|| over the
// surrogate family C = B(x, rho), D = complement of the s-neighbourhood of C.
std::vector<std::pair<double, std::pair<double, double>>> quasilocality_profile(
    const Operator& u, const std::vector<double>& s_values);

struct OnlWitness {
  double r = 0.0;
  int center = 0;
  Eigen::VectorXcd xi;  // unit vector supported in B(center, r)
  double achieved = 0.0;  // ||a xi||
};

// Smallest grid r such that some ball B(x, r) norms a up to (1 - eps):
// ||a p_B|| >= (1 - eps) ||a||.  xi is the top right-singular vector of the
// restricted columns, embedded in the full space.
OnlWitness onl_witness(const Operator& a, double eps);

// For each s: a lower estimate of sup_D ||v q_D v* - band_truncate(v q_D v*, s)||
// where q_D projects onto the frame lines indexed by D.  The sup runs over a
// disclosed family (singletons, full set, complements of singletons, seeded
// random subsets), so the estimate never exceeds the true sup.
struct BandProfile {
  std::vector<double> s_values;
  std::vector<double> estimate;  // same indexing as s_values
  int family_size = 0;
};

BandProfile uniform_band_profile(const Operator& v, const MasaFrame& frame,
                                 const std::vector<double>& s_values, int random_subsets,
                                 std::uint64_t seed);

// Smallest listed s with estimate(s) <= eps, if any.  A lower estimate of the
// profile gives a lower bound on the true band scale.
std::optional<double> band_scale_for(const BandProfile& profile, double eps);

}  // namespace roecart
