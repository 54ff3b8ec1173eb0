#include "roecart/rigidity.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace roecart {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_unitary(const Operator& v, const char* who) {
  if (v.rows() != v.cols())
    throw std::invalid_argument(std::string(who) + " needs a square matrix");
  const auto& m = v.entries();
  const double defect =
      (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTol)
    throw std::invalid_argument(std::string(who) + " needs a unitary operator");
}

Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& m, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

std::vector<int> all_indices(int n) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  return idx;
}

}  // namespace

SupportSets support_sets(const Operator& v, double delta) {
  require_unitary(v, "support_sets");
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  const int n = v.rows();
  SupportSets s;
  s.delta = delta;
  s.x_of_y.assign(static_cast<std::size_t>(n), {});
  s.y_of_x.assign(static_cast<std::size_t>(n), {});
  // ||v q_y v* p_x|| is the norm of a rank-one product and equals |v_xy|,
  // so membership reads straight off the squared entry.
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (std::norm(v.entry(x, y)) >= delta) {
        s.x_of_y[static_cast<std::size_t>(y)].push_back(x);
        s.y_of_x[static_cast<std::size_t>(x)].push_back(y);
      }
  const FiniteSpace& xs = *v.codomain();
  s.x_set_diameter.assign(static_cast<std::size_t>(n), 0.0);
  for (int y = 0; y < n; ++y) {
    const auto& set = s.x_of_y[static_cast<std::size_t>(y)];
    double d = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = i + 1; j < set.size(); ++j) d = std::max(d, xs.dist(set[i], set[j]));
    s.x_set_diameter[static_cast<std::size_t>(y)] = d;
  }
  return s;
}

std::vector<double> default_delta_grid() {
  std::vector<double> grid;
  grid.reserve(20);
  for (int k = 1; k <= 20; ++k) grid.push_back(std::ldexp(1.0, -k));
  return grid;
}

std::optional<double> select_delta(const Operator& v, const std::vector<double>& grid) {
  require_unitary(v, "select_delta");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(grid[i] > 0.0 && grid[i] <= 1.0, "grid values must lie in (0, 1]");
    require(i == 0 || grid[i] < grid[i - 1], "grid must be strictly descending");
  }
  const int n = v.rows();
  for (double delta : grid) {
    const SupportSets s = support_sets(v, delta);
    const HallResult forward = hall_matching(BipartiteGraph(n, n, s.x_of_y));
    if (!forward.matching || forward.matching->size != n) continue;
    const HallResult backward = hall_matching(BipartiteGraph(n, n, s.y_of_x));
    if (!backward.matching || backward.matching->size != n) continue;
    return delta;
  }
  return std::nullopt;
}

RecoveryReport recover_bijection(const Operator& v, const SpacePtr& x_space,
                                 const SpacePtr& y_space, const std::vector<double>& grid,
                                 const std::vector<int>* planted) {
  require(x_space != nullptr && y_space != nullptr, "recovery needs both spaces");
  require(x_space->size() == y_space->size(), "spaces must have equal size");
  require_unitary(v, "recover_bijection");
  require(v.rows() == x_space->size(), "operator size does not match the spaces");
  require(same_space(*v.codomain(), *x_space) && same_space(*v.domain(), *y_space),
          "operator spaces do not match the given spaces");
  const int n = x_space->size();

  const std::optional<double> delta = select_delta(v, grid);
  if (!delta)
    throw delta_selection_error("no grid delta admits two-sided saturating matchings");
  const SupportSets s = support_sets(v, *delta);

  // f(y) in X_{y,delta} and g(x) in Y_{x,delta}, both saturating by the
  // delta selection; then the two-injections step yields the bijection.
  const HallResult forward = hall_matching(BipartiteGraph(n, n, s.x_of_y));
  const HallResult backward = hall_matching(BipartiteGraph(n, n, s.y_of_x));
  std::vector<int> f = forward.matching->left_to_right;
  std::vector<int> g = backward.matching->left_to_right;
  std::vector<int> h = konig_csb(f, g);

  // w delta_x = delta_{h(x)}; the correcting unitary is u = w* v*, and
  // u v = w* holds by construction up to rounding.
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int x = 0; x < n; ++x) w(h[static_cast<std::size_t>(x)], x) = 1.0;
  const Operator w_op(y_space, x_space, w);
  Operator u = w_op.adjoint() * v.adjoint();

  const double defect =
      (u.entries().adjoint() * u.entries() - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  const double residual =
      (u.entries() * v.entries() - w.adjoint()).cwiseAbs().maxCoeff();

  std::vector<std::pair<double, double>> band;
  for (double sv : x_space->distance_values())
    band.emplace_back(sv, spectral_norm(u - band_truncate(u, sv)));

  // The quasilocality scan is quadratic in the family, so its s grid is the
  // geometric subsample of the distance values rather than all of them.
  std::vector<double> ql_grid;
  const auto& values = x_space->distance_values();
  for (std::size_t idx = 0; idx < values.size(); idx = idx == 0 ? 1 : idx * 2)
    ql_grid.push_back(values[idx]);
  auto ql = quasilocality_profile(u, ql_grid);

  std::optional<double> displacement;
  if (planted != nullptr) {
    require(static_cast<int>(planted->size()) == n, "planted permutation has wrong size");
    double d = 0.0;
    for (int x = 0; x < n; ++x)
      d = std::max(d, y_space->dist(h[static_cast<std::size_t>(x)],
                                    (*planted)[static_cast<std::size_t>(x)]));
    displacement = d;
  }

  return RecoveryReport{*delta,
                        std::move(f),
                        std::move(g),
                        std::move(h),
                        std::move(u),
                        std::move(band),
                        std::move(ql),
                        displacement,
                        defect,
                        residual};
}

std::vector<std::pair<double, std::pair<double, double>>> quasilocality_profile(
    const Operator& u, const std::vector<double>& s_values) {
  require(u.is_square(), "quasilocality needs a square operator");
  const FiniteSpace& space = *u.codomain();
  const int n = space.size();

  // Surrogate ball family: every center, radii geometrically subsampled from
  // the distance values so the family stays small on large spaces.
  std::vector<double> radii;
  const auto& values = space.distance_values();
  for (std::size_t idx = 0; idx < values.size(); idx = idx == 0 ? 1 : idx * 2)
    radii.push_back(values[idx]);

  std::vector<double> lower(s_values.size(), 0.0);
  for (int x = 0; x < n; ++x)
    for (double rho : radii) {
      const std::vector<int> c = space.ball(x, rho);
      // Distance from each point to C, for carving out the complements.
      std::vector<double> dist_c(static_cast<std::size_t>(n),
                                 std::numeric_limits<double>::infinity());
      for (int z = 0; z < n; ++z)
        for (int cc : c) dist_c[static_cast<std::size_t>(z)] =
            std::min(dist_c[static_cast<std::size_t>(z)], space.dist(z, cc));
      for (std::size_t si = 0; si < s_values.size(); ++si) {
        std::vector<int> d;
        for (int z = 0; z < n; ++z)
          if (dist_c[static_cast<std::size_t>(z)] > s_values[si]) d.push_back(z);
        if (d.empty()) continue;
        lower[si] = std::max(lower[si], spectral_norm(submatrix(u.entries(), c, d)));
      }
    }

  std::vector<std::pair<double, std::pair<double, double>>> out;
  out.reserve(s_values.size());
  for (std::size_t si = 0; si < s_values.size(); ++si) {
    const double upper = spectral_norm(u - band_truncate(u, s_values[si]));
    out.emplace_back(s_values[si], std::make_pair(lower[si], upper));
  }
  return out;
}

OnlWitness onl_witness(const Operator& a, double eps) {
  require(a.entries().cwiseAbs().maxCoeff() > 0.0, "witness needs a nonzero operator");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  const double norm_a = spectral_norm(a);
  const FiniteSpace& domain = *a.domain();
  const int cols = a.cols();
  const std::vector<int> all_rows = all_indices(a.rows());

  // The full matrix is one of the scanned blocks at r = diameter, so the
  // scan always terminates with a witness.
  for (double r : domain.distance_values()) {
    double best = -1.0;
    int best_center = 0;
    for (int x = 0; x < cols; ++x) {
      const double nrm = spectral_norm(submatrix(a.entries(), all_rows, domain.ball(x, r)));
      if (nrm > best) {
        best = nrm;
        best_center = x;
      }
    }
    if (best < (1.0 - eps) * norm_a) continue;

    const std::vector<int> ball = domain.ball(best_center, r);
    const Eigen::MatrixXcd block = submatrix(a.entries(), all_rows, ball);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block.adjoint() * block);
    Eigen::VectorXcd local = es.eigenvectors().col(es.eigenvectors().cols() - 1);
    // Canonical phase: the largest component is made real positive so equal
    // inputs serialize identically.
    Eigen::Index peak = 0;
    local.cwiseAbs().maxCoeff(&peak);
    const std::complex<double> ph = local(peak);
    if (std::abs(ph) > 0.0) local *= std::conj(ph) / std::abs(ph);

    OnlWitness w;
    w.r = r;
    w.center = best_center;
    w.xi = Eigen::VectorXcd::Zero(cols);
    for (std::size_t i = 0; i < ball.size(); ++i) w.xi(ball[i]) = local(static_cast<Eigen::Index>(i));
    w.achieved = (a.entries() * w.xi).norm();
    return w;
  }
  throw numeric_error("witness scan exhausted the distance grid", norm_a);
}

BandProfile uniform_band_profile(const Operator& v, const MasaFrame& frame,
                                 const std::vector<double>& s_values, int random_subsets,
                                 std::uint64_t seed) {
  require_unitary(v, "uniform_band_profile");
  require(same_space(*frame.space(), *v.domain()), "frame must live on the operator domain");
  require(random_subsets >= 0, "subset count cannot be negative");
  const int n = v.cols();

  // v q_D v* = W p_D W* with W = v V, so each family member costs one thin
  // product over its index set.
  const Eigen::MatrixXcd w = v.entries() * frame.matrix();

  std::vector<std::vector<int>> family;
  for (int y = 0; y < n; ++y) family.push_back({y});
  family.push_back(all_indices(n));
  for (int y = 0; y < n; ++y) {
    std::vector<int> complement;
    for (int z = 0; z < n; ++z)
      if (z != y) complement.push_back(z);
    family.push_back(std::move(complement));
  }
  std::mt19937_64 gen(seed);
  for (int k = 0; k < random_subsets; ++k) {
    std::vector<int> subset;
    for (int y = 0; y < n; ++y)
      if (gen() & 1ull) subset.push_back(y);
    family.push_back(std::move(subset));
  }

  BandProfile profile;
  profile.s_values = s_values;
  profile.estimate.assign(s_values.size(), 0.0);
  profile.family_size = static_cast<int>(family.size());

  const SpacePtr& xs = v.codomain();
  for (const auto& subset : family) {
    if (subset.empty()) continue;
    Eigen::MatrixXcd cols(n, static_cast<Eigen::Index>(subset.size()));
    for (std::size_t j = 0; j < subset.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = w.col(subset[j]);
    const Operator m(xs, xs, cols * cols.adjoint());
    for (std::size_t si = 0; si < s_values.size(); ++si)
      profile.estimate[si] =
          std::max(profile.estimate[si], spectral_norm(m - band_truncate(m, s_values[si])));
  }
  return profile;
}

std::optional<double> band_scale_for(const BandProfile& profile, double eps) {
  std::optional<double> best;
  for (std::size_t i = 0; i < profile.s_values.size(); ++i)
    if (profile.estimate[i] <= eps && (!best || profile.s_values[i] < *best))
      best = profile.s_values[i];
  return best;
}

}  // namespace roecart
