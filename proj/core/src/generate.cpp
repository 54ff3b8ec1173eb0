#include "roecart/generate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace roecart {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Explicit mappings from raw 64-bit draws keep the byte stream identical
// across standard libraries; std::shuffle and the distribution classes are
// implementation-defined.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

SpacePtr make_line_space(int n, bool cyclic) {
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int gap = std::abs(i - j);
      d(i, j) = cyclic ? std::min(gap, n - gap) : gap;
    }
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return std::make_shared<const FiniteSpace>(std::move(d), std::move(labels));
}

SpacePtr make_grid_space(int side) {
  const int n = side * side;
  Eigen::MatrixXd d(n, n);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    labels.push_back("(" + std::to_string(i / side) + "," + std::to_string(i % side) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d(i, j) = std::abs(i / side - j / side) + std::abs(i % side - j % side);
  return std::make_shared<const FiniteSpace>(std::move(d), std::move(labels));
}

SpacePtr make_union_space(const SpaceSpec& spec) {
  require(spec.parts.size() >= 2, "union needs at least two parts");
  require(spec.gap > 0.0, "union gap must be positive");
  std::vector<SpacePtr> parts;
  int total = 0;
  double widest = 0.0;
  for (const auto& p : spec.parts) {
    parts.push_back(generate_space(p));
    total += parts.back()->size();
    widest = std::max(widest, parts.back()->diameter());
  }
  // Constant cross distance g is a metric iff 2g covers every within-part
  // distance (triangle route through the other component).
  require(2.0 * spec.gap >= widest, "union gap too small for the component diameters");

  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(total, total, spec.gap);
  std::vector<std::string> labels(static_cast<std::size_t>(total));
  int offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int m = parts[k]->size();
    d.block(offset, offset, m, m) = parts[k]->dist_matrix();
    for (int i = 0; i < m; ++i)
      labels[static_cast<std::size_t>(offset + i)] =
          std::to_string(k) + ":" + parts[k]->labels()[static_cast<std::size_t>(i)];
    offset += m;
  }
  return std::make_shared<const FiniteSpace>(std::move(d), std::move(labels));
}

std::vector<int> sample_permutation(std::mt19937_64& rng, const FiniteSpace& space,
                                    double displacement) {
  require(displacement >= 0.0, "displacement bound cannot be negative");
  const int n = space.size();
  std::vector<std::vector<int>> allowed(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) allowed[static_cast<std::size_t>(x)] = space.ball(x, displacement);

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[bounded(rng, i)]);

  std::vector<int> sigma(static_cast<std::size_t>(n), -1);
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (int x : order) {
    std::vector<int> open;
    for (int y : allowed[static_cast<std::size_t>(x)])
      if (owner[static_cast<std::size_t>(y)] < 0) open.push_back(y);
    if (open.empty()) continue;
    const int y = open[bounded(rng, open.size())];
    sigma[static_cast<std::size_t>(x)] = y;
    owner[static_cast<std::size_t>(y)] = x;
  }

  // Augmenting-path completion; displaces greedy picks when necessary and
  // fails only if no permutation fits the bound at all.
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  auto augment = [&](auto&& self, int x) -> bool {
    for (int y : allowed[static_cast<std::size_t>(x)]) {
      if (visited[static_cast<std::size_t>(y)]) continue;
      visited[static_cast<std::size_t>(y)] = 1;
      const int other = owner[static_cast<std::size_t>(y)];
      if (other < 0 || self(self, other)) {
        sigma[static_cast<std::size_t>(x)] = y;
        owner[static_cast<std::size_t>(y)] = x;
        return true;
      }
    }
    return false;
  };
  for (int x = 0; x < n; ++x) {
    if (sigma[static_cast<std::size_t>(x)] >= 0) continue;
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(augment, x))
      throw std::invalid_argument("displacement bound admits no permutation");
  }
  return sigma;
}

}  // namespace

SpacePtr generate_space(const SpaceSpec& spec) {
  if (spec.kind == "union") return make_union_space(spec);
  require(spec.size >= 1, "space size must be at least 1");
  if (spec.kind == "interval") return make_line_space(spec.size, false);
  if (spec.kind == "cycle") return make_line_space(spec.size, true);
  if (spec.kind == "grid") return make_grid_space(spec.size);
  if (spec.kind == "squares") return make_squares_space(spec.size);
  throw std::invalid_argument("unknown space kind: " + spec.kind);
}

std::vector<int> generate_permutation(const SpacePtr& space, double displacement,
                                      std::uint64_t seed) {
  require(space != nullptr, "permutation needs a space");
  std::mt19937_64 rng(seed);
  return sample_permutation(rng, *space, displacement);
}

Operator generate_unitary(const UnitaryPlan& plan, const SpacePtr& space, std::uint64_t seed) {
  require(space != nullptr, "unitary needs a space");
  const int n = space->size();
  std::mt19937_64 rng(seed);
  const std::vector<int> sigma = sample_permutation(rng, *space, plan.displacement);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  if (plan.rotation_radius > 0.0) {
    require(plan.rotation_angle >= 0.0, "rotation angle cannot be negative");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (space->dist(i, j) > plan.rotation_radius) continue;
        const double angle = plan.rotation_angle * (2.0 * unit_double(rng) - 1.0);
        const double c = std::cos(angle), s = std::sin(angle);
        // Right multiplication by the plane rotation touches columns i, j.
        const Eigen::VectorXcd ci = m.col(i);
        m.col(i) = c * ci + s * m.col(j);
        m.col(j) = -s * ci + c * m.col(j);
      }
  }
  if (plan.randomize_phases)
    for (int y = 0; y < n; ++y) {
      const double phi = 2.0 * std::numbers::pi * unit_double(rng);
      m.col(y) *= std::complex<double>(std::cos(phi), std::sin(phi));
    }
  // Row permutation: row x of the product reads row sigma(x) of m, giving
  // (P R D)(x, y) with P e_{sigma(x)} = e_x.
  Eigen::MatrixXcd v(n, n);
  for (int x = 0; x < n; ++x) v.row(x) = m.row(sigma[static_cast<std::size_t>(x)]);

  const double defect =
      (v.adjoint() * v - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw numeric_error("generated matrix drifted from unitarity", defect);
  return Operator(space, space, std::move(v));
}

}  // namespace roecart
