#include <doctest.h>

#include <roecart/generate.hpp>

#include "../support/common.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace roecart;
using namespace testsupport;

namespace {

bool is_permutation(const std::vector<int>& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n) return false;
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int y : sigma) {
    if (y < 0 || y >= n) return false;
    if (seen[static_cast<std::size_t>(y)]++) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("generate") {

TEST_CASE("space recipes") {
  const SpacePtr line = generate_space({"interval", 5, {}, 0.0});
  CHECK(line->size() == 5);
  CHECK(line->dist(0, 4) == 4.0);
  CHECK(line->dist(2, 3) == 1.0);
  CHECK(line->labels()[0] == "0");

  const SpacePtr ring = generate_space({"cycle", 6, {}, 0.0});
  CHECK(ring->dist(0, 5) == 1.0);
  CHECK(ring->dist(0, 3) == 3.0);

  // Side-3 grid in row-major order with the taxicab metric.
  const SpacePtr grid = generate_space({"grid", 3, {}, 0.0});
  CHECK(grid->size() == 9);
  CHECK(grid->dist(0, 8) == 4.0);
  CHECK(grid->dist(0, 1) == 1.0);
  CHECK(grid->dist(0, 3) == 1.0);
  CHECK(grid->dist(1, 3) == 2.0);
  CHECK(grid->labels()[4] == "(1,1)");

  const SpacePtr squares = generate_space({"squares", 4, {}, 0.0});
  CHECK(same_space(*squares, *make_squares_space(4)));
  CHECK(squares->dist(0, 3) == 15.0);

  const SpaceSpec pair{"interval", 2, {}, 0.0};
  const SpacePtr glued = generate_space({"union", 0, {pair, pair}, 10.0});
  CHECK(glued->size() == 4);
  CHECK(glued->dist(0, 1) == 1.0);
  CHECK(glued->dist(2, 3) == 1.0);
  CHECK(glued->dist(0, 2) == 10.0);
  CHECK(glued->dist(1, 3) == 10.0);
  CHECK(glued->labels()[2] == "1:0");

  // The cross gap is a metric exactly when twice the gap covers the widest
  // component; the boundary case passes.
  const SpaceSpec wide{"interval", 5, {}, 0.0};
  const SpacePtr tight = generate_space({"union", 0, {wide, wide}, 2.0});
  CHECK(tight->dist(0, 5) == 2.0);
  CHECK_THROWS_AS(generate_space({"union", 0, {wide, wide}, 1.0}), std::invalid_argument);

  CHECK_THROWS_AS(generate_space({"blob", 4, {}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_space({"interval", 0, {}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_space({"union", 0, {pair}, 10.0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_space({"union", 0, {pair, pair}, 0.0}), std::invalid_argument);
}

TEST_CASE("planted permutations") {
  const SpacePtr ring = generate_space({"cycle", 20, {}, 0.0});
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const std::vector<int> sigma = generate_permutation(ring, 3.0, seed);
    CHECK(is_permutation(sigma, 20));
    for (int x = 0; x < 20; ++x) CHECK(ring->dist(x, sigma[static_cast<std::size_t>(x)]) <= 3.0);
    CHECK(generate_permutation(ring, 3.0, seed) == sigma);
  }

  // Displacement zero leaves only the identity.
  std::vector<int> id(20);
  for (int i = 0; i < 20; ++i) id[static_cast<std::size_t>(i)] = i;
  CHECK(generate_permutation(ring, 0.0, 9) == id);

  CHECK_THROWS_AS(generate_permutation(ring, -1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_permutation(nullptr, 1.0, 0), std::invalid_argument);
}

TEST_CASE("planted unitaries") {
  const SpacePtr line = interval_space(6);
  CHECK(max_abs_diff(generate_unitary({0.0, 0.0, 0.0, false}, line, 4),
                     Operator::identity(line)) == 0.0);

  // Pure permutation plan: the matrix is the permutation, entry for entry.
  const SpacePtr ring = cycle_space(12);
  const std::vector<int> sigma = generate_permutation(ring, 3.0, 7);
  const Operator plain = generate_unitary({3.0, 0.0, 0.0, false}, ring, 7);
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y)
      CHECK(plain.entry(x, y) ==
            (y == sigma[static_cast<std::size_t>(x)] ? std::complex<double>(1.0)
                                                     : std::complex<double>(0.0)));

  // Zero-angle rotations change nothing but the draw order.
  const Operator still = generate_unitary({3.0, 1.5, 0.0, false}, ring, 7);
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) {
      const double mag = std::abs(still.entry(x, y));
      CHECK((mag == 0.0 || mag == 1.0));
    }

  // Phases keep the support, rotate the values.
  const Operator phased = generate_unitary({2.0, 0.0, 0.0, true}, ring, 8);
  const std::vector<int> tau = generate_permutation(ring, 2.0, 8);
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) {
      const double mag = std::abs(phased.entry(x, y));
      if (y == tau[static_cast<std::size_t>(x)])
        CHECK(std::abs(mag - 1.0) <= 1e-12);
      else
        CHECK(mag == 0.0);
    }

  CHECK(max_abs_diff(generate_unitary({2.0, 0.0, 0.0, true}, ring, 8), phased) == 0.0);

  // Local rotations stay unitary and keep most of each column's mass home.
  const SpacePtr z16 = interval_space(16);
  const std::vector<int> rho = generate_permutation(z16, 2.0, 11);
  const Operator rotated = generate_unitary({2.0, 2.0, 0.2, true}, z16, 11);
  const Eigen::MatrixXcd& m = rotated.entries();
  CHECK((m.adjoint() * m - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff() <= 1e-10);
  for (int x = 0; x < 16; ++x)
    CHECK(std::norm(rotated.entry(x, rho[static_cast<std::size_t>(x)])) > 0.5);

  CHECK_THROWS_AS(generate_unitary({2.0, 1.0, -0.1, false}, z16, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_unitary({-1.0, 0.0, 0.0, false}, z16, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_unitary({1.0, 0.0, 0.0, false}, nullptr, 0), std::invalid_argument);
}

}  // TEST_SUITE
