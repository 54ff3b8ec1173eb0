#include <doctest.h>

#include <roecart/operators.hpp>

#include "../support/common.hpp"
#include "../support/oracles.hpp"

#include <complex>
#include <limits>
#include <random>
#include <vector>

using namespace roecart;
using namespace testsupport;

namespace {

Operator random_square(std::mt19937_64& rng, const SpacePtr& s) {
  return square_op(s, oracles::random_matrix(rng, s->size(), s->size()));
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("construction and arithmetic") {
  const SpacePtr z3 = interval_space(3);
  const SpacePtr z2 = interval_space(2);

  const Operator id = Operator::identity(z3);
  const Operator zero = Operator::zero(z3, z2);
  CHECK(id.is_square());
  CHECK_FALSE(zero.is_square());
  CHECK(zero.rows() == 3);
  CHECK(zero.cols() == 2);

  std::mt19937_64 rng(9);
  const Operator a = random_square(rng, z3);
  const Operator b = random_square(rng, z3);
  CHECK(max_abs_diff(a * id, a) == 0.0);
  CHECK(max_abs_diff((a + b) - b, a) <= 1e-15);
  CHECK(max_abs_diff(a.adjoint().adjoint(), a) == 0.0);
  CHECK(max_abs_diff((a * b).adjoint(), b.adjoint() * a.adjoint()) <= 1e-12);
  CHECK(max_abs_diff(a.scaled(2.0), a + a) <= 1e-15);

  Eigen::MatrixXcd wrong(2, 2);
  wrong.setZero();
  CHECK_THROWS_AS(Operator(z3, z3, wrong), std::invalid_argument);
  const Operator on_two = Operator::identity(z2);
  CHECK_THROWS_AS(id + on_two, std::invalid_argument);
  CHECK_THROWS_AS(id * on_two, std::invalid_argument);
}

TEST_CASE("support reads the structural nonzeros") {
  const SpacePtr z4 = interval_space(4);
  CHECK(support(Operator::identity(z4)) == diagonal_entourage(4));
  CHECK(support(cyclic_shift(z4)) == ent(4, {{0, 3}, {1, 0}, {2, 1}, {3, 2}}));
  CHECK(support(Operator::zero(z4, z4)).empty());

  // Entries at the structural-zero threshold do not register.
  Eigen::MatrixXcd tiny = Eigen::MatrixXcd::Zero(4, 4);
  tiny(0, 3) = 5e-13;
  CHECK(support(square_op(z4, tiny)).empty());

  CHECK_THROWS_AS(support(Operator::zero(z4, interval_space(3))), std::invalid_argument);
}

TEST_CASE("propagation on the example operators") {
  const SpacePtr z10 = interval_space(10);
  CHECK(propagation(Operator::identity(z10)) == 0.0);
  CHECK(propagation(path_shift(z10)) == 1.0);
  CHECK(propagation(flip_op(z10)) == 9.0);
  CHECK_FALSE(propagation(Operator::zero(z10, z10)).has_value());
}

TEST_CASE("band truncation") {
  const SpacePtr z4 = interval_space(4);
  std::mt19937_64 rng(21);

  CHECK(max_abs_diff(band_truncate(path_shift(z4), 0), Operator::zero(z4, z4)) == 0.0);

  Eigen::MatrixXcd tri = Eigen::MatrixXcd::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    tri(k, k) = 1.0;
    if (k + 1 < 4) {
      tri(k, k + 1) = 2.0;
      tri(k + 1, k) = 3.0;
    }
  }
  const Operator tridiag = square_op(z4, tri);
  CHECK(max_abs_diff(band_truncate(tridiag, 1), tridiag) == 0.0);

  for (int trial = 0; trial < 20; ++trial) {
    const Operator a = random_square(rng, z4);
    const double prop = propagation(a).value();
    CHECK(max_abs_diff(band_truncate(a, prop), a) == 0.0);
    const double s = static_cast<double>(oracles::pick(rng, 4));
    const Operator t = band_truncate(a, s);
    CHECK(max_abs_diff(band_truncate(t, s), t) == 0.0);
    if (const auto p = propagation(t)) CHECK(*p <= s);
  }

  // Truncation error is nonincreasing in s and zero at the propagation.
  const Operator a = random_square(rng, interval_space(6));
  double previous = std::numeric_limits<double>::infinity();
  for (double s : a.codomain()->distance_values()) {
    const double err = spectral_norm(a - band_truncate(a, s));
    CHECK(err <= previous + 1e-12);
    previous = err;
  }
  CHECK(spectral_norm(a - band_truncate(a, propagation(a).value())) == 0.0);
}

TEST_CASE("diagonal expectation") {
  const SpacePtr z3 = interval_space(3);
  const Operator d = diag_op(z3, {1.0, {0.0, 2.0}, -3.0});
  CHECK((diag_expectation(d).values() -
         Eigen::Vector3cd(1.0, std::complex<double>(0.0, 2.0), -3.0))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(diag_expectation(cyclic_shift(z3)).values().cwiseAbs().maxCoeff() == 0.0);

  const SpacePtr z2 = interval_space(2);
  CHECK((diag_expectation(square_op(z2, Eigen::MatrixXcd::Ones(2, 2))).values() -
         Eigen::Vector2cd(1.0, 1.0))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator a = random_square(rng, z3);
    const Operator e = diag_expectation(a).to_operator();
    // Idempotent, contractive, positive and faithful on a*a.
    CHECK(max_abs_diff(diag_expectation(e).to_operator(), e) == 0.0);
    CHECK(spectral_norm(e) <= spectral_norm(a) + 1e-9);
    const auto gram = diag_expectation(a.adjoint() * a).values();
    for (int k = 0; k < 3; ++k) {
      CHECK(gram(k).imag() == 0.0);
      CHECK(gram(k).real() >= 0.0);
    }
    if (spectral_norm(a) > 1e-9) CHECK(gram.cwiseAbs().maxCoeff() > 0.0);
  }
}

TEST_CASE("spectral norm matches the dense oracle") {
  const SpacePtr z3 = interval_space(3);
  CHECK(spectral_norm(diag_op(z3, {3.0, 4.0, -5.0})) == doctest::Approx(5.0).epsilon(1e-12));

  // Rank-one projection from a unit vector.
  Eigen::Vector3cd xi(0.6, 0.0, 0.8);
  Eigen::MatrixXcd proj = xi * xi.adjoint();
  CHECK(spectral_norm(square_op(z3, proj)) == doctest::Approx(1.0).epsilon(1e-9));

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::MatrixXcd m = oracles::random_matrix(rng, 4, 4);
    CHECK(spectral_norm(m) == doctest::Approx(oracles::dense_norm(m)).epsilon(1e-9));
  }

  // Rectangular input and the power-iteration path beyond the dense limit.
  const Eigen::MatrixXcd rect = oracles::random_matrix(rng, 5, 3);
  CHECK(spectral_norm(rect) == doctest::Approx(oracles::dense_norm(rect)).epsilon(1e-9));
  const Eigen::MatrixXcd big = oracles::random_matrix(rng, 80, 80);
  CHECK(spectral_norm(big) == doctest::Approx(oracles::dense_norm(big)).epsilon(1e-8));
  CHECK(spectral_norm(Eigen::MatrixXcd::Zero(80, 80)) == 0.0);

  CHECK_THROWS_AS(spectral_norm(big, -1.0), std::invalid_argument);
}

TEST_CASE("single-diagonal predicates and the entry-norm law") {
  const SpacePtr z3 = interval_space(3);
  CHECK(is_single_diagonal(Operator::identity(z3)));
  CHECK(is_single_diagonal(cyclic_shift(z3)));

  Eigen::MatrixXcd two = Eigen::MatrixXcd::Zero(3, 3);
  two(0, 1) = 1.0;
  two(0, 2) = 1.0;
  CHECK_FALSE(is_single_diagonal(square_op(z3, two)));

  // Entries {3, 4i} on disjoint rows and columns: the norm is the sup.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 1) = 3.0;
  m(2, 0) = {0.0, 4.0};
  const Operator a = square_op(z3, m);
  CHECK(single_diagonal_norm(a) == 4.0);
  CHECK(std::abs(spectral_norm(a) - 4.0) <= 1e-10);

  CHECK(single_diagonal_norm(Operator::identity(z3)) == 1.0);
  CHECK(single_diagonal_norm(Operator::zero(z3, z3)) == 0.0);
  CHECK_THROWS_AS(single_diagonal_norm(square_op(z3, two)), std::invalid_argument);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(oracles::pick(rng, 15));
    const Operator sd = square_op(interval_space(n), oracles::random_single_diagonal(rng, n));
    CHECK(std::abs(spectral_norm(sd) - single_diagonal_norm(sd)) <= 1e-10);
  }
}

TEST_CASE("partial isometries of slice-bound-1 entourages") {
  const SpacePtr z3 = interval_space(3);
  CHECK(max_abs_diff(partial_isometry(z3, diagonal_entourage(3)), Operator::identity(z3)) ==
        0.0);

  Eigen::MatrixXcd e01 = Eigen::MatrixXcd::Zero(3, 3);
  e01(0, 1) = 1.0;
  CHECK(max_abs_diff(partial_isometry(z3, ent(3, {{0, 1}})), square_op(z3, e01)) == 0.0);

  const Entourage perm = ent(3, {{0, 2}, {1, 0}, {2, 1}});
  const Operator v = partial_isometry(z3, perm);
  CHECK(max_abs_diff(v.adjoint() * v, Operator::identity(z3)) == 0.0);

  CHECK_THROWS_AS(partial_isometry(z3, ent(3, {{0, 1}, {0, 2}})), std::invalid_argument);

  // v^{E^{-1}} = (v^E)* and v^{E o F} = v^E v^F for slice-bound-1 data.
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4;
    const SpacePtr s = interval_space(n);
    auto partial_perm = [&] {
      std::vector<std::pair<int, int>> pairs;
      std::vector<int> cols{0, 1, 2, 3};
      for (std::size_t i = cols.size(); i > 1; --i)
        std::swap(cols[i - 1], cols[oracles::pick(rng, i)]);
      for (int x = 0; x < n; ++x)
        if (rng() & 1) pairs.emplace_back(x, cols[static_cast<std::size_t>(x)]);
      return Entourage(n, std::move(pairs));
    };
    const Entourage e = partial_perm();
    const Entourage f = partial_perm();
    CHECK(max_abs_diff(partial_isometry(s, inverse(e)), partial_isometry(s, e).adjoint()) ==
          0.0);
    CHECK(max_abs_diff(partial_isometry(s, compose(e, f)),
                       partial_isometry(s, e) * partial_isometry(s, f)) == 0.0);
  }
}

TEST_CASE("eps truncation of single diagonals") {
  const SpacePtr z3 = interval_space(3);
  const Operator a = diag_op(z3, {1.0, 0.3, 0.8});
  const Operator t = eps_truncate(a, 0.5);
  CHECK(max_abs_diff(t, diag_op(z3, {1.0, 0.0, 0.8})) == 0.0);
  CHECK(single_diagonal_norm(a - t) == 0.3);
  CHECK(max_abs_diff(eps_truncate(a, 2.0), Operator::zero(z3, z3)) == 0.0);
  // Entries exactly at eps survive: the kept condition is closed.
  CHECK(max_abs_diff(eps_truncate(a, 0.8), diag_op(z3, {1.0, 0.0, 0.8})) == 0.0);

  CHECK_THROWS_AS(eps_truncate(a, 0.0), std::invalid_argument);
  Eigen::MatrixXcd two = Eigen::MatrixXcd::Zero(3, 3);
  two(0, 1) = 1.0;
  two(0, 2) = 1.0;
  CHECK_THROWS_AS(eps_truncate(square_op(z3, two), 0.5), std::invalid_argument);
}

TEST_CASE("diagonal normalization predicate") {
  const SpacePtr z4 = interval_space(4);
  const Operator phases = diag_op(z4, {1.0, {0.0, 1.0}, -1.0, {0.6, 0.8}});
  CHECK(normalizes_diag(cyclic_shift(z4) * phases));
  CHECK(normalizes_diag(phases));

  Eigen::MatrixXcd two = Eigen::MatrixXcd::Zero(4, 4);
  two(0, 1) = 1.0;
  two(0, 2) = 1.0;
  CHECK_FALSE(normalizes_diag(square_op(z4, two)));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Operator a = trial % 2 == 0
                           ? square_op(z4, oracles::random_single_diagonal(rng, 4))
                           : square_op(z4, oracles::random_matrix(rng, 4, 4));
    CHECK(normalizes_diag(a) == is_single_diagonal(a));
  }
}

TEST_CASE("propagation calculus") {
  const SpacePtr z8 = interval_space(8);
  std::mt19937_64 rng(111);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator a = band_truncate(random_square(rng, z8),
                                     static_cast<double>(oracles::pick(rng, 5)));
    const Operator b = band_truncate(random_square(rng, z8),
                                     static_cast<double>(oracles::pick(rng, 5)));
    const auto pa = propagation(a);
    const auto pb = propagation(b);
    if (!pa || !pb) continue;
    if (const auto pab = propagation(a * b)) CHECK(*pab <= *pa + *pb + 1e-12);
    if (const auto psum = propagation(a + b)) CHECK(*psum <= std::max(*pa, *pb) + 1e-12);
    CHECK(propagation(a.adjoint()).value() == *pa);
  }
}

TEST_CASE("flip conjugates the cyclic shift to its adjoint") {
  const SpacePtr c10 = cycle_space(10);
  const Operator s = cyclic_shift(c10);
  const Operator f = flip_op(c10);
  CHECK(max_abs_diff(f * s * f.adjoint(), s.adjoint()) == 0.0);
}

}  // TEST_SUITE
