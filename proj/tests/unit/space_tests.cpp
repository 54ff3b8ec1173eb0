#include <doctest.h>

#include <roecart/space.hpp>

#include "../support/common.hpp"
#include "../support/oracles.hpp"

#include <random>
#include <set>
#include <utility>
#include <vector>

using namespace roecart;
using testsupport::cycle_space;
using testsupport::ent;
using testsupport::interval_space;

namespace {

oracles::PairSet to_set(const Entourage& e) {
  return oracles::PairSet(e.pairs().begin(), e.pairs().end());
}

Entourage random_entourage(std::mt19937_64& rng, int n, int pair_count) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < pair_count; ++i)
    pairs.emplace_back(static_cast<int>(oracles::pick(rng, static_cast<std::size_t>(n))),
                       static_cast<int>(oracles::pick(rng, static_cast<std::size_t>(n))));
  return Entourage(n, std::move(pairs));
}

}  // namespace

TEST_SUITE("space") {

TEST_CASE("metric validation and ball geometry") {
  const SpacePtr z5 = interval_space(5);
  CHECK(z5->size() == 5);
  CHECK(z5->dist(0, 4) == 4.0);
  CHECK(z5->diameter() == 4.0);
  CHECK(z5->ball(2, 1) == std::vector<int>{1, 2, 3});
  CHECK(z5->ball(0, 0) == std::vector<int>{0});
  CHECK(z5->growth(1) == 3);
  CHECK(z5->growth(0) == 1);
  CHECK(z5->distance_values() == std::vector<double>{0, 1, 2, 3, 4});

  // growth is monotone in r.
  for (std::size_t i = 1; i < z5->distance_values().size(); ++i)
    CHECK(z5->growth(z5->distance_values()[i]) >= z5->growth(z5->distance_values()[i - 1]));

  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS_AS(FiniteSpace{bad}, std::invalid_argument);  // asymmetric
  bad << 0, 0, 0, 0;
  CHECK_THROWS_AS(FiniteSpace{bad}, std::invalid_argument);  // zero off-diagonal
  bad << 1, 1, 1, 0;
  CHECK_THROWS_AS(FiniteSpace{bad}, std::invalid_argument);  // nonzero diagonal
  Eigen::MatrixXd tri(3, 3);
  tri << 0, 1, 5, 1, 0, 1, 5, 1, 0;
  CHECK_THROWS_AS(FiniteSpace{tri}, std::invalid_argument);  // triangle violation
}

TEST_CASE("squares space carries the integer gaps") {
  const SpacePtr sq = make_squares_space(4);
  CHECK(sq->size() == 4);
  CHECK(sq->dist(0, 1) == 3.0);
  CHECK(sq->dist(1, 2) == 5.0);
  CHECK(sq->dist(2, 3) == 7.0);
  CHECK(sq->dist(0, 3) == 15.0);
  CHECK(sq->labels() == std::vector<std::string>{"1", "4", "9", "16"});
  CHECK_THROWS_AS(make_squares_space(0), std::invalid_argument);
}

TEST_CASE("metric entourages at the example radii") {
  const SpacePtr z3 = interval_space(3);
  CHECK(metric_entourage(*z3, 0) == ent(3, {{0, 0}, {1, 1}, {2, 2}}));
  CHECK(metric_entourage(*z3, 1) ==
        ent(3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}}));
  CHECK(metric_entourage(*z3, 5).size() == 9);
  CHECK_THROWS_AS(metric_entourage(*z3, -1.0), std::invalid_argument);

  // Monotone in r.
  const SpacePtr z6 = interval_space(6);
  for (int r = 0; r < 5; ++r)
    CHECK(metric_entourage(*z6, r).subset_of(metric_entourage(*z6, r + 1)));
}

TEST_CASE("composition identities") {
  const SpacePtr z5 = interval_space(5);
  const Entourage diag = diagonal_entourage(5);

  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const Entourage e = random_entourage(rng, 5, 6);
    CHECK(compose(e, diag) == e);
    CHECK(compose(diag, e) == e);
    CHECK(inverse(inverse(e)) == e);
  }

  CHECK(compose(ent(3, {{0, 1}}), ent(3, {{1, 2}})) == ent(3, {{0, 2}}));
  CHECK(compose(metric_entourage(*z5, 1), metric_entourage(*z5, 1)) ==
        metric_entourage(*z5, 2));

  // Brute-force cross-check of the same identity over all 25 pairs.
  const auto composed = oracles::compose_sets(to_set(metric_entourage(*z5, 1)),
                                              to_set(metric_entourage(*z5, 1)));
  CHECK(composed == to_set(metric_entourage(*z5, 2)));

  CHECK(inverse(diag) == diag);
  CHECK(inverse(ent(2, {{0, 1}})) == ent(2, {{1, 0}}));
}

TEST_CASE("slice bounds") {
  CHECK(slice_bound(diagonal_entourage(4)) == 1);
  std::vector<std::pair<int, int>> full;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) full.emplace_back(x, y);
  CHECK(slice_bound(Entourage(3, full)) == 3);
  CHECK(slice_bound(metric_entourage(*interval_space(5), 1)) == 3);
  CHECK(slice_bound(Entourage(4, {})) == 0);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Entourage e = random_entourage(rng, 6, 8);
    const Entourage f = random_entourage(rng, 6, 8);
    CHECK(slice_bound(compose(e, f)) <= slice_bound(e) * slice_bound(f));
  }
}

TEST_CASE("generated membership agrees with the set-fixpoint oracle") {
  const SpacePtr z5 = interval_space(5);

  const CoarseGenerators trivial(z5, {});
  CHECK(trivial.contains(ent(5, {{0, 0}})));
  CHECK_FALSE(trivial.contains(ent(5, {{0, 1}})));

  const CoarseGenerators metric(z5, {metric_entourage(*z5, 1)});
  CHECK(metric.contains(metric_entourage(*z5, 3)));

  // Connectedness: one connected generator reaches every entourage.
  std::vector<std::pair<int, int>> full;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) full.emplace_back(x, y);
  CHECK(metric.contains(Entourage(5, full)));

  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 4 + static_cast<int>(oracles::pick(rng, 3));
    const SpacePtr space = interval_space(n);
    std::vector<Entourage> gens;
    std::vector<oracles::PairSet> gen_sets;
    for (int g = 0; g < 3; ++g) {
      gens.push_back(random_entourage(rng, n, 4));
      gen_sets.push_back(to_set(gens.back()));
    }
    const CoarseGenerators structure(space, gens);
    CHECK(to_set(structure.closure()) == oracles::naive_closure(n, gen_sets));
  }
}

TEST_CASE("closure laws on generated members") {
  std::mt19937_64 rng(404);
  const int n = 6;
  const SpacePtr space = interval_space(n);
  const CoarseGenerators structure(space, {random_entourage(rng, n, 5)});
  const auto& closure_pairs = structure.closure().pairs();

  auto random_member = [&] {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : closure_pairs)
      if (rng() & 1) pairs.push_back(p);
    return Entourage(n, std::move(pairs));
  };

  for (int trial = 0; trial < 25; ++trial) {
    const Entourage e = random_member();
    const Entourage f = random_member();
    CHECK(structure.contains(e));
    CHECK(structure.contains(f));
    CHECK(structure.contains(compose(e, f)));
    CHECK(structure.contains(inverse(e)));
    CHECK(structure.contains(e.union_with(f)));
  }

  // contains distributes over union, also for non-members.
  for (int trial = 0; trial < 25; ++trial) {
    const Entourage e = random_entourage(rng, n, 4);
    const Entourage f = random_entourage(rng, n, 4);
    CHECK(structure.contains(e.union_with(f)) ==
          (structure.contains(e) && structure.contains(f)));
  }
}

TEST_CASE("expansion profiles and coarse equivalence certificates") {
  const SpacePtr z6 = interval_space(6);
  std::vector<int> id{0, 1, 2, 3, 4, 5};

  const CoarseMap identity{z6, z6, id};
  for (const auto& [r, omega] : expansion_profile(identity)) CHECK(omega == r);

  // Same point set with the metric doubled: omega(r) = 2r.
  Eigen::MatrixXd doubled = z6->dist_matrix() * 2.0;
  const SpacePtr z6x2 = std::make_shared<const FiniteSpace>(std::move(doubled));
  const CoarseMap stretch{z6, z6x2, id};
  for (const auto& [r, omega] : expansion_profile(stretch)) CHECK(omega == 2 * r);

  // Index inclusion of the path into the squares space: the biggest
  // consecutive gap is 25 - 16 = 9.
  const SpacePtr z5 = interval_space(5);
  const SpacePtr sq5 = make_squares_space(5);
  const CoarseMap incl{z5, sq5, {0, 1, 2, 3, 4}};
  const auto profile = expansion_profile(incl);
  CHECK(profile[0] == std::pair{0.0, 0.0});
  CHECK(profile[1] == std::pair{1.0, 9.0});
  CHECK(profile[2] == std::pair{2.0, 16.0});

  const CoarseMap back{z6x2, z6, id};
  CHECK(closeness(stretch, back) == 0.0);
  const EquivalenceCertificate cert = coarse_equivalence(stretch, back);
  CHECK(cert.omega_f.size() == z6->distance_values().size());
  CHECK(cert.closeness_domain == 0.0);
  CHECK(cert.closeness_codomain == 0.0);

  // Shifted inverse: g(f(x)) lands one step away except at the edge.
  std::vector<int> off{1, 2, 3, 4, 5, 5};
  CHECK(closeness(CoarseMap{z6, z6, off}, identity) == 1.0);

  CHECK_THROWS_AS(closeness(stretch, stretch), std::invalid_argument);
  CHECK_THROWS_AS(expansion_profile(CoarseMap{z6, z6, {0, 1}}), std::invalid_argument);
}

TEST_CASE("entourage input validation") {
  CHECK_THROWS_AS(ent(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(ent(2, {{-1, 0}}), std::invalid_argument);
  // Duplicates collapse to set semantics.
  CHECK(ent(3, {{0, 1}, {0, 1}}).size() == 1);
  // Space mismatch is rejected across operations.
  CHECK_THROWS_AS(compose(ent(2, {{0, 1}}), ent(3, {{0, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(ent(2, {{0, 1}}).union_with(ent(3, {})), std::invalid_argument);
}

}  // TEST_SUITE
