#include "roecart/reconstruction.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace roecart {

Entourage entourage_from_normalizer(const Operator& a, const MasaFrame& frame, double eps) {
  if (eps <= 0) throw std::invalid_argument("entourage threshold must be positive");
  const Operator inside = frame.conjugate_in(a);
  if (!is_single_diagonal(inside))
    throw std::invalid_argument("operator does not normalize the frame masa");
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < inside.rows(); ++x)
    for (int y = 0; y < inside.cols(); ++y)
      if (std::abs(inside.entry(x, y)) >= eps) pairs.emplace_back(x, y);
  return Entourage(inside.rows(), std::move(pairs));
}

CoarseGenerators reconstruct_structure(const CartanData& data) {
  if (data.normalizer_sample.empty())
    throw std::invalid_argument("reconstruction needs a nonempty normalizer sample");
  if (data.epsilons.empty()) throw std::invalid_argument("reconstruction needs thresholds");
  std::vector<Entourage> gens;
  gens.reserve(data.normalizer_sample.size() * data.epsilons.size());
  for (const auto& a : data.normalizer_sample)
    for (double eps : data.epsilons)
      gens.push_back(entourage_from_normalizer(a, data.frame, eps));
  return CoarseGenerators(data.normalizer_sample.front().codomain(), std::move(gens));
}

bool roundtrip_check(const FiniteSpace& space, const CoarseGenerators& gens) {
  if (gens.space()->size() != space.size() || !same_space(*gens.space(), space))
    throw std::invalid_argument("generators live on a different space");
  const SpacePtr sp = gens.space();

  // Canonical sample: partial translations of the greedy parts of every
  // generator, plus the identity standing in for the diagonal unitaries.
  // Their entries are 0 or 1, so the threshold 1/2 recovers each part
  // exactly.
  std::vector<Operator> sample;
  sample.push_back(Operator::identity(sp));
  for (const auto& gen : gens.generators())
    for (const auto& part : greedy_decompose(gen)) sample.push_back(partial_isometry(sp, part));

  const CartanData data{MasaFrame::standard(sp), std::move(sample), {0.5}};
  const CoarseGenerators rebuilt = reconstruct_structure(data);

  for (const auto& e : rebuilt.generators())
    if (!gens.contains(e)) return false;
  for (const auto& e : gens.generators())
    if (!rebuilt.contains(e)) return false;
  return true;
}

std::vector<Operator> conjugate_algebra(const std::vector<Operator>& basis, const Operator& v) {
  if (!v.is_square()) throw std::invalid_argument("conjugation needs a square unitary");
  const Eigen::MatrixXcd& m = v.entries();
  const double defect =
      (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTol) throw std::invalid_argument("conjugating operator is not unitary");
  std::vector<Operator> out;
  out.reserve(basis.size());
  for (const auto& a : basis) {
    if (!a.is_square() || !same_space(*a.codomain(), *v.codomain()))
      throw std::invalid_argument("basis operator lives on a different space");
    out.emplace_back(a.codomain(), a.domain(), (m.adjoint() * a.entries() * m).eval());
  }
  return out;
}

}  // namespace roecart
