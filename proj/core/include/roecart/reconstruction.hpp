#pragma once

#include <vector>

#include "roecart/cartan.hpp"
#include "roecart/operators.hpp"
#include "roecart/space.hpp"

namespace roecart {

// A masa frame together with operators normalizing it and the thresholds at
// which their supports are read off.
struct CartanData {
  MasaFrame frame;
  std::vector<Operator> normalizer_sample;
  std::vector<double> epsilons;
};

// E_{a,eps} = {(x,y) : |(V*aV)_xy| >= eps}.  For a genuine normalizer the
// conjugated matrix is single diagonal, so the result has slice bound <= 1.
// The condition is closed (>=), entries exactly at eps are kept.
Entourage entourage_from_normalizer(const Operator& a, const MasaFrame& frame, double eps);

// Coarse structure generated by E_{a,eps} over sample x epsilons.
CoarseGenerators reconstruct_structure(const CartanData& data);

// Rebuilds the structure from the band algebra's canonical normalizer sample
// (partial translations of the greedy parts of each generator, plus the
// identity) and checks mutual generator membership with the original.
bool roundtrip_check(const FiniteSpace& space, const CoarseGenerators& gens);

// {V* a V} for each basis element.  Unitary conjugation, so spectral norms
// are preserved.
std::vector<Operator> conjugate_algebra(const std::vector<Operator>& basis, const Operator& v);

}  // namespace roecart
