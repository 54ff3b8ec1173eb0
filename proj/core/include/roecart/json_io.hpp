#pragma once

#include <string>

#include "roecart/generate.hpp"
#include "roecart/operators.hpp"
#include "roecart/space.hpp"

// Text round-trips for the core types.  All functions speak JSON strings so
// the parser stays an implementation detail of the library.
namespace roecart::io {

// {"n": size, "dist": [[..]], "labels": [..]?}
std::string space_to_json(const FiniteSpace& space);
SpacePtr space_from_json(const std::string& text);

// {"space_size": n, "pairs": [[x, y], ..]}
std::string entourage_to_json(const Entourage& e);
Entourage entourage_from_json(const std::string& text);

// {"codomain": space, "domain": space, "entries": [[[re, im], ..], ..]};
// square operators may carry a single "space" instead of the two sides.
std::string operator_to_json(const Operator& a);
Operator operator_from_json(const std::string& text);

// Experiment configs; missing fields keep their defaults.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

}  // namespace roecart::io
