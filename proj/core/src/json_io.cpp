#include "roecart/json_io.hpp"

#include <json.hpp>

#include <stdexcept>
#include <utility>

namespace roecart::io {

namespace {

using json = nlohmann::ordered_json;

json space_to_value(const FiniteSpace& space) {
  json j;
  j["n"] = space.size();
  json rows = json::array();
  for (int x = 0; x < space.size(); ++x) {
    json row = json::array();
    for (int y = 0; y < space.size(); ++y) row.push_back(space.dist(x, y));
    rows.push_back(std::move(row));
  }
  j["dist"] = std::move(rows);
  if (!space.labels().empty()) j["labels"] = space.labels();
  return j;
}

SpacePtr space_from_value(const json& j) {
  const int n = j.at("n").get<int>();
  if (n < 1) throw std::invalid_argument("space size must be at least 1");
  const auto& rows = j.at("dist");
  if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("dist row count mismatch");
  Eigen::MatrixXd d(n, n);
  for (int x = 0; x < n; ++x) {
    const auto& row = rows.at(static_cast<std::size_t>(x));
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("dist column count mismatch");
    for (int y = 0; y < n; ++y) d(x, y) = row.at(static_cast<std::size_t>(y)).get<double>();
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return std::make_shared<const FiniteSpace>(std::move(d), std::move(labels));
}

json entourage_to_value(const Entourage& e) {
  json j;
  j["space_size"] = e.space_size();
  json pairs = json::array();
  for (const auto& [x, y] : e.pairs()) pairs.push_back(json::array({x, y}));
  j["pairs"] = std::move(pairs);
  return j;
}

Entourage entourage_from_value(const json& j) {
  const int n = j.at("space_size").get<int>();
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j.at("pairs")) {
    if (p.size() != 2) throw std::invalid_argument("entourage pairs must have two entries");
    pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  }
  return Entourage(n, std::move(pairs));
}

json complex_to_value(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_value(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return {j.at(0).get<double>(), j.at(1).get<double>()};
  throw std::invalid_argument("matrix entries must be numbers or [re, im] pairs");
}

SpaceSpec spec_from_value(const json& j);

json spec_to_value(const SpaceSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  if (spec.kind == "union") {
    json parts = json::array();
    for (const auto& p : spec.parts) parts.push_back(spec_to_value(p));
    j["parts"] = std::move(parts);
    j["gap"] = spec.gap;
  } else {
    j["size"] = spec.size;
  }
  return j;
}

SpaceSpec spec_from_value(const json& j) {
  SpaceSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (j.contains("size")) spec.size = j.at("size").get<int>();
  if (j.contains("gap")) spec.gap = j.at("gap").get<double>();
  if (j.contains("parts"))
    for (const auto& p : j.at("parts")) spec.parts.push_back(spec_from_value(p));
  return spec;
}

}  // namespace

std::string space_to_json(const FiniteSpace& space) { return space_to_value(space).dump(2); }

SpacePtr space_from_json(const std::string& text) {
  return space_from_value(json::parse(text));
}

std::string entourage_to_json(const Entourage& e) { return entourage_to_value(e).dump(2); }

Entourage entourage_from_json(const std::string& text) {
  return entourage_from_value(json::parse(text));
}

std::string operator_to_json(const Operator& a) {
  json j;
  j["codomain"] = space_to_value(*a.codomain());
  j["domain"] = space_to_value(*a.domain());
  json rows = json::array();
  for (int x = 0; x < a.rows(); ++x) {
    json row = json::array();
    for (int y = 0; y < a.cols(); ++y) row.push_back(complex_to_value(a.entry(x, y)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j.dump(2);
}

Operator operator_from_json(const std::string& text) {
  const json j = json::parse(text);
  SpacePtr codomain, domain;
  if (j.contains("space")) {
    codomain = space_from_value(j.at("space"));
    domain = codomain;
  } else {
    codomain = space_from_value(j.at("codomain"));
    domain = space_from_value(j.at("domain"));
  }
  const auto& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != codomain->size())
    throw std::invalid_argument("entry row count mismatch");
  Eigen::MatrixXcd m(codomain->size(), domain->size());
  for (int x = 0; x < codomain->size(); ++x) {
    const auto& row = rows.at(static_cast<std::size_t>(x));
    if (static_cast<int>(row.size()) != domain->size())
      throw std::invalid_argument("entry column count mismatch");
    for (int y = 0; y < domain->size(); ++y)
      m(x, y) = complex_from_value(row.at(static_cast<std::size_t>(y)));
  }
  return Operator(std::move(codomain), std::move(domain), std::move(m));
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig c;
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("space")) c.space = spec_from_value(j.at("space"));
  if (j.contains("unitary")) {
    const auto& u = j.at("unitary");
    if (u.contains("displacement")) c.unitary.displacement = u.at("displacement").get<double>();
    if (u.contains("rotation_radius"))
      c.unitary.rotation_radius = u.at("rotation_radius").get<double>();
    if (u.contains("rotation_angle"))
      c.unitary.rotation_angle = u.at("rotation_angle").get<double>();
    if (u.contains("randomize_phases"))
      c.unitary.randomize_phases = u.at("randomize_phases").get<bool>();
  }
  if (j.contains("delta_grid")) c.delta_grid = j.at("delta_grid").get<std::vector<double>>();
  if (j.contains("random_subsets")) c.random_subsets = j.at("random_subsets").get<int>();
  if (j.contains("blocks")) c.blocks = j.at("blocks").get<int>();
  if (j.contains("radii")) c.radii = j.at("radii").get<std::vector<double>>();
  if (j.contains("radius")) c.radius = j.at("radius").get<double>();
  if (j.contains("onl_eps")) c.onl_eps = j.at("onl_eps").get<double>();
  return c;
}

std::string config_to_json(const ExperimentConfig& config) {
  json j;
  j["seed"] = config.seed;
  if (!config.space.kind.empty()) j["space"] = spec_to_value(config.space);
  json u;
  u["displacement"] = config.unitary.displacement;
  u["rotation_radius"] = config.unitary.rotation_radius;
  u["rotation_angle"] = config.unitary.rotation_angle;
  u["randomize_phases"] = config.unitary.randomize_phases;
  j["unitary"] = std::move(u);
  if (!config.delta_grid.empty()) j["delta_grid"] = config.delta_grid;
  j["random_subsets"] = config.random_subsets;
  j["blocks"] = config.blocks;
  if (!config.radii.empty()) j["radii"] = config.radii;
  j["radius"] = config.radius;
  j["onl_eps"] = config.onl_eps;
  return j.dump(2);
}

}  // namespace roecart::io
