#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "roecart/cartan.hpp"
#include "roecart/generate.hpp"
#include "roecart/json_io.hpp"
#include "roecart/reconstruction.hpp"
#include "roecart/rigidity.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace roecart;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Reports land under their final name only when complete.
void atomic_write(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

// Shortest round-trip form, the same as the JSON encoder, so CSV and JSON
// agree byte for byte on every value.
std::string num(double x) { return json(x).dump(); }

json config_echo(const ExperimentConfig& cfg) { return json::parse(io::config_to_json(cfg)); }

json envelope(const char* command, const ExperimentConfig& cfg, bool seeded) {
  json j;
  j["command"] = command;
  if (seeded) {
    j["rng"] = kRngId;
    j["seed"] = cfg.seed;
  }
  j["config"] = config_echo(cfg);
  return j;
}

json entourage_value(const Entourage& e) { return json::parse(io::entourage_to_json(e)); }

int run_verify_cartan(const ExperimentConfig& cfg, const fs::path& out) {
  const CartanReport report = verify_cartan(cfg.blocks);
  json j = envelope("verify-cartan", cfg, false);
  j["masa"] = report.masa;
  j["normalizer_dim"] = report.normalizer_dim;
  j["expectation_faithful"] = report.expectation_faithful;
  j["witness_ok"] = report.witness_ok;
  atomic_write(out / "verify-cartan.json", j.dump(2) + "\n");
  const bool ok =
      report.masa && report.expectation_faithful && report.witness_ok &&
      report.normalizer_dim == 4 * cfg.blocks * cfg.blocks;
  return ok ? 0 : 2;
}

int run_reconstruct(const ExperimentConfig& cfg, const fs::path& out) {
  const SpacePtr space = generate_space(cfg.space);
  std::vector<double> radii = cfg.radii.empty() ? std::vector<double>{1.0} : cfg.radii;
  std::vector<Entourage> gens;
  gens.reserve(radii.size());
  for (double r : radii) gens.push_back(metric_entourage(*space, r));
  const CoarseGenerators structure(space, std::move(gens));
  const bool ok = roundtrip_check(*space, structure);

  json j = envelope("reconstruct", cfg, false);
  json gen_list = json::array();
  for (const auto& e : structure.generators()) gen_list.push_back(entourage_value(e));
  j["generators"] = std::move(gen_list);
  j["roundtrip"] = ok;
  atomic_write(out / "reconstruct.json", j.dump(2) + "\n");
  return ok ? 0 : 2;
}

int run_decompose(const ExperimentConfig& cfg, const fs::path& out) {
  const SpacePtr space = generate_space(cfg.space);
  const Entourage e = metric_entourage(*space, cfg.radius);
  const std::vector<Entourage> parts = greedy_decompose(e);

  json j = envelope("decompose", cfg, false);
  j["slice_bound"] = slice_bound(e);
  j["count"] = parts.size();
  json part_list = json::array();
  for (const auto& p : parts) part_list.push_back(entourage_value(p));
  j["parts"] = std::move(part_list);
  atomic_write(out / "decompose.json", j.dump(2) + "\n");
  return 0;
}

int run_recover(const ExperimentConfig& cfg, const fs::path& out) {
  const SpacePtr space = generate_space(cfg.space);
  const Operator v = generate_unitary(cfg.unitary, space, cfg.seed);
  const std::vector<int> planted =
      generate_permutation(space, cfg.unitary.displacement, cfg.seed);
  const std::vector<double> grid =
      cfg.delta_grid.empty() ? default_delta_grid() : cfg.delta_grid;

  json j = envelope("recover", cfg, true);
  try {
    const RecoveryReport report = recover_bijection(v, space, space, grid, &planted);
    j["delta"] = report.delta;
    j["h"] = report.h;
    json band = json::object();
    for (const auto& [s, err] : report.band_error) band[num(s)] = err;
    j["band_error"] = std::move(band);
    json ql = json::object();
    for (const auto& [s, bounds] : report.ql)
      ql[num(s)] = json::array({bounds.first, bounds.second});
    j["ql"] = std::move(ql);
    j["displacement"] = report.displacement.value();
    atomic_write(out / "recover.json", j.dump(2) + "\n");

    std::string band_csv = "s,norm\n";
    for (const auto& [s, err] : report.band_error)
      band_csv += num(s) + "," + num(err) + "\n";
    atomic_write(out / "band_error.csv", band_csv);
    std::string ql_csv = "s,lower,upper\n";
    for (const auto& [s, bounds] : report.ql)
      ql_csv += num(s) + "," + num(bounds.first) + "," + num(bounds.second) + "\n";
    atomic_write(out / "ql.csv", ql_csv);
    return 0;
  } catch (const delta_selection_error& e) {
    j["failure"] = "delta_selection";
    j["detail"] = e.what();
    atomic_write(out / "recover.json", j.dump(2) + "\n");
    return 2;
  }
}

int run_profile(const ExperimentConfig& cfg, const fs::path& out) {
  const SpacePtr space = generate_space(cfg.space);
  const Operator v = generate_unitary(cfg.unitary, space, cfg.seed);
  const MasaFrame frame = MasaFrame::standard(space);

  std::vector<double> s_values;
  const auto& values = space->distance_values();
  for (std::size_t idx = 0; idx < values.size(); idx = idx == 0 ? 1 : idx * 2)
    s_values.push_back(values[idx]);

  const BandProfile profile =
      uniform_band_profile(v, frame, s_values, cfg.random_subsets, cfg.seed);
  const OnlWitness witness = onl_witness(v, cfg.onl_eps);

  json j = envelope("profile", cfg, true);
  j["family_size"] = profile.family_size;
  json est = json::object();
  for (std::size_t i = 0; i < profile.s_values.size(); ++i)
    est[num(profile.s_values[i])] = profile.estimate[i];
  j["band_profile"] = std::move(est);
  j["onl"] = json{{"eps", cfg.onl_eps},
                  {"r", witness.r},
                  {"center", witness.center},
                  {"achieved", witness.achieved}};
  atomic_write(out / "profile.json", j.dump(2) + "\n");

  std::string csv = "s,estimate\n";
  for (std::size_t i = 0; i < profile.s_values.size(); ++i)
    csv += num(profile.s_values[i]) + "," + num(profile.estimate[i]) + "\n";
  atomic_write(out / "band_profile.csv", csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale coarse geometry and uniform Roe algebra toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed_override = 0;
  int threads = 1;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config");
    sub->add_option("--out", out_dir, "Directory for report files");
    sub->add_option("--seed", seed_override, "Override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", threads, "Worker thread budget")->check(CLI::PositiveNumber);
  };

  CLI::App* verify = app.add_subcommand("verify-cartan", "Check the twisted masa pair");
  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "Round-trip a coarse structure through its band algebra");
  CLI::App* decompose =
      app.add_subcommand("decompose", "Split a metric entourage into partial translations");
  CLI::App* recover =
      app.add_subcommand("recover", "Recover the bijection and correcting unitary");
  CLI::App* profile = app.add_subcommand("profile", "Band and localisation profiles");
  for (CLI::App* sub : {verify, reconstruct, decompose, recover, profile}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = io::config_from_json(read_file(config_path));
    if (seed_given) cfg.seed = seed_override;
    Eigen::setNbThreads(threads);

    const fs::path out(out_dir);
    fs::create_directories(out);

    if (verify->parsed()) return run_verify_cartan(cfg, out);
    if (reconstruct->parsed()) return run_reconstruct(cfg, out);
    if (decompose->parsed()) return run_decompose(cfg, out);
    if (recover->parsed()) return run_recover(cfg, out);
    if (profile->parsed()) return run_profile(cfg, out);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
