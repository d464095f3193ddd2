#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "jacobi/config.hpp"

using namespace jacobi;

namespace {

nlohmann::json minimal_free() {
  return nlohmann::json{{"model", {{"kind", "free"}}}};
}

std::string thrown_message(const nlohmann::json& j) {
  try {
    parse_config(j);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("defaults for a minimal config") {
  auto cfg = parse_config(minimal_free());
  CHECK(cfg.model.kind == ModelKind::Free);
  CHECK(cfg.seed == 1);
  CHECK(cfg.n_steps == 10000);
  CHECK(cfg.truncation_n == 1000);
  CHECK(cfg.m_points == 1200);
  CHECK(cfg.tol_l == 0.02);
  CHECK(cfg.flat_tol == 0.02);
  CHECK(cfg.solver_tol == 0.01);
  CHECK(cfg.identity_tol == 0.05);
  CHECK(cfg.output_dir == "out");
}

TEST_CASE("full config round trip") {
  nlohmann::json j = {
      {"model", {{"kind", "almost_mathieu"}, {"lambda", 0.5}, {"alpha", 0.618}}},
      {"seed", 7},
      {"resolutions",
       {{"n_steps", 2000}, {"n_samples", 4}, {"N", 500}, {"m_bins", 80},
        {"m_points", 600}, {"grid_points", 11}, {"spectrum_resolution", 50},
        {"dos_samples", 3}}},
      {"tolerances",
       {{"tol_L", 0.03}, {"flat_tol", 0.05}, {"solver_tol", 0.02},
        {"identity_tol", 0.1}}},
      {"output_dir", "elsewhere"}};
  auto cfg = parse_config(j);
  CHECK(cfg.model.kind == ModelKind::AlmostMathieu);
  CHECK(cfg.model.lambda == 0.5);
  CHECK(cfg.seed == 7);
  CHECK(cfg.n_steps == 2000);
  CHECK(cfg.dos_samples == 3);
  CHECK(cfg.spectrum_resolution == 50);
  CHECK(cfg.identity_tol == 0.1);
  CHECK(cfg.output_dir == "elsewhere");

  auto back = cfg.to_json();
  CHECK(back.at("model").at("kind") == "almost_mathieu");
  CHECK(back.at("model").at("lambda") == 0.5);
  CHECK(back.at("seed") == 7);
  CHECK(back.at("resolutions").at("n_steps") == 2000);
  CHECK(back.at("tolerances").at("identity_tol") == 0.1);
  // resolved config re-parses to the same settings
  auto cfg2 = parse_config(back);
  CHECK(cfg2.n_steps == cfg.n_steps);
  CHECK(cfg2.model.lambda == cfg.model.lambda);
}

TEST_CASE("unknown keys are rejected by name") {
  auto j = minimal_free();
  j["bogus"] = 1;
  CHECK(thrown_message(j).find("bogus") != std::string::npos);

  auto j2 = minimal_free();
  j2["model"]["extra"] = 2;
  CHECK(thrown_message(j2).find("extra") != std::string::npos);

  auto j3 = minimal_free();
  j3["resolutions"] = {{"n_stepz", 100}};
  CHECK(thrown_message(j3).find("n_stepz") != std::string::npos);
}

TEST_CASE("model validation diagnostics") {
  nlohmann::json j = {
      {"model", {{"kind", "almost_mathieu"}, {"lambda", 0.0}, {"alpha", 0.5}}}};
  CHECK(thrown_message(j).find("lambda") != std::string::npos);

  nlohmann::json j2 = {
      {"model", {{"kind", "almost_mathieu"}, {"lambda", 1.0}, {"alpha", 1.5}}}};
  CHECK(thrown_message(j2).find("alpha") != std::string::npos);

  nlohmann::json j3 = {
      {"model", {{"kind", "periodic"}, {"a", {1.0}}, {"b", {0.0, 1.0}}}}};
  CHECK(!thrown_message(j3).empty());

  nlohmann::json j4 = {{"model", {{"kind", "anderson"}, {"W", -2.0}}}};
  CHECK(thrown_message(j4).find("W") != std::string::npos);

  nlohmann::json j5 = {{"model", {{"kind", "nonsense"}}}};
  CHECK(thrown_message(j5).find("nonsense") != std::string::npos);

  CHECK(thrown_message(nlohmann::json::object()).find("model") !=
        std::string::npos);
}

TEST_CASE("nonpositive resolutions and tolerances are rejected") {
  auto j = minimal_free();
  j["resolutions"] = {{"n_steps", 0}};
  CHECK(!thrown_message(j).empty());
  auto j2 = minimal_free();
  j2["tolerances"] = {{"flat_tol", -0.1}};
  CHECK(!thrown_message(j2).empty());
}

TEST_CASE("check settings are derived from the config") {
  auto cfg = parse_config(minimal_free());
  cfg.seed = 9;
  cfg.grid_points = 33;
  auto s = cfg.check_settings();
  CHECK(s.seed == 9);
  CHECK(s.curve_points == 33);
  CHECK(s.n_steps == cfg.n_steps);
  CHECK(s.identity_tol == cfg.identity_tol);
}

TEST_CASE("load_config errors") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"),
                  std::invalid_argument);
  auto path = std::filesystem::temp_directory_path() / "jspec_bad.json";
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(load_config(path.string()), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST_CASE("fmt17 round trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, -2.718281828459045, 1e-300, 4.0}) {
    CHECK(std::stod(fmt17(v)) == v);
  }
}

TEST_CASE("atomic file writing creates directories") {
  auto dir = std::filesystem::temp_directory_path() / "jspec_test_out";
  std::filesystem::remove_all(dir);
  auto file = dir / "nested" / "data.csv";
  write_file_atomic(file.string(), "a,b\n1,2\n");
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  CHECK(line == "a,b");
  CHECK(!std::filesystem::exists(file.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}
