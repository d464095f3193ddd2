#ifndef JACOBI_CONFIG_HPP
#define JACOBI_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "jacobi/bounds.hpp"
#include "jacobi/models.hpp"

namespace jacobi {

// Resolved run configuration; unknown keys in the file are rejected.
struct RunConfig {
  ErgodicModel model;
  std::uint64_t seed = 1;

  std::size_t n_steps = 10000;
  std::size_t n_samples = 8;
  std::size_t truncation_n = 1000;     // "N"
  std::size_t dos_samples = 0;         // 0 = per-model default
  std::size_t m_bins = 200;
  std::size_t m_points = 1200;
  std::size_t grid_points = 21;
  std::size_t spectrum_resolution = 0; // 0 = per-model default

  double tol_l = 0.02;
  double flat_tol = 0.02;
  double solver_tol = 0.01;
  double identity_tol = 0.05;

  std::string output_dir = "out";

  CheckSettings check_settings() const;
  nlohmann::json to_json() const;
};

// Throws std::invalid_argument naming the offending key.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Full round-trip decimal formatting (17 significant digits).
std::string fmt17(double value);

// Writes via temp file + rename so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace jacobi

#endif
