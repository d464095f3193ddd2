#include "jacobi/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

namespace jacobi {

namespace {

void reject_unknown(const nlohmann::json& j, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("config: unknown key \"" + where + it.key() + "\"");
}

ErgodicModel parse_model(const nlohmann::json& j, std::uint64_t seed) {
  if (!j.contains("kind"))
    throw std::invalid_argument("config: missing key \"model.kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "free") {
    reject_unknown(j, "model.", {"kind"});
    return ErgodicModel::free();
  }
  if (kind == "almost_mathieu") {
    reject_unknown(j, "model.", {"kind", "lambda", "alpha"});
    double lambda = j.at("lambda").get<double>();
    double alpha = j.at("alpha").get<double>();
    if (lambda == 0.0)
      throw std::invalid_argument("config: model.lambda must be nonzero");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("config: model.alpha must lie in (0,1)");
    return ErgodicModel::almost_mathieu(lambda, alpha);
  }
  if (kind == "periodic") {
    reject_unknown(j, "model.", {"kind", "a", "b"});
    auto a = j.at("a").get<std::vector<double>>();
    auto b = j.at("b").get<std::vector<double>>();
    if (a.empty() || a.size() != b.size())
      throw std::invalid_argument("config: model.a and model.b must have equal positive length");
    for (double v : a)
      if (!(v > 0.0))
        throw std::invalid_argument("config: model.a entries must be positive");
    return ErgodicModel::periodic(std::move(a), std::move(b));
  }
  if (kind == "anderson") {
    reject_unknown(j, "model.", {"kind", "W"});
    double w = j.at("W").get<double>();
    if (!(w > 0.0))
      throw std::invalid_argument("config: model.W must be positive");
    return ErgodicModel::anderson(w, seed);
  }
  if (kind == "sturmian") {
    reject_unknown(j, "model.", {"kind", "V", "alpha"});
    double v = j.at("V").get<double>();
    double alpha = j.at("alpha").get<double>();
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("config: model.alpha must lie in (0,1)");
    return ErgodicModel::sturmian(v, alpha);
  }
  throw std::invalid_argument("config: unknown model.kind \"" + kind + "\"");
}

template <class T>
void read_positive(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  double v = j.at(key).get<double>();
  if (!(v > 0))
    throw std::invalid_argument(std::string("config: ") + key + " must be positive");
  out = static_cast<T>(v);
}

} // namespace

CheckSettings RunConfig::check_settings() const {
  CheckSettings s;
  s.seed = seed;
  s.n_steps = n_steps;
  s.n_samples = n_samples;
  s.dos_n = truncation_n;
  s.dos_samples = dos_samples;
  s.m_bins = m_bins;
  s.spectrum_resolution = spectrum_resolution;
  s.curve_points = grid_points;
  s.eq_m_points = m_points;
  s.identity_tol = identity_tol;
  s.slack_allowance = solver_tol;
  return s;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json m;
  m["kind"] = to_string(model.kind);
  switch (model.kind) {
    case ModelKind::Free: break;
    case ModelKind::AlmostMathieu:
      m["lambda"] = model.lambda;
      m["alpha"] = model.alpha;
      break;
    case ModelKind::Periodic:
      m["a"] = model.period_a;
      m["b"] = model.period_b;
      break;
    case ModelKind::Anderson:
      m["W"] = model.disorder;
      break;
    case ModelKind::Sturmian:
      m["V"] = model.coupling;
      m["alpha"] = model.alpha;
      break;
  }
  nlohmann::json j;
  j["model"] = m;
  j["seed"] = seed;
  j["resolutions"] = {
      {"n_steps", n_steps},       {"n_samples", n_samples},
      {"N", truncation_n},        {"dos_samples", dos_samples},
      {"m_bins", m_bins},         {"m_points", m_points},
      {"grid_points", grid_points},
      {"spectrum_resolution", spectrum_resolution}};
  j["tolerances"] = {{"tol_L", tol_l},
                     {"flat_tol", flat_tol},
                     {"solver_tol", solver_tol},
                     {"identity_tol", identity_tol}};
  j["output_dir"] = output_dir;
  return j;
}

RunConfig parse_config(const nlohmann::json& j) {
  reject_unknown(j, "", {"model", "seed", "resolutions", "tolerances", "output_dir"});
  if (!j.contains("model"))
    throw std::invalid_argument("config: missing key \"model\"");

  RunConfig cfg;
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.model = parse_model(j.at("model"), cfg.seed);

  if (j.contains("resolutions")) {
    const auto& r = j.at("resolutions");
    reject_unknown(r, "resolutions.",
                   {"n_steps", "n_samples", "N", "dos_samples", "m_bins",
                    "m_points", "grid_points", "spectrum_resolution"});
    read_positive(r, "n_steps", cfg.n_steps);
    read_positive(r, "n_samples", cfg.n_samples);
    read_positive(r, "N", cfg.truncation_n);
    read_positive(r, "dos_samples", cfg.dos_samples);
    read_positive(r, "m_bins", cfg.m_bins);
    read_positive(r, "m_points", cfg.m_points);
    read_positive(r, "grid_points", cfg.grid_points);
    read_positive(r, "spectrum_resolution", cfg.spectrum_resolution);
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    reject_unknown(t, "tolerances.",
                   {"tol_L", "flat_tol", "solver_tol", "identity_tol"});
    read_positive(t, "tol_L", cfg.tol_l);
    read_positive(t, "flat_tol", cfg.flat_tol);
    read_positive(t, "solver_tol", cfg.solver_tol);
    read_positive(t, "identity_tol", cfg.identity_tol);
  }
  if (j.contains("output_dir"))
    cfg.output_dir = j.at("output_dir").get<std::string>();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  return parse_config(j);
}

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path())
    std::filesystem::create_directories(p.parent_path());
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write \"" + tmp.string() + "\"");
    out << content;
  }
  std::filesystem::rename(tmp, p);
}

} // namespace jacobi
