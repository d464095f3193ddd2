#include "jacobi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jacobi {

namespace {

nlohmann::json model_json(const ErgodicModel& model) {
  nlohmann::json j;
  j["kind"] = to_string(model.kind);
  switch (model.kind) {
    case ModelKind::Free: break;
    case ModelKind::AlmostMathieu:
      j["lambda"] = model.lambda;
      j["alpha"] = model.alpha;
      break;
    case ModelKind::Periodic:
      j["a"] = model.period_a;
      j["b"] = model.period_b;
      break;
    case ModelKind::Anderson:
      j["W"] = model.disorder;
      j["seed"] = model.seed;
      break;
    case ModelKind::Sturmian:
      j["V"] = model.coupling;
      j["alpha"] = model.alpha;
      break;
  }
  return j;
}

nlohmann::json provenance(const ErgodicModel& model,
                          const CheckSettings& s) {
  nlohmann::json j;
  j["model"] = model_json(model);
  j["seed"] = s.seed;
  j["n_steps"] = s.n_steps;
  j["n_samples"] = s.n_samples;
  j["dos_n"] = s.dos_n;
  j["m_bins"] = s.m_bins;
  j["curve_points"] = s.curve_points;
  j["eq_m_points"] = s.eq_m_points;
  j["identity_tol"] = s.identity_tol;
  j["slack_allowance"] = s.slack_allowance;
  return j;
}

std::size_t default_dos_samples(const ErgodicModel& model,
                                const CheckSettings& s) {
  if (s.dos_samples > 0) return s.dos_samples;
  switch (model.kind) {
    case ModelKind::Anderson: return 20;
    case ModelKind::AlmostMathieu:
    case ModelKind::Sturmian: return 8;
    default: return 1;
  }
}

// Lighter Lyapunov settings for dense integrals (many abscissae, each only
// needed to ~1e-2 absolute).
constexpr std::size_t kIntegralSteps = 4000;
constexpr std::size_t kIntegralSamples = 4;

double dos_log_integral(const SpectralMeasure& dos, Complex z) {
  double s = 0.0;
  for (std::size_t i = 0; i < dos.bins(); ++i) {
    if (dos.weights[i] <= 0.0) continue;
    s += dos.weights[i] * std::log(std::abs(Complex(dos.bin_center(i)) - z));
  }
  return s;
}

} // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Approx: return "~";
  }
  return "?";
}

nlohmann::json BoundCheck::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["relation"] = to_string(relation);
  j["holds"] = holds;
  j["slack"] = slack;
  j["inputs"] = inputs;
  return j;
}

IntervalUnion default_spectrum(const ErgodicModel& model,
                               const CheckSettings& settings) {
  switch (model.kind) {
    case ModelKind::Free:
    case ModelKind::Periodic:
      return spectrum_approx(model, SpectrumMethod::Approximant, 0,
                             settings.seed);
    case ModelKind::AlmostMathieu:
    case ModelKind::Sturmian: {
      std::size_t q = settings.spectrum_resolution > 0
                          ? settings.spectrum_resolution : 100;
      return spectrum_approx(model, SpectrumMethod::Approximant, q,
                             settings.seed);
    }
    case ModelKind::Anderson: {
      std::size_t n = settings.spectrum_resolution > 0
                          ? settings.spectrum_resolution : 2000;
      return spectrum_approx(model, SpectrumMethod::Eigencloud, n,
                             settings.seed);
    }
  }
  throw std::invalid_argument("default_spectrum: unknown model kind");
}

std::vector<double> grid_on(const IntervalUnion& sigma, std::size_t n_points) {
  if (sigma.empty() || n_points == 0) return {};
  double total = sigma.measure();
  std::vector<double> grid;
  for (auto& [l, r] : sigma.intervals) {
    double len = r - l;
    auto k = static_cast<std::size_t>(
        std::ceil(static_cast<double>(n_points) * (total > 0.0 ? len / total : 1.0)));
    if (k < 1) k = 1;
    for (std::size_t j = 0; j < k; ++j)
      grid.push_back(l + len * (static_cast<double>(j) + 0.5) /
                             static_cast<double>(k));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<Complex> default_thouless_points(const ErgodicModel& model,
                                             std::size_t count) {
  auto [lo, hi] = model.spectral_enclosure();
  std::vector<Complex> pts;
  for (std::size_t j = 0; j < count; ++j) {
    double x = lo + (hi - lo) * (static_cast<double>(j) + 0.5) /
                        static_cast<double>(count);
    pts.emplace_back(x, 0.5);
  }
  return pts;
}

ThoulessReport verify_thouless(const ErgodicModel& model,
                               const std::vector<Complex>& test_points,
                               const CheckSettings& settings) {
  SpectralMeasure dos =
      dos_measure(model, settings.dos_n, default_dos_samples(model, settings),
                  settings.m_bins, settings.seed);
  double a_mean = geometric_mean_a(model, 10000, 4, settings.seed);

  ThoulessReport rep;
  rep.points = test_points;
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    Complex z = test_points[i];
    LyapunovEstimate est = lyapunov(model, z, settings.n_steps,
                                    settings.n_samples, mix64(settings.seed, i));
    double rhs = dos_log_integral(dos, z) - std::log(a_mean);
    rep.residuals.push_back(std::abs(est.value - rhs));
  }
  rep.max_residual =
      *std::max_element(rep.residuals.begin(), rep.residuals.end());
  rep.mean_residual = 0.0;
  for (double r : rep.residuals) rep.mean_residual += r;
  rep.mean_residual /= static_cast<double>(rep.residuals.size());
  return rep;
}

BoundCheck verify_capacity_identity(const ErgodicModel& model,
                                    const CheckSettings& settings) {
  IntervalUnion sigma = default_spectrum(model, settings);
  double cap = capacity(sigma, settings.eq_m_points);
  DiscreteMeasure mu = equilibrium_measure(sigma, settings.eq_m_points);
  double a_mean = geometric_mean_a(model, 10000, 4, settings.seed);

  // int L dmu on the equilibrium abscissae (no interpolation across gaps).
  double integral = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weights[i] <= 0.0) continue;
    LyapunovEstimate est =
        lyapunov(model, Complex(mu.points[i]), kIntegralSteps,
                 kIntegralSamples, mix64(settings.seed, i));
    integral += mu.weights[i] * est.value;
  }

  BoundCheck c;
  c.name = "capacity_identity";
  c.lhs = cap;
  c.rhs = a_mean * std::exp(integral);
  c.relation = Relation::Approx;
  double rel = std::abs(c.lhs - c.rhs) / std::max(std::abs(c.rhs), 1e-300);
  c.holds = rel <= settings.identity_tol;
  c.slack = settings.identity_tol - rel;
  c.inputs = provenance(model, settings);
  c.inputs["sigma_components"] = sigma.intervals.size();
  c.inputs["sigma_measure"] = sigma.measure();
  c.inputs["A"] = a_mean;
  return c;
}

BoundCheck check_measure_bound(const ErgodicModel& model,
                               const CheckSettings& settings) {
  IntervalUnion sigma = default_spectrum(model, settings);
  std::vector<double> grid = grid_on(sigma, settings.curve_points);
  LyapunovCurve curve = lyapunov_curve(model, grid, settings.n_steps,
                                       settings.n_samples, settings.seed);
  double a_mean = geometric_mean_a(model, 10000, 4, settings.seed);

  // sup over samples of |L|, clipped at 0, plus one stderr.
  double sup = 0.0;
  for (std::size_t i = 0; i < curve.values.size(); ++i)
    sup = std::max(sup, std::max(curve.values[i], 0.0) + curve.stderrs[i]);

  BoundCheck c;
  c.name = "measure_bound";
  c.lhs = sigma.measure();
  c.rhs = 4.0 * a_mean * std::exp(sup);
  c.relation = Relation::LessEqual;
  c.slack = c.rhs - c.lhs;
  c.holds = c.lhs <= c.rhs + settings.slack_allowance;
  c.inputs = provenance(model, settings);
  c.inputs["A"] = a_mean;
  c.inputs["sup_L"] = sup;
  return c;
}

std::pair<BoundCheck, BoundCheck> check_gap_bound(const ErgodicModel& model,
                                                  const CheckSettings& settings) {
  IntervalUnion sigma = default_spectrum(model, settings);
  double gap = sigma.max() - sigma.min();
  SpectralMeasure dos =
      dos_measure(model, settings.dos_n, default_dos_samples(model, settings),
                  settings.m_bins, settings.seed);
  DiscreteMeasure dn = measure_from_histogram(dos);
  double energy = log_energy(dn);
  double a_mean = geometric_mean_a(model, 10000, 4, settings.seed);

  // int L dN over the occupied bins.
  double integral = 0.0;
  for (std::size_t i = 0; i < dn.size(); ++i) {
    LyapunovEstimate est =
        lyapunov(model, Complex(dn.points[i]), kIntegralSteps,
                 kIntegralSamples, mix64(settings.seed, 1000 + i));
    integral += dn.weights[i] * est.value;
  }

  BoundCheck c1;
  c1.name = "gap_bound_energy";
  c1.lhs = gap;
  c1.rhs = 4.0 * std::exp(-energy);
  c1.relation = Relation::GreaterEqual;
  c1.slack = c1.lhs - c1.rhs;
  c1.holds = c1.lhs >= c1.rhs - settings.slack_allowance;
  c1.inputs = provenance(model, settings);
  c1.inputs["I_dN"] = energy;

  BoundCheck c2;
  c2.name = "gap_bound_lyapunov";
  c2.lhs = gap;
  c2.rhs = 4.0 * a_mean * std::exp(integral);
  c2.relation = Relation::GreaterEqual;
  c2.slack = c2.lhs - c2.rhs;
  c2.holds = c2.lhs >= c2.rhs - settings.slack_allowance;
  c2.inputs = provenance(model, settings);
  c2.inputs["A"] = a_mean;
  c2.inputs["int_L_dN"] = integral;

  double coherence = std::abs(c1.rhs - c2.rhs) / std::max(c1.rhs, 1e-300);
  c1.inputs["rhs_coherence"] = coherence;
  c2.inputs["rhs_coherence"] = coherence;
  return {c1, c2};
}

HolderEstimate estimate_holder(const LyapunovCurve& curve,
                               const IntervalUnion& sigma,
                               const std::vector<double>& alpha_grid) {
  if (curve.grid.size() < 2)
    throw std::invalid_argument("estimate_holder: need at least 2 points");
  if (alpha_grid.empty())
    throw std::invalid_argument("estimate_holder: empty alpha grid");

  // Component index per point; pairs must share a component.
  std::vector<int> comp(curve.grid.size(), -1);
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    for (std::size_t k = 0; k < sigma.intervals.size(); ++k)
      if (curve.grid[i] >= sigma.intervals[k].first &&
          curve.grid[i] <= sigma.intervals[k].second) {
        comp[i] = static_cast<int>(k);
        break;
      }

  std::vector<std::pair<double, double>> pairs; // (|dE|, |dL|)
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    for (std::size_t j = i + 1; j < curve.grid.size(); ++j) {
      if (comp[i] < 0 || comp[i] != comp[j]) continue;
      double de = std::abs(curve.grid[j] - curve.grid[i]);
      if (de <= 0.0) continue;
      pairs.emplace_back(de, std::abs(curve.values[j] - curve.values[i]));
    }

  HolderEstimate h;
  double max_dl = 0.0;
  for (auto& [de, dl] : pairs) max_dl = std::max(max_dl, dl);
  // Oscillation below the Lyapunov numerical tolerance means the curve is
  // constant up to noise; the bound degenerates to the trivial rhs = 0.
  if (pairs.empty() || max_dl <= kLyapunovTol) {
    h.degenerate = true;
    h.alpha = alpha_grid.front();
    h.c = 0.0;
    return h;
  }

  double img = image_measure(curve, 0.02);
  double best_rhs = -1.0;
  for (double alpha : alpha_grid) {
    double c = 0.0;
    for (auto& [de, dl] : pairs) c = std::max(c, dl / std::pow(de, alpha));
    double rhs = c > 0.0
        ? std::pow(img / (c * std::pow(4.0, 1.0 - alpha)), 1.0 / alpha)
        : 0.0;
    if (rhs > best_rhs) {
      best_rhs = rhs;
      h.alpha = alpha;
      h.c = c;
    }
  }

  // Log-log least-squares residual of the modulus of continuity.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (auto& [de, dl] : pairs) {
    if (dl <= 0.0) continue;
    double x = std::log(de), y = std::log(dl);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n >= 2) {
    double denom = static_cast<double>(n) * sxx - sx * sx;
    double b1 = denom != 0.0 ? (static_cast<double>(n) * sxy - sx * sy) / denom : 0.0;
    double b0 = (sy - b1 * sx) / static_cast<double>(n);
    double rss = 0.0;
    for (auto& [de, dl] : pairs) {
      if (dl <= 0.0) continue;
      double r = std::log(dl) - (b0 + b1 * std::log(de));
      rss += r * r;
    }
    h.fit_residual = std::sqrt(rss / static_cast<double>(n));
  }
  return h;
}

double image_measure(const LyapunovCurve& curve, double merge_tol) {
  if (curve.values.empty())
    throw std::invalid_argument("image_measure: empty curve");
  std::vector<double> v = curve.values;
  std::sort(v.begin(), v.end());
  double total = 0.0;
  double lo = v.front(), hi = v.front();
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] - hi < merge_tol) {
      hi = v[i];
    } else {
      total += hi - lo;
      lo = hi = v[i];
    }
  }
  total += hi - lo;
  return total;
}

BoundCheck check_holder_bound(const ErgodicModel& model,
                              const CheckSettings& settings) {
  IntervalUnion sigma = default_spectrum(model, settings);
  std::vector<double> grid = grid_on(sigma, std::max<std::size_t>(settings.curve_points, 21));
  LyapunovCurve curve = lyapunov_curve(model, grid, settings.n_steps,
                                       settings.n_samples, settings.seed);
  HolderEstimate h = estimate_holder(curve, sigma, settings.alpha_grid);
  double img = h.degenerate ? 0.0 : image_measure(curve, 0.02);

  BoundCheck c;
  c.name = "holder_bound";
  c.lhs = sigma.max() - sigma.min();
  c.relation = Relation::GreaterEqual;
  c.inputs = provenance(model, settings);
  c.inputs["alpha"] = h.alpha;
  c.inputs["C"] = h.c;
  c.inputs["fit_residual"] = h.fit_residual;
  c.inputs["image_measure"] = img;
  c.inputs["degenerate"] = h.degenerate;
  if (h.degenerate || img <= 1e-12 || h.c <= 0.0) {
    c.rhs = 0.0;
    c.holds = true;
    c.slack = c.lhs;
    return c;
  }
  c.rhs = std::pow(img / (h.c * std::pow(4.0, 1.0 - h.alpha)), 1.0 / h.alpha);
  c.slack = c.lhs - c.rhs;
  c.holds = c.lhs >= c.rhs - settings.slack_allowance;

  // Simplified form when L vanishes somewhere on the spectrum.
  double min_l = *std::min_element(curve.values.begin(), curve.values.end());
  if (min_l <= 0.02) {
    double sup = *std::max_element(curve.values.begin(), curve.values.end());
    c.inputs["rhs_sup_form"] =
        std::pow(std::max(sup, 0.0) / (h.c * std::pow(4.0, 1.0 - h.alpha)),
                 1.0 / h.alpha);
  }
  return c;
}

bool CheckReport::all_hold() const {
  for (auto& c : checks)
    if (!c.holds) return false;
  return true;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (auto& c : checks) j["checks"].push_back(c.to_json());
  nlohmann::json t;
  t["max_residual"] = thouless.max_residual;
  t["mean_residual"] = thouless.mean_residual;
  t["residuals"] = thouless.residuals;
  j["thouless"] = t;
  j["all_hold"] = all_hold();
  return j;
}

CheckReport run_all_checks(const ErgodicModel& model,
                           const CheckSettings& settings) {
  CheckReport rep;
  rep.thouless =
      verify_thouless(model, default_thouless_points(model), settings);

  BoundCheck th;
  th.name = "thouless_residual";
  th.lhs = rep.thouless.max_residual;
  th.rhs = 0.05;
  th.relation = Relation::LessEqual;
  th.slack = th.rhs - th.lhs;
  th.holds = th.lhs <= th.rhs;
  th.inputs = provenance(model, settings);
  rep.checks.push_back(th);

  rep.checks.push_back(verify_capacity_identity(model, settings));
  rep.checks.push_back(check_measure_bound(model, settings));
  auto [g1, g2] = check_gap_bound(model, settings);
  rep.checks.push_back(g1);
  rep.checks.push_back(g2);
  rep.checks.push_back(check_holder_bound(model, settings));
  return rep;
}

} // namespace jacobi
