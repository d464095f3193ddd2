#ifndef JACOBI_BOUNDS_HPP
#define JACOBI_BOUNDS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "jacobi/cocycle.hpp"
#include "jacobi/potential.hpp"
#include "jacobi/spectrum.hpp"

namespace jacobi {

enum class Relation { LessEqual, GreaterEqual, Approx };

std::string to_string(Relation r);

// One verified inequality/identity with its slack and full provenance.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::LessEqual;
  bool holds = false;
  double slack = 0.0; // signed, relation-respecting (>= 0 iff satisfied)
  nlohmann::json inputs;

  nlohmann::json to_json() const;
};

struct HolderEstimate {
  double alpha = 0.5;
  double c = 0.0; // max sampled |dL| / |dE|^alpha, so the sampled
                  // Hoelder inequality holds by construction
  double fit_residual = 0.0;
  bool degenerate = false; // constant curve, C = 0
};

struct ThoulessReport {
  std::vector<Complex> points;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double mean_residual = 0.0;
};

struct CheckSettings {
  std::uint64_t seed = 1;
  std::size_t n_steps = 10000;       // cocycle length per Lyapunov estimate
  std::size_t n_samples = 8;         // realizations per estimate
  std::size_t dos_n = 1000;          // truncation size for the DOS
  std::size_t dos_samples = 0;       // 0 = per-model default
  std::size_t m_bins = 200;
  std::size_t spectrum_resolution = 0; // 0 = per-model default
  std::size_t curve_points = 21;     // Lyapunov grid points on the spectrum
  std::size_t eq_m_points = 1200;    // equilibrium grid for the identity check
  double identity_tol = 0.05;
  double slack_allowance = 0.01;     // solver_tol share of the holds margin
  std::vector<double> alpha_grid = {0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0};
};

// Spectrum approximation with per-model method defaults: discriminant bands
// (exact) for Free/Periodic, rational approximant bands for quasiperiodic
// models, eigencloud for Anderson.
IntervalUnion default_spectrum(const ErgodicModel& model,
                               const CheckSettings& settings);

// Evenly spread sample energies inside an interval union, allocated to
// components proportionally to length.
std::vector<double> grid_on(const IntervalUnion& sigma, std::size_t n_points);

// Thouless formula L(z) = int log|E-z| dN(E) - log A at smooth test points.
ThoulessReport verify_thouless(const ErgodicModel& model,
                               const std::vector<Complex>& test_points,
                               const CheckSettings& settings);

// Cap(Sigma) = A exp(int L dmu_Sigma).
BoundCheck verify_capacity_identity(const ErgodicModel& model,
                                    const CheckSettings& settings);

// |Sigma| <= 4 A exp(sup_Sigma |L|).
BoundCheck check_measure_bound(const ErgodicModel& model,
                               const CheckSettings& settings);

// lambda_M - lambda_m >= 4 exp(-I(dN))  and  >= 4 A exp(int L dN).
std::pair<BoundCheck, BoundCheck> check_gap_bound(const ErgodicModel& model,
                                                  const CheckSettings& settings);

// Sampled Hoelder modulus of the Lyapunov curve; pairs are restricted to the
// same spectral component.
HolderEstimate estimate_holder(const LyapunovCurve& curve,
                               const IntervalUnion& sigma,
                               const std::vector<double>& alpha_grid);

// Lower estimate of |L(Sigma)|: merged length of the sampled value cloud.
double image_measure(const LyapunovCurve& curve, double merge_tol);

// lambda_M - lambda_m >= (|L(Sigma)| / (C 4^{1-alpha}))^{1/alpha}.
BoundCheck check_holder_bound(const ErgodicModel& model,
                              const CheckSettings& settings);

struct CheckReport {
  std::vector<BoundCheck> checks;
  ThoulessReport thouless;
  bool all_hold() const;
  nlohmann::json to_json() const;
};

// The five verifications (Thouless reported as a residual-threshold check).
CheckReport run_all_checks(const ErgodicModel& model,
                           const CheckSettings& settings);

// Default off-axis Thouless points: ten energies across the spectral
// enclosure, lifted to Im z = 0.5.
std::vector<Complex> default_thouless_points(const ErgodicModel& model,
                                             std::size_t count = 10);

} // namespace jacobi

#endif
