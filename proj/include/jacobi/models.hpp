#ifndef JACOBI_MODELS_HPP
#define JACOBI_MODELS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace jacobi {

// Counter-based generator: the n-th variate is a pure function of (seed, n).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t mix64(std::uint64_t seed, std::uint64_t n);
double uniform01(std::uint64_t seed, std::uint64_t n);

inline double frac(double x) {
  double f = x - static_cast<long long>(x);
  return f < 0.0 ? f + 1.0 : f;
}

enum class ModelKind { Free, AlmostMathieu, Periodic, Anderson, Sturmian };

std::string to_string(ModelKind kind);

// An ergodic family of Jacobi operators: parameters a_n, b_n are generated
// by sampling fixed functions along orbits of a transformation of the phase
// space (circle rotation, cyclic shift, i.i.d. shift, or a point).
struct ErgodicModel {
  ModelKind kind = ModelKind::Free;

  double lambda = 0.0;          // AlmostMathieu coupling, nonzero
  double alpha = 0.0;           // rotation frequency in (0,1)
  double coupling = 0.0;        // Sturmian potential height V
  double disorder = 0.0;        // Anderson width W > 0
  std::uint64_t seed = 0;       // Anderson realization seed
  std::vector<double> period_a; // Periodic off-diagonals, all > 0
  std::vector<double> period_b; // Periodic diagonals

  static ErgodicModel free();
  static ErgodicModel almost_mathieu(double lambda, double alpha);
  static ErgodicModel periodic(std::vector<double> a, std::vector<double> b);
  static ErgodicModel anderson(double W, std::uint64_t seed);
  static ErgodicModel sturmian(double V, double alpha);

  // Throws std::invalid_argument on constraint violations.
  void validate() const;

  int period() const { return static_cast<int>(period_a.size()); }
  bool quasiperiodic() const {
    return kind == ModelKind::AlmostMathieu || kind == ModelKind::Sturmian;
  }
  // [min b - 2 max a, max b + 2 max a] for any realization.
  std::pair<double, double> spectral_enclosure() const;
  std::string describe() const;
};

// First N Jacobi parameters of one realization; a_0 = 0 is implicit.
struct ParameterSequence {
  std::vector<double> a; // a_1..a_N, all positive
  std::vector<double> b; // b_1..b_N
  std::string origin;

  std::size_t size() const { return a.size(); }
};

ParameterSequence sample_parameters(const ErgodicModel& model, double omega,
                                    std::size_t n);

// j-th member of an n_samples ensemble: rotation models sweep equidistributed
// phases, Periodic cycles offsets, Anderson derives an independent counter
// seed per sample.  Deterministic given (model, j, n_samples, seed).
ParameterSequence ensemble_realization(const ErgodicModel& model, std::size_t j,
                                       std::size_t n_samples, std::size_t n,
                                       std::uint64_t seed);

// T^n omega.  Rotations return the fractional part of omega + n*alpha;
// Periodic shifts the position index; Free and Anderson are trivial.
double orbit(const ErgodicModel& model, double omega, std::uint64_t n);

// Continued-fraction convergents p_k/q_k of alpha, in order, until the
// denominator exceeds max_q (the first convergent past max_q is included).
std::vector<std::pair<long long, long long>> convergents(double alpha,
                                                         long long max_q);

} // namespace jacobi

#endif
