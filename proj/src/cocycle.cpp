#include "jacobi/cocycle.hpp"

#include <cmath>
#include <stdexcept>

namespace jacobi {

double Matrix2::frobenius() const {
  return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) +
                   std::norm(m22));
}

double Matrix2::norm2() const {
  // Singular values of a 2x2 from the Gram invariants.
  double t = std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22);
  double d = std::abs(det());
  double disc = t * t - 4.0 * d * d;
  if (disc < 0.0) disc = 0.0;
  return std::sqrt(0.5 * (t + std::sqrt(disc)));
}

Matrix2 step_matrix(double a_prev, double a_cur, double b, Complex z) {
  if (!(a_cur > 0.0)) throw std::invalid_argument("step_matrix: a_cur must be positive");
  double inv = 1.0 / a_cur;
  return {(z - b) * inv, Complex(-a_prev * inv), Complex(1.0), Complex(0.0)};
}

namespace {

template <class S>
struct Mat {
  S a, b, c, d;
};

template <class S>
inline double fro2(const Mat<S>& m) {
  return std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
}

// Accumulated log||A_z^N|| with per-step renormalization; writes the final
// unit-norm product into out.
template <class S>
double product_log_norm(const std::vector<double>& av,
                        const std::vector<double>& bv, S z, Mat<S>& out) {
  Mat<S> m{S(1.0), S(0.0), S(0.0), S(1.0)};
  double log_norm = 0.0;
  double a_prev = 0.0; // boundary convention a_0 = 0
  for (std::size_t n = 0; n < av.size(); ++n) {
    const double inv = 1.0 / av[n];
    const S t11 = (z - bv[n]) * inv;
    const double t12 = -a_prev * inv;
    // T = [[t11, t12],[1,0]], m <- T*m
    Mat<S> r{t11 * m.a + t12 * m.c, t11 * m.b + t12 * m.d, m.a, m.b};
    double f = std::sqrt(fro2(r));
    log_norm += std::log(f);
    double s = 1.0 / f;
    m = {r.a * s, r.b * s, r.c * s, r.d * s};
    a_prev = av[n];
  }
  out = m;
  return log_norm;
}

double sample_log_norm(const ParameterSequence& p, Complex z, Matrix2* out) {
  if (z.imag() == 0.0) {
    Mat<double> m{};
    double ln = product_log_norm(p.a, p.b, z.real(), m);
    if (out) *out = {Complex(m.a), Complex(m.b), Complex(m.c), Complex(m.d)};
    return ln;
  }
  Mat<Complex> m{};
  double ln = product_log_norm(p.a, p.b, z, m);
  if (out) *out = {m.a, m.b, m.c, m.d};
  return ln;
}

} // namespace

CocycleProduct cocycle_product(const ParameterSequence& params, Complex z) {
  if (params.size() == 0)
    throw std::invalid_argument("cocycle_product: empty parameter sequence");
  CocycleProduct cp;
  cp.log_norm = sample_log_norm(params, z, &cp.normalized);
  return cp;
}

LyapunovEstimate lyapunov(const ErgodicModel& model, Complex z,
                          std::size_t n_steps, std::size_t n_samples,
                          std::uint64_t seed) {
  if (n_steps < 100) throw std::invalid_argument("lyapunov: n_steps must be >= 100");
  if (n_samples < 1) throw std::invalid_argument("lyapunov: n_samples must be >= 1");

  double sum = 0.0, sum2 = 0.0;
  for (std::size_t j = 0; j < n_samples; ++j) {
    ParameterSequence p =
        ensemble_realization(model, j, n_samples, n_steps, seed);
    double v = sample_log_norm(p, z, nullptr) / static_cast<double>(n_steps);
    sum += v;
    sum2 += v * v;
  }
  LyapunovEstimate est;
  est.value = sum / static_cast<double>(n_samples);
  if (n_samples > 1) {
    double var = (sum2 - sum * sum / static_cast<double>(n_samples)) /
                 static_cast<double>(n_samples - 1);
    est.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(n_samples));
  }
  est.n_steps = n_steps;
  est.n_samples = n_samples;
  est.z = z;
  return est;
}

double geometric_mean_a(const ErgodicModel& model, std::size_t n_steps,
                        std::size_t n_samples, std::uint64_t seed) {
  if (n_steps < 1) throw std::invalid_argument("geometric_mean_a: n_steps must be >= 1");
  if (n_samples < 1) n_samples = 1;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < n_samples; ++j) {
    ParameterSequence p =
        ensemble_realization(model, j, n_samples, n_steps, seed);
    for (double av : p.a) acc += std::log(av);
    count += p.size();
  }
  return std::exp(acc / static_cast<double>(count));
}

LyapunovCurve lyapunov_curve(const ErgodicModel& model,
                             const std::vector<double>& grid,
                             std::size_t n_steps, std::size_t n_samples,
                             std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("lyapunov_curve: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("lyapunov_curve: grid must be strictly increasing");

  LyapunovCurve curve;
  curve.grid = grid;
  curve.values.resize(grid.size());
  curve.stderrs.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    LyapunovEstimate est =
        lyapunov(model, Complex(grid[i]), n_steps, n_samples, mix64(seed, i));
    curve.values[i] = est.value;
    curve.stderrs[i] = est.stderr_;
  }
  return curve;
}

} // namespace jacobi
