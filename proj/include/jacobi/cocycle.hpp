#ifndef JACOBI_COCYCLE_HPP
#define JACOBI_COCYCLE_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "jacobi/models.hpp"

namespace jacobi {

using Complex = std::complex<double>;

// 2x2 complex matrix, row major.
struct Matrix2 {
  Complex m11{0.0}, m12{0.0}, m21{0.0}, m22{0.0};

  Matrix2 operator*(const Matrix2& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
  double frobenius() const;
  double norm2() const; // operator 2-norm
  Complex det() const { return m11 * m22 - m12 * m21; }
  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

// One-step transfer matrix (1/a_cur) [[z-b, -a_prev],[a_cur, 0]].
// a_prev = 0 encodes the boundary step at n = 1.
Matrix2 step_matrix(double a_prev, double a_cur, double b, Complex z);

struct CocycleProduct {
  Matrix2 normalized; // unit Frobenius norm
  double log_norm;    // log||A_z^N|| = log_norm + log||normalized||
};

// Product A_z(N)...A_z(1) with per-step Frobenius renormalization.
CocycleProduct cocycle_product(const ParameterSequence& params, Complex z);

struct LyapunovEstimate {
  double value = 0.0;   // nats per step
  double stderr_ = 0.0; // sample standard error over realizations
  std::size_t n_steps = 0;
  std::size_t n_samples = 0;
  Complex z{0.0};
};

struct LyapunovCurve {
  std::vector<double> grid;   // strictly increasing energies
  std::vector<double> values;
  std::vector<double> stderrs;
};

// Default numerical tolerance for asserting L >= 0.
inline constexpr double kLyapunovTol = 0.02;

// (1/n) log||A_z^n|| averaged over n_samples phases/realizations.
// Phases are equidistributed on [0,1) for rotation models; Anderson samples
// get independent derived seeds.  Deterministic given (model, z, seed).
LyapunovEstimate lyapunov(const ErgodicModel& model, Complex z,
                          std::size_t n_steps, std::size_t n_samples,
                          std::uint64_t seed);

// exp of the ergodic average of log a_n; exactly 1 when a == 1.
double geometric_mean_a(const ErgodicModel& model, std::size_t n_steps,
                        std::size_t n_samples, std::uint64_t seed);

LyapunovCurve lyapunov_curve(const ErgodicModel& model,
                             const std::vector<double>& grid,
                             std::size_t n_steps, std::size_t n_samples,
                             std::uint64_t seed);

} // namespace jacobi

#endif
