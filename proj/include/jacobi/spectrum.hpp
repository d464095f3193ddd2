#ifndef JACOBI_SPECTRUM_HPP
#define JACOBI_SPECTRUM_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "jacobi/models.hpp"

namespace jacobi {

// Binned probability measure on the energy axis (density of states dN).
struct SpectralMeasure {
  std::vector<double> bin_edges; // length m+1, strictly increasing
  std::vector<double> weights;   // length m, nonnegative, sums to 1
  std::size_t n_eigenvalues_total = 0;

  std::size_t bins() const { return weights.size(); }
  double bin_center(std::size_t i) const {
    return 0.5 * (bin_edges[i] + bin_edges[i + 1]);
  }
};

// Finitely many disjoint closed intervals [l_i, r_i], sorted.
struct IntervalUnion {
  std::vector<std::pair<double, double>> intervals;

  double measure() const;
  double min() const { return intervals.front().first; }
  double max() const { return intervals.back().second; }
  double diameter() const { return max() - min(); }
  bool empty() const { return intervals.empty(); }
  bool contains(double x, double tol = 0.0) const;

  // Builds a union from (possibly overlapping) intervals, joining any pair
  // closer than gap_tol.
  static IntervalUnion merged(std::vector<std::pair<double, double>> raw,
                              double gap_tol);
  // Degenerate intervals around sorted points, merged the same way.
  static IntervalUnion from_points(std::vector<double> points, double gap_tol);
};

// All eigenvalues of the n x n tridiagonal truncation, sorted, via Sturm
// counting + bisection; absolute accuracy 1e-10.
std::vector<double> eigenvalues_truncated(const ParameterSequence& params,
                                          std::size_t n);

// Number of eigenvalues of the n x n truncation strictly below x.
int sturm_count_below(const ParameterSequence& params, std::size_t n, double x);

SpectralMeasure dos_measure(const ErgodicModel& model, std::size_t n,
                            std::size_t n_samples, std::size_t m_bins,
                            std::uint64_t seed);

// Integrated density of states k(E) = measure((-inf, E]), piecewise linear
// within bins.
double ids(const SpectralMeasure& measure, double energy);

// {E : |tr M_q(E)| <= 2} for the one-period monodromy of a period-q
// parameter block; edges located by bisection to 1e-9.
IntervalUnion discriminant_bands(const ParameterSequence& period,
                                 std::size_t resolution = 0);

double monodromy_trace(const ParameterSequence& period, double energy);

enum class SpectrumMethod { Eigencloud, Approximant };

// Interval approximation of the a.s. spectrum.  Eigencloud merges pooled
// truncation eigenvalues (resolution = truncation size); approximant unions
// discriminant bands of a rational approximant over a phase grid
// (resolution = minimum approximant denominator).  gap_tol < 0 selects the
// default 4*diameter/resolution (eigencloud) or a small merge tolerance
// (approximant); n_samples = 0 selects a per-model default.
IntervalUnion spectrum_approx(const ErgodicModel& model, SpectrumMethod method,
                              std::size_t resolution, std::uint64_t seed,
                              double gap_tol = -1.0, std::size_t n_samples = 0);

} // namespace jacobi

#endif
