#ifndef JACOBI_POTENTIAL_HPP
#define JACOBI_POTENTIAL_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include "jacobi/spectrum.hpp"

namespace jacobi {

// Weighted point cloud with cell widths; each atom stands for a uniform unit
// mass on a segment of length delta_i, which regularizes the diagonal of the
// logarithmic energy.
struct DiscreteMeasure {
  std::vector<double> points;      // strictly increasing
  std::vector<double> weights;     // nonnegative, sums to 1
  std::vector<double> cell_widths; // positive

  std::size_t size() const { return points.size(); }
  void validate() const;
};

// Histogram -> DiscreteMeasure with delta = bin width (empty bins dropped).
DiscreteMeasure measure_from_histogram(const SpectralMeasure& histogram);

// U(z) = sum_i w_i log(1/|z - x_i|); within half a cell of an atom the
// uniform-segment average of the kernel is used instead of the point value.
double log_potential(const DiscreteMeasure& measure, std::complex<double> z);

// I(mu) = sum_{i != j} w_i w_j log(1/|x_i - x_j|) + sum_i w_i^2 (3/2 - log d_i).
double log_energy(const DiscreteMeasure& measure);

struct EquilibriumOptions {
  double flat_tol = 0.02;   // Frostman flatness criterion on support cells
  double solver_tol = 0.01;
  std::size_t max_iters = 5000;
};

// Thrown when the energy minimizer does not reach flat_tol in the budget.
struct EquilibriumNonConvergence : std::runtime_error {
  double achieved_flatness;
  explicit EquilibriumNonConvergence(double flatness);
};

// Energy-minimizing probability measure on K, on per-interval Chebyshev
// grids, by projected gradient descent over the simplex.
DiscreteMeasure equilibrium_measure(const IntervalUnion& k_set,
                                    std::size_t m_points,
                                    const EquilibriumOptions& opts = {});

// exp(-I(mu_K)).  A single interval takes the exact branch (b-a)/4 unless
// force_solver is set.
double capacity(const IntervalUnion& k_set, std::size_t m_points,
                bool force_solver = false,
                const EquilibriumOptions& opts = {});

// Per-interval Chebyshev cells: returns midpoints and induced widths.
void chebyshev_cells(double lo, double hi, std::size_t m,
                     std::vector<double>& points, std::vector<double>& widths);

} // namespace jacobi

#endif
