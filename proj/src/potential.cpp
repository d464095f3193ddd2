#include "jacobi/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace jacobi {

void DiscreteMeasure::validate() const {
  if (points.size() != weights.size() || points.size() != cell_widths.size())
    throw std::invalid_argument("DiscreteMeasure: field lengths differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i] > points[i - 1]))
      throw std::invalid_argument("DiscreteMeasure: points must be strictly increasing");
    if (weights[i] < 0.0)
      throw std::invalid_argument("DiscreteMeasure: negative weight");
    if (!(cell_widths[i] > 0.0))
      throw std::invalid_argument("DiscreteMeasure: nonpositive cell width");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("DiscreteMeasure: weights must sum to 1");
}

DiscreteMeasure measure_from_histogram(const SpectralMeasure& histogram) {
  DiscreteMeasure m;
  double total = 0.0;
  for (std::size_t i = 0; i < histogram.bins(); ++i) {
    if (histogram.weights[i] <= 0.0) continue;
    m.points.push_back(histogram.bin_center(i));
    m.weights.push_back(histogram.weights[i]);
    m.cell_widths.push_back(histogram.bin_edges[i + 1] - histogram.bin_edges[i]);
    total += histogram.weights[i];
  }
  for (double& w : m.weights) w /= total;
  return m;
}

double log_potential(const DiscreteMeasure& measure, std::complex<double> z) {
  double u = 0.0;
  for (std::size_t i = 0; i < measure.size(); ++i) {
    double d = std::abs(z - std::complex<double>(measure.points[i]));
    double half = 0.5 * measure.cell_widths[i];
    if (d < half) {
      // Average of -log|.| over the cell, split at the evaluation point.
      double delta = measure.cell_widths[i];
      double p = std::clamp(z.real() - (measure.points[i] - half), 1e-300, delta);
      double q = std::clamp((measure.points[i] + half) - z.real(), 1e-300, delta);
      u += measure.weights[i] * (1.0 - (p * std::log(p) + q * std::log(q)) / delta);
    } else {
      u -= measure.weights[i] * std::log(d);
    }
  }
  return u;
}

double log_energy(const DiscreteMeasure& measure) {
  const std::size_t m = measure.size();
  double e = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = measure.points[i], wi = measure.weights[i];
    double row = 0.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      double d = measure.points[j] - xi;
      if (d == 0.0)
        throw std::invalid_argument("log_energy: coincident points");
      row -= measure.weights[j] * std::log(d);
    }
    e += 2.0 * wi * row;
    e += wi * wi * (1.5 - std::log(measure.cell_widths[i]));
  }
  return e;
}

void chebyshev_cells(double lo, double hi, std::size_t m,
                     std::vector<double>& points, std::vector<double>& widths) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (std::size_t j = 0; j < m; ++j) {
    // j running from the right edge; emit ascending.
    std::size_t k = m - 1 - j;
    double c0 = mid + half * std::cos(M_PI * static_cast<double>(k + 1) /
                                      static_cast<double>(m));
    double c1 = mid + half * std::cos(M_PI * static_cast<double>(k) /
                                      static_cast<double>(m));
    double p = mid + half * std::cos(M_PI * (static_cast<double>(k) + 0.5) /
                                     static_cast<double>(m));
    points.push_back(p);
    widths.push_back(c1 - c0);
  }
}

EquilibriumNonConvergence::EquilibriumNonConvergence(double flatness)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "equilibrium_measure: flatness " << flatness
           << " did not reach flat_tol within the iteration budget";
        return os.str();
      }()),
      achieved_flatness(flatness) {}

namespace {

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& w) {
  std::vector<double> u = w;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  std::size_t rho = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) {
      rho = j + 1;
      tau = t;
    }
  }
  (void)rho;
  for (double& x : w) x = std::max(x - tau, 0.0);
}

double frostman_flatness(const DiscreteMeasure& m, double support_floor) {
  std::vector<double> u;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.weights[i] > support_floor)
      u.push_back(log_potential(m, std::complex<double>(m.points[i])));
  if (u.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> tmp = u;
  std::nth_element(tmp.begin(), tmp.begin() + tmp.size() / 2, tmp.end());
  double med = tmp[tmp.size() / 2];
  double flat = 0.0;
  for (double v : u) flat = std::max(flat, std::abs(v - med));
  return flat;
}

} // namespace

DiscreteMeasure equilibrium_measure(const IntervalUnion& k_set,
                                    std::size_t m_points,
                                    const EquilibriumOptions& opts) {
  if (k_set.empty())
    throw std::invalid_argument("equilibrium_measure: empty set");
  if (m_points < 50)
    throw std::invalid_argument("equilibrium_measure: m_points must be >= 50");
  for (auto& [l, r] : k_set.intervals)
    if (!(r > l))
      throw std::invalid_argument("equilibrium_measure: degenerate interval");

  // Allocate grid points to intervals proportionally to length, at least a
  // handful per interval, on Chebyshev cells (matching the edge singularity
  // of equilibrium densities).
  const std::size_t n_int = k_set.intervals.size();
  double total_len = k_set.measure();
  std::vector<std::size_t> alloc(n_int);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < n_int; ++i) {
    auto [l, r] = k_set.intervals[i];
    double share = total_len > 0.0 ? (r - l) / total_len : 1.0 / static_cast<double>(n_int);
    alloc[i] = std::max<std::size_t>(16, static_cast<std::size_t>(
        share * static_cast<double>(m_points)));
    assigned += alloc[i];
  }
  while (assigned > m_points && *std::max_element(alloc.begin(), alloc.end()) > 16) {
    auto it = std::max_element(alloc.begin(), alloc.end());
    --*it;
    --assigned;
  }
  while (assigned < m_points) {
    auto it = std::max_element(alloc.begin(), alloc.end());
    ++*it;
    ++assigned;
  }

  DiscreteMeasure m;
  std::vector<double> w;
  for (std::size_t i = 0; i < n_int; ++i) {
    auto [l, r] = k_set.intervals[i];
    std::size_t before = m.points.size();
    chebyshev_cells(l, r, alloc[i], m.points, m.cell_widths);
    std::size_t added = m.points.size() - before;
    // Arcsine-shaped start: uniform over Chebyshev cells, interval mass
    // proportional to length.
    double share = total_len > 0.0 ? (r - l) / total_len : 1.0 / static_cast<double>(n_int);
    for (std::size_t j = 0; j < added; ++j)
      w.push_back(share / static_cast<double>(added));
  }
  const std::size_t m_tot = m.points.size();

  // Quadratic-form kernel: K_ij = -log|x_i - x_j|, diagonal = exact uniform
  // self-energy of each cell.
  std::vector<double> kernel(m_tot * m_tot);
  for (std::size_t i = 0; i < m_tot; ++i) {
    kernel[i * m_tot + i] = 1.5 - std::log(m.cell_widths[i]);
    for (std::size_t j = i + 1; j < m_tot; ++j) {
      double v = -std::log(m.points[j] - m.points[i]);
      kernel[i * m_tot + j] = v;
      kernel[j * m_tot + i] = v;
    }
  }

  auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (std::size_t i = 0; i < m_tot; ++i) {
      const double* row = kernel.data() + i * m_tot;
      double s = 0.0;
      for (std::size_t j = 0; j < m_tot; ++j) s += row[j] * x[j];
      out[i] = s;
    }
  };

  std::vector<double> g(m_tot), trial(m_tot), g_trial(m_tot);
  apply(w, g);
  double energy = std::inner_product(w.begin(), w.end(), g.begin(), 0.0);

  const double support_floor = 1e-9 / static_cast<double>(m_tot);
  double flatness = std::numeric_limits<double>::infinity();
  double step = 0.05;
  for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
    if (iter % 10 == 0) {
      m.weights = w;
      flatness = frostman_flatness(m, support_floor);
      if (flatness <= opts.flat_tol) {
        double sum = std::accumulate(w.begin(), w.end(), 0.0);
        for (double& x : m.weights) x /= sum;
        return m;
      }
    }
    // Projected gradient step with backtracking on the energy.
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t i = 0; i < m_tot; ++i)
        trial[i] = w[i] - step * 2.0 * g[i];
      project_simplex(trial);
      apply(trial, g_trial);
      double e_trial =
          std::inner_product(trial.begin(), trial.end(), g_trial.begin(), 0.0);
      if (e_trial <= energy + 1e-14) {
        w.swap(trial);
        g.swap(g_trial);
        energy = e_trial;
        step *= 1.6;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Stalled at machine precision; report the current flatness.
      m.weights = w;
      flatness = frostman_flatness(m, support_floor);
      if (flatness <= opts.flat_tol) return m;
      throw EquilibriumNonConvergence(flatness);
    }
  }
  m.weights = w;
  flatness = frostman_flatness(m, support_floor);
  if (flatness <= opts.flat_tol) return m;
  throw EquilibriumNonConvergence(flatness);
}

double capacity(const IntervalUnion& k_set, std::size_t m_points,
                bool force_solver, const EquilibriumOptions& opts) {
  if (k_set.empty())
    throw std::invalid_argument("capacity: empty set");
  if (k_set.intervals.size() == 1 && !force_solver) {
    auto [l, r] = k_set.intervals[0];
    return (r - l) / 4.0;
  }
  DiscreteMeasure mu = equilibrium_measure(k_set, m_points, opts);
  return std::exp(-log_energy(mu));
}

} // namespace jacobi
