#include "jacobi/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jacobi {

double IntervalUnion::measure() const {
  double s = 0.0;
  for (auto& [l, r] : intervals) s += r - l;
  return s;
}

bool IntervalUnion::contains(double x, double tol) const {
  for (auto& [l, r] : intervals)
    if (x >= l - tol && x <= r + tol) return true;
  return false;
}

IntervalUnion IntervalUnion::merged(std::vector<std::pair<double, double>> raw,
                                    double gap_tol) {
  IntervalUnion u;
  if (raw.empty()) return u;
  std::sort(raw.begin(), raw.end());
  double l = raw[0].first, r = raw[0].second;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].first <= r + gap_tol) {
      r = std::max(r, raw[i].second);
    } else {
      u.intervals.emplace_back(l, r);
      l = raw[i].first;
      r = raw[i].second;
    }
  }
  u.intervals.emplace_back(l, r);
  return u;
}

IntervalUnion IntervalUnion::from_points(std::vector<double> points,
                                         double gap_tol) {
  std::vector<std::pair<double, double>> raw;
  raw.reserve(points.size());
  for (double x : points) raw.emplace_back(x, x);
  return merged(std::move(raw), gap_tol);
}

int sturm_count_below(const ParameterSequence& params, std::size_t n,
                      double x) {
  int count = 0;
  double d = params.b[0] - x;
  if (d == 0.0) d = -1e-300;
  if (d < 0.0) ++count;
  for (std::size_t k = 1; k < n; ++k) {
    d = params.b[k] - x - params.a[k - 1] * params.a[k - 1] / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

std::vector<double> eigenvalues_truncated(const ParameterSequence& params,
                                          std::size_t n) {
  if (n < 1 || n > params.size())
    throw std::invalid_argument("eigenvalues_truncated: need 1 <= N <= length(params)");
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (!(params.a[k] > 0.0))
      throw std::invalid_argument("eigenvalues_truncated: nonpositive a entry");

  // Gershgorin enclosure.
  double lo = params.b[0], hi = params.b[0];
  for (std::size_t k = 0; k < n; ++k) {
    double rad = (k > 0 ? params.a[k - 1] : 0.0) + (k + 1 < n ? params.a[k] : 0.0);
    lo = std::min(lo, params.b[k] - rad);
    hi = std::max(hi, params.b[k] + rad);
  }
  lo -= 1e-8;
  hi += 1e-8;

  const double tol = 1e-10;
  std::vector<double> eig(n);
  // Bisect each index; the previous eigenvalue is a valid lower bracket.
  double lo_k = lo;
  for (std::size_t k = 0; k < n; ++k) {
    double a = lo_k, b = hi;
    while (b - a > tol) {
      double mid = 0.5 * (a + b);
      if (sturm_count_below(params, n, mid) >= static_cast<int>(k) + 1)
        b = mid;
      else
        a = mid;
    }
    eig[k] = 0.5 * (a + b);
    lo_k = a;
  }
  return eig;
}

SpectralMeasure dos_measure(const ErgodicModel& model, std::size_t n,
                            std::size_t n_samples, std::size_t m_bins,
                            std::uint64_t seed) {
  if (n < 50) throw std::invalid_argument("dos_measure: N must be >= 50");
  if (m_bins < 20) throw std::invalid_argument("dos_measure: m_bins must be >= 20");
  if (n_samples < 1) n_samples = 1;

  std::vector<double> pool;
  pool.reserve(n * n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) {
    ParameterSequence p = ensemble_realization(model, j, n_samples, n, seed);
    std::vector<double> eig = eigenvalues_truncated(p, n);
    pool.insert(pool.end(), eig.begin(), eig.end());
  }

  auto [mn_it, mx_it] = std::minmax_element(pool.begin(), pool.end());
  double mn = *mn_it, mx = *mx_it;
  double width = (mx - mn) * (1.0 + 1e-12) + 1e-12;

  SpectralMeasure m;
  m.bin_edges.resize(m_bins + 1);
  for (std::size_t i = 0; i <= m_bins; ++i)
    m.bin_edges[i] = mn + width * static_cast<double>(i) / static_cast<double>(m_bins);
  m.weights.assign(m_bins, 0.0);
  double w = 1.0 / static_cast<double>(pool.size());
  for (double e : pool) {
    auto i = static_cast<std::size_t>((e - mn) / width * static_cast<double>(m_bins));
    if (i >= m_bins) i = m_bins - 1;
    m.weights[i] += w;
  }
  m.n_eigenvalues_total = pool.size();
  return m;
}

double ids(const SpectralMeasure& measure, double energy) {
  if (energy <= measure.bin_edges.front()) return 0.0;
  if (energy >= measure.bin_edges.back()) return 1.0;
  double cum = 0.0;
  for (std::size_t i = 0; i < measure.bins(); ++i) {
    double e0 = measure.bin_edges[i], e1 = measure.bin_edges[i + 1];
    if (energy < e1)
      return cum + measure.weights[i] * (energy - e0) / (e1 - e0);
    cum += measure.weights[i];
  }
  return 1.0;
}

double monodromy_trace(const ParameterSequence& period, double energy) {
  const std::size_t q = period.size();
  // Renormalized product; the scale is restored at the end (clamped so far
  // off-band traces stay finite with the correct sign).
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;
  double log_scale = 0.0;
  for (std::size_t k = 0; k < q; ++k) {
    double a_prev = period.a[(k + q - 1) % q]; // periodic wrap, a_0 := a_q
    double inv = 1.0 / period.a[k];
    double t11 = (energy - period.b[k]) * inv;
    double t12 = -a_prev * inv;
    double r11 = t11 * m11 + t12 * m21;
    double r12 = t11 * m12 + t12 * m22;
    double r21 = m11, r22 = m12;
    double f = std::sqrt(r11 * r11 + r12 * r12 + r21 * r21 + r22 * r22);
    if (f > 0.0) {
      log_scale += std::log(f);
      double s = 1.0 / f;
      m11 = r11 * s; m12 = r12 * s; m21 = r21 * s; m22 = r22 * s;
    } else {
      m11 = r11; m12 = r12; m21 = r21; m22 = r22;
    }
  }
  double tr = m11 + m22;
  double ls = std::min(log_scale, 690.0);
  return tr * std::exp(ls);
}

namespace {

double bisect_trace(const ParameterSequence& period, double lo, double hi,
                    double target) {
  double flo = monodromy_trace(period, lo) - target;
  for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = monodromy_trace(period, mid) - target;
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

namespace {

// {E : |tr M_q(E)| <= threshold}; discriminant_bands is threshold = 2.
IntervalUnion trace_sublevel_bands(const ParameterSequence& period,
                                   double threshold, std::size_t resolution) {
  const std::size_t q = period.size();
  if (q < 1) throw std::invalid_argument("discriminant_bands: empty period");
  for (double av : period.a)
    if (!(av > 0.0))
      throw std::invalid_argument("discriminant_bands: nonpositive a entry");

  double amax = *std::max_element(period.a.begin(), period.a.end());
  double bmin = *std::min_element(period.b.begin(), period.b.end());
  double bmax = *std::max_element(period.b.begin(), period.b.end());
  double lo = bmin - 2.0 * amax - 1e-6;
  double hi = bmax + 2.0 * amax + 1e-6;

  std::size_t n = resolution > 0 ? resolution : 40 * q + 600;

  // Sample the trace, collect all crossings of +/-2.
  std::vector<double> xs(n + 1), tr(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    tr[i] = monodromy_trace(period, xs[i]);
  }
  std::vector<double> breaks{lo, hi};
  for (double target : {threshold, -threshold}) {
    for (std::size_t i = 0; i < n; ++i) {
      double f0 = tr[i] - target, f1 = tr[i + 1] - target;
      if (f0 == 0.0) breaks.push_back(xs[i]);
      if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0))
        breaks.push_back(bisect_trace(period, xs[i], xs[i + 1], target));
    }
  }
  std::sort(breaks.begin(), breaks.end());

  // Keep segments whose midpoint lies inside the band condition.
  std::vector<std::pair<double, double>> raw;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double l = breaks[i], r = breaks[i + 1];
    if (r - l < 1e-13) continue;
    if (std::abs(monodromy_trace(period, 0.5 * (l + r))) <=
        threshold * (1.0 + 1e-12) + 1e-12)
      raw.emplace_back(l, r);
  }
  return IntervalUnion::merged(std::move(raw), 1e-12);
}

} // namespace

IntervalUnion discriminant_bands(const ParameterSequence& period,
                                 std::size_t resolution) {
  return trace_sublevel_bands(period, 2.0, resolution);
}

IntervalUnion spectrum_approx(const ErgodicModel& model, SpectrumMethod method,
                              std::size_t resolution, std::uint64_t seed,
                              double gap_tol, std::size_t n_samples) {
  model.validate();
  auto [enc_lo, enc_hi] = model.spectral_enclosure();
  double diam = enc_hi - enc_lo;

  if (method == SpectrumMethod::Eigencloud) {
    std::size_t n = resolution > 0 ? resolution : 2000;
    if (n_samples == 0) {
      switch (model.kind) {
        case ModelKind::Free:
        case ModelKind::Periodic: n_samples = 1; break;
        case ModelKind::Anderson: n_samples = 10; break;
        default: n_samples = 8; break;
      }
    }
    double gtol = gap_tol >= 0.0 ? gap_tol : 4.0 * diam / static_cast<double>(n);
    std::vector<double> pool;
    pool.reserve(n * n_samples);
    for (std::size_t j = 0; j < n_samples; ++j) {
      ParameterSequence p = ensemble_realization(model, j, n_samples, n, seed);
      std::vector<double> eig = eigenvalues_truncated(p, n);
      pool.insert(pool.end(), eig.begin(), eig.end());
    }
    IntervalUnion u = IntervalUnion::from_points(std::move(pool), gtol);
    // An isolated eigenvalue yields a zero-width component; widen it to the
    // eigencloud's own resolution scale (components stay disjoint: they are
    // at least gtol apart).
    double wmin = gtol / 8.0;
    for (auto& [l, r] : u.intervals)
      if (r - l < wmin) {
        double c = 0.5 * (l + r);
        l = c - 0.5 * wmin;
        r = c + 0.5 * wmin;
      }
    return u;
  }

  // Approximant method.
  double gtol = gap_tol >= 0.0 ? gap_tol : 1e-9 * diam + 1e-12;
  switch (model.kind) {
    case ModelKind::Free: {
      ParameterSequence p = sample_parameters(model, 0.0, 1);
      return discriminant_bands(p);
    }
    case ModelKind::Periodic: {
      ParameterSequence p =
          sample_parameters(model, 0.0, model.period_a.size());
      return discriminant_bands(p);
    }
    case ModelKind::AlmostMathieu:
    case ModelKind::Sturmian: {
      long long min_q = resolution > 0 ? static_cast<long long>(resolution) : 100;
      auto convs = convergents(model.alpha, min_q);
      if (convs.empty())
        throw std::invalid_argument("spectrum_approx: no rational approximant for alpha");
      std::pair<long long, long long> pick = convs.back();
      for (auto& c : convs)
        if (c.second >= min_q) { pick = c; break; }
      auto [pp, qq] = pick;
      ErgodicModel rational = model;
      rational.alpha = static_cast<double>(pp) / static_cast<double>(qq);
      auto q = static_cast<std::size_t>(qq);

      if (model.kind == ModelKind::AlmostMathieu) {
        // Chambers' identity: tr M_q(E, omega) = D(E) - 2 lambda^q cos(2 pi
        // q omega), so the union of bands over the whole phase circle is
        // {|D| <= 2 + 2|lambda|^q}.  D is the trace at the phase where the
        // cosine term vanishes.  (An equidistant q-point phase grid is
        // degenerate here: every grid phase gives the same cosine value.)
        double omega_star = 1.0 / (4.0 * static_cast<double>(q));
        ParameterSequence p = sample_parameters(rational, omega_star, q);
        double amp = std::pow(std::abs(model.lambda), static_cast<double>(q));
        double threshold = 2.0 + 2.0 * std::min(amp, 1e300);
        IntervalUnion bands = trace_sublevel_bands(p, threshold, 0);
        return IntervalUnion::merged(std::move(bands.intervals), gtol);
      }

      // Sturmian: the potential is a two-valued coding, no phase identity
      // applies; union discriminant bands over one phase per lattice offset.
      std::vector<std::pair<double, double>> raw;
      for (std::size_t j = 0; j < q; ++j) {
        double omega = (static_cast<double>(j) + 0.5) / static_cast<double>(q);
        ParameterSequence p = sample_parameters(rational, omega, q);
        IntervalUnion bands = discriminant_bands(p);
        raw.insert(raw.end(), bands.intervals.begin(), bands.intervals.end());
      }
      return IntervalUnion::merged(std::move(raw), gtol);
    }
    case ModelKind::Anderson:
      throw std::invalid_argument("spectrum_approx: approximant method unsupported for anderson");
  }
  throw std::invalid_argument("spectrum_approx: unknown model kind");
}

} // namespace jacobi
