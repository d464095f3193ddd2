#include "jacobi/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jacobi {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix64(std::uint64_t seed, std::uint64_t n) {
  return mix64(mix64(seed) ^ (n * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

double uniform01(std::uint64_t seed, std::uint64_t n) {
  return static_cast<double>(mix64(seed, n) >> 11) * 0x1.0p-53;
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Free: return "free";
    case ModelKind::AlmostMathieu: return "almost_mathieu";
    case ModelKind::Periodic: return "periodic";
    case ModelKind::Anderson: return "anderson";
    case ModelKind::Sturmian: return "sturmian";
  }
  return "?";
}

ErgodicModel ErgodicModel::free() {
  ErgodicModel m;
  m.kind = ModelKind::Free;
  return m;
}

ErgodicModel ErgodicModel::almost_mathieu(double lambda, double alpha) {
  ErgodicModel m;
  m.kind = ModelKind::AlmostMathieu;
  m.lambda = lambda;
  m.alpha = alpha;
  m.validate();
  return m;
}

ErgodicModel ErgodicModel::periodic(std::vector<double> a,
                                    std::vector<double> b) {
  ErgodicModel m;
  m.kind = ModelKind::Periodic;
  m.period_a = std::move(a);
  m.period_b = std::move(b);
  m.validate();
  return m;
}

ErgodicModel ErgodicModel::anderson(double W, std::uint64_t seed) {
  ErgodicModel m;
  m.kind = ModelKind::Anderson;
  m.disorder = W;
  m.seed = seed;
  m.validate();
  return m;
}

ErgodicModel ErgodicModel::sturmian(double V, double alpha) {
  ErgodicModel m;
  m.kind = ModelKind::Sturmian;
  m.coupling = V;
  m.alpha = alpha;
  m.validate();
  return m;
}

void ErgodicModel::validate() const {
  switch (kind) {
    case ModelKind::Free:
      break;
    case ModelKind::AlmostMathieu:
      if (lambda == 0.0)
        throw std::invalid_argument("almost_mathieu: lambda must be nonzero");
      if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("almost_mathieu: alpha must lie in (0,1)");
      break;
    case ModelKind::Periodic:
      if (period_a.empty() || period_a.size() != period_b.size())
        throw std::invalid_argument("periodic: a and b must have equal positive length");
      for (double v : period_a)
        if (!(v > 0.0))
          throw std::invalid_argument("periodic: all a entries must be positive");
      break;
    case ModelKind::Anderson:
      if (!(disorder > 0.0))
        throw std::invalid_argument("anderson: W must be positive");
      break;
    case ModelKind::Sturmian:
      if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("sturmian: alpha must lie in (0,1)");
      break;
  }
}

std::pair<double, double> ErgodicModel::spectral_enclosure() const {
  double amax = 1.0, bmin = 0.0, bmax = 0.0;
  switch (kind) {
    case ModelKind::Free:
      break;
    case ModelKind::AlmostMathieu:
      bmax = 2.0 * std::abs(lambda);
      bmin = -bmax;
      break;
    case ModelKind::Periodic: {
      amax = 0.0;
      bmin = period_b.front();
      bmax = period_b.front();
      for (double v : period_a) amax = std::max(amax, v);
      for (double v : period_b) {
        bmin = std::min(bmin, v);
        bmax = std::max(bmax, v);
      }
      break;
    }
    case ModelKind::Anderson:
      bmin = -disorder / 2.0;
      bmax = disorder / 2.0;
      break;
    case ModelKind::Sturmian:
      bmin = std::min(0.0, coupling);
      bmax = std::max(0.0, coupling);
      break;
  }
  return {bmin - 2.0 * amax, bmax + 2.0 * amax};
}

std::string ErgodicModel::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case ModelKind::Free: break;
    case ModelKind::AlmostMathieu:
      os << "(lambda=" << lambda << ",alpha=" << alpha << ")";
      break;
    case ModelKind::Periodic:
      os << "(p=" << period_a.size() << ")";
      break;
    case ModelKind::Anderson:
      os << "(W=" << disorder << ",seed=" << seed << ")";
      break;
    case ModelKind::Sturmian:
      os << "(V=" << coupling << ",alpha=" << alpha << ")";
      break;
  }
  return os.str();
}

ParameterSequence sample_parameters(const ErgodicModel& model, double omega,
                                    std::size_t n) {
  model.validate();
  if (n < 1) throw std::invalid_argument("sample_parameters: N must be >= 1");

  ParameterSequence seq;
  seq.a.assign(n, 1.0);
  seq.b.assign(n, 0.0);
  {
    std::ostringstream os;
    os << model.describe() << ";omega=" << omega << ";seed=" << model.seed;
    seq.origin = os.str();
  }

  switch (model.kind) {
    case ModelKind::Free:
      break;
    case ModelKind::AlmostMathieu: {
      const double two_pi = 2.0 * M_PI;
      for (std::size_t k = 0; k < n; ++k) {
        double theta = frac(omega + static_cast<double>(k + 1) * model.alpha);
        seq.b[k] = 2.0 * model.lambda * std::cos(two_pi * theta);
      }
      break;
    }
    case ModelKind::Periodic: {
      const std::size_t p = model.period_a.size();
      const std::size_t off = static_cast<std::size_t>(omega + 0.5) % p;
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t idx = (off + k + 1) % p;
        seq.a[k] = model.period_a[idx];
        seq.b[k] = model.period_b[idx];
      }
      break;
    }
    case ModelKind::Anderson: {
      for (std::size_t k = 0; k < n; ++k)
        seq.b[k] = model.disorder * (uniform01(model.seed, k + 1) - 0.5);
      break;
    }
    case ModelKind::Sturmian: {
      for (std::size_t k = 0; k < n; ++k) {
        double theta = frac(omega + static_cast<double>(k + 1) * model.alpha);
        seq.b[k] = (theta >= 1.0 - model.alpha) ? model.coupling : 0.0;
      }
      break;
    }
  }
  return seq;
}

ParameterSequence ensemble_realization(const ErgodicModel& model, std::size_t j,
                                       std::size_t n_samples, std::size_t n,
                                       std::uint64_t seed) {
  switch (model.kind) {
    case ModelKind::Free:
      return sample_parameters(model, 0.0, n);
    case ModelKind::AlmostMathieu:
    case ModelKind::Sturmian: {
      double omega = frac((static_cast<double>(j) + 0.5) /
                          static_cast<double>(n_samples));
      return sample_parameters(model, omega, n);
    }
    case ModelKind::Periodic: {
      double omega = static_cast<double>(j % model.period_a.size());
      return sample_parameters(model, omega, n);
    }
    case ModelKind::Anderson: {
      ErgodicModel m = model;
      m.seed = mix64(mix64(model.seed, seed), j);
      return sample_parameters(m, 0.0, n);
    }
  }
  return sample_parameters(model, 0.0, n);
}

double orbit(const ErgodicModel& model, double omega, std::uint64_t n) {
  switch (model.kind) {
    case ModelKind::Free:
    case ModelKind::Anderson:
      return omega;
    case ModelKind::AlmostMathieu:
    case ModelKind::Sturmian:
      return frac(omega + static_cast<double>(n) * model.alpha);
    case ModelKind::Periodic: {
      auto p = static_cast<std::uint64_t>(model.period_a.size());
      auto pos = static_cast<std::uint64_t>(omega + 0.5);
      return static_cast<double>((pos + n) % p);
    }
  }
  return omega;
}

std::vector<std::pair<long long, long long>> convergents(double alpha,
                                                         long long max_q) {
  std::vector<std::pair<long long, long long>> out;
  long long p_prev = 0, q_prev = 1; // p_{-2}/q_{-2}
  long long p_cur = 1, q_cur = 0;   // p_{-1}/q_{-1}
  double y = alpha;
  for (int k = 0; k < 64; ++k) {
    double fl = std::floor(y);
    if (fl > 9.0e17) break;
    long long term = static_cast<long long>(fl);
    long long p_next = term * p_cur + p_prev;
    long long q_next = term * q_cur + q_prev;
    if (q_next < 0 || p_next < 0) break; // overflow
    p_prev = p_cur; q_prev = q_cur;
    p_cur = p_next; q_cur = q_next;
    // only proper fractions are useful as approximant frequencies
    if (q_cur >= 1 && p_cur >= 1 && p_cur < q_cur) out.emplace_back(p_cur, q_cur);
    if (q_cur > max_q) break;
    double r = y - fl;
    if (r < 1e-15) break; // alpha is (numerically) rational
    y = 1.0 / r;
  }
  return out;
}

} // namespace jacobi
