#include "dhs/schemes.hpp"

#include <algorithm>
#include <cmath>

#include "dhs/lp.hpp"

namespace dhs {

namespace {

double mixed_norm(const SpectralField& f, double sigma) { return std::max(linf(f), hdot(f, sigma)); }

void require_matching_frames(const TimeSeries& a, const TimeSeries& b) {
  if (a.frames.size() != b.frames.size()) throw std::invalid_argument("time series have different frame counts");
  for (std::size_t i = 0; i < a.frames.size(); ++i)
    if (std::abs(a.frames[i].t - b.frames[i].t) > 1e-12 * std::max(1.0, std::abs(a.frames[i].t)))
      throw std::invalid_argument("time series frames are not aligned");
}

}  // namespace

double sup_distance(const TimeSeries& a, const TimeSeries& b, double sigma) {
  require_matching_frames(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) d = std::max(d, mixed_norm(a.frames[i].u - b.frames[i].u, sigma));
  return d;
}

TimeSeries picard_map(const TimeSeries& u_prev, const SpectralField& u0, const SolverConfig& cfg) {
  require_coverage(u_prev, cfg);
  LinearCoeffs coeffs;
  coeffs.a = series_track(u_prev);
  coeffs.F = [&u_prev](double t) {
    const SpectralField ux = derivative(u_prev.at(t), 1);
    return 0.5 * antiderivative_meanzero(product(ux, ux)).field;
  };
  return evolve_linear(u0, coeffs, cfg);
}

PicardResult picard_solve(const SpectralField& u0, const SolverConfig& cfg, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("picard_solve: max_iter must be >= 1");
  cfg.validate();

  PicardResult result{TimeSeries::constant(u0, cfg), {}};
  IterationReport& report = result.report;
  report.horizon = cfg.t_end;
  int climbing = 0;
  for (int n = 0; n < max_iter; ++n) {
    TimeSeries next = picard_map(result.solution, u0, cfg);
    if (!next.ok()) {
      report.non_contraction = true;
      break;
    }
    const double d = sup_distance(next, result.solution, 1.0);
    if (!report.distances.empty() && report.distances.back() > 0.0) {
      report.ratios.push_back(d / report.distances.back());
      climbing = report.ratios.back() > 1.0 ? climbing + 1 : 0;
    }
    report.distances.push_back(d);
    result.solution = std::move(next);
    if (d < tol) {
      report.converged = true;
      break;
    }
    if (climbing >= 3) {
      report.non_contraction = true;
      break;
    }
  }
  return result;
}

PicardResult picard_horizon_search(const SpectralField& u0, const SolverConfig& cfg, double tol, int max_iter,
                                   int max_halvings) {
  SolverConfig trial = cfg;
  PicardResult result = picard_solve(u0, trial, tol, max_iter);
  int halvings = 0;
  while (!result.report.converged && halvings < max_halvings) {
    ++halvings;
    trial.t_end /= 2.0;
    trial.dt = std::min(trial.dt, trial.t_end);
    result = picard_solve(u0, trial, tol, max_iter);
  }
  result.report.halvings = halvings;
  return result;
}

double tail_ratio(const IterationReport& report, int count) {
  const auto& r = report.ratios;
  const std::size_t from = r.size() > std::size_t(count) ? r.size() - count : 0;
  double worst = 0.0;
  for (std::size_t i = from; i < r.size(); ++i) worst = std::max(worst, r[i]);
  return worst;
}

double lipschitz_ratio(const TimeSeries& u, const TimeSeries& v, double s, double horizon) {
  require_matching_frames(u, v);
  const double initial = mixed_norm(u.frames.front().u - v.frames.front().u, s);
  if (initial == 0.0) return 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < u.frames.size() && u.frames[i].t <= horizon * (1.0 + 1e-12); ++i)
    sup = std::max(sup, mixed_norm(u.frames[i].u - v.frames[i].u, s));
  return sup / initial;
}

double difference_experiment(const SpectralField& u0, const SpectralField& v0, const SolverConfig& cfg) {
  require_same_grid(u0, v0);
  if (mixed_norm(u0 - v0, cfg.s) == 0.0) return 0.0;
  const EvolveOptions quiet{true, false};
  const TimeSeries u = evolve(u0, cfg, quiet);
  const TimeSeries v = evolve(v0, cfg, quiet);
  if (!u.ok() || !v.ok()) throw std::runtime_error("difference_experiment: " + (u.ok() ? v.message : u.message));
  return lipschitz_ratio(u, v, cfg.s, cfg.t_end);
}

// ---------------------------------------------------------------------------
// Low-frequency characteristics

namespace {

// Nonzero Fourier modes of a band-limited field; evaluated off-grid as a
// trigonometric polynomial.
struct LowModes {
  std::vector<double> xi;
  std::vector<Complex> c;  // already scaled by 1/n, doubled for paired modes
  std::vector<bool> cosine_only;

  LowModes(const SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    for (int i = 0; i <= n / 2; ++i) {
      const Complex ci = f.coeffs()[i];
      if (ci == Complex(0.0)) continue;
      const bool self_paired = i == 0 || i == n / 2;
      xi.push_back(g.wavenumbers()[i]);
      c.push_back(ci * ((self_paired ? 1.0 : 2.0) / n));
      cosine_only.push_back(self_paired);
    }
  }

  // value and x-derivative at position x
  std::pair<double, double> eval(double x) const {
    double v = 0.0, dv = 0.0;
    for (std::size_t m = 0; m < xi.size(); ++m) {
      if (cosine_only[m]) {
        v += c[m].real() * std::cos(xi[m] * x);
        dv -= c[m].real() * xi[m] * std::sin(xi[m] * x);
        continue;
      }
      const Complex e = std::polar(1.0, xi[m] * x);
      const Complex term = c[m] * e;
      v += term.real();
      dv += (Complex(0.0, xi[m]) * term).real();
    }
    return {v, dv};
  }
};

LowModes low_modes_at(const TimeSeries& background, double t) {
  return LowModes(project(background.at(t), Band::leq(0)));
}

}  // namespace

FlowReport low_freq_flow(const TimeSeries& background, const SolverConfig& cfg) {
  cfg.validate();
  require_coverage(background, cfg);
  const Grid& grid = cfg.grid;
  const int n = grid.n();
  RealVector q = grid.positions();
  RealVector p = RealVector::Ones(n);
  FlowReport report;

  auto sample = [&](double t, const LowModes& modes) {
    double sup = 0.0;
    for (int i = 0; i < n; ++i) sup = std::max(sup, std::abs(modes.eval(q[i]).first));
    report.samples.push_back({t, sup, p.minCoeff(), q});
    for (int i = 0; i + 1 < n; ++i)
      if (!(q[i + 1] > q[i])) report.monotone = false;
    if (!(q[0] + grid.length() > q[n - 1]) || !(p.minCoeff() > 0.0)) report.monotone = false;
  };

  const int steps = std::max(1, static_cast<int>(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  LowModes start = low_modes_at(background, 0.0);
  sample(0.0, start);
  for (int k = 1; k <= steps; ++k) {
    const double t0 = (k - 1) * cfg.dt;
    const double t1 = k == steps ? cfg.t_end : k * cfg.dt;
    const double h = t1 - t0;
    const LowModes mid = low_modes_at(background, t0 + h / 2);
    LowModes end = low_modes_at(background, t1);
    for (int i = 0; i < n; ++i) {
      const auto [u1, d1] = start.eval(q[i]);
      const double kq1 = u1, kp1 = d1 * p[i];
      const auto [u2, d2] = mid.eval(q[i] + h / 2 * kq1);
      const double kq2 = u2, kp2 = d2 * (p[i] + h / 2 * kp1);
      const auto [u3, d3] = mid.eval(q[i] + h / 2 * kq2);
      const double kq3 = u3, kp3 = d3 * (p[i] + h / 2 * kp2);
      const auto [u4, d4] = end.eval(q[i] + h * kq3);
      const double kq4 = u4, kp4 = d4 * (p[i] + h * kp3);
      q[i] += h / 6 * (kq1 + 2 * kq2 + 2 * kq3 + kq4);
      p[i] += h / 6 * (kp1 + 2 * kp2 + 2 * kp3 + kp4);
    }
    if (k % cfg.monitor_stride == 0 || k == steps) sample(t1, end);
    start = std::move(end);
  }
  return report;
}

double linfty_bound_audit(const TimeSeries& run) {
  if (run.frames.empty()) return 0.0;
  const SpectralField& u0 = run.frames.front().u;
  const double x0 = x0_norm(u0);
  const double energy = e1(u0);
  double sup = 0.0;
  for (const Frame& f : run.frames) {
    const double denominator = x0 + f.t * (energy + std::sqrt(energy));
    if (denominator == 0.0) continue;
    sup = std::max(sup, linf(f.u) / denominator);
  }
  return sup;
}

}  // namespace dhs
