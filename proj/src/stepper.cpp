#include "dhs/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace dhs {

Integrator parse_integrator(const std::string& name) {
  if (name == "etdrk4") return Integrator::etdrk4;
  if (name == "imex_cn") return Integrator::imex_cn;
  throw std::invalid_argument("unknown integrator '" + name + "' (expected etdrk4 or imex_cn)");
}

std::string to_string(Integrator integrator) {
  return integrator == Integrator::etdrk4 ? "etdrk4" : "imex_cn";
}

std::string to_string(RunStatus status) { return status == RunStatus::ok ? "ok" : "blowup"; }

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("solver: dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("solver: t_end must be positive");
  if (dt > t_end * (1.0 + 1e-12)) throw std::invalid_argument("solver: dt must not exceed t_end");
  if (monitor_stride < 1) throw std::invalid_argument("solver: monitor_stride must be >= 1");
  if (!(s > 0.5 && s <= 1.0)) throw std::invalid_argument("solver: s must lie in (1/2, 1]");
}

SolverConfig SolverConfig::with_t_end(double t) const {
  SolverConfig c = *this;
  c.t_end = t;
  return c;
}

SolverConfig SolverConfig::with_dt(double step) const {
  SolverConfig c = *this;
  c.dt = step;
  return c;
}

// ---------------------------------------------------------------------------
// TimeSeries

std::size_t TimeSeries::locate(double t) const {
  if (frames.size() < 2) return 0;
  auto it = std::upper_bound(frames.begin(), frames.end(), t, [](double v, const Frame& f) { return v < f.t; });
  std::size_t i = it == frames.begin() ? 0 : static_cast<std::size_t>(it - frames.begin()) - 1;
  return std::min(i, frames.size() - 2);
}

void TimeSeries::require_inside(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t));
  if (t < frames.front().t - slack || t > frames.back().t + slack)
    throw CoverageError("time " + std::to_string(t) + " lies outside the stored snapshots");
}

SpectralField TimeSeries::at(double t) const {
  if (frames.empty()) throw CoverageError("time series is empty");
  if (frames.size() == 1) return frames.front().u;
  require_inside(t);
  const std::size_t i = locate(t);
  const Frame& f0 = frames[i];
  const Frame& f1 = frames[i + 1];
  const double h = f1.t - f0.t;
  const double s = (t - f0.t) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  SpectralField out = h00 * f0.u;
  out += (h10 * h) * f0.u_t;
  out += h01 * f1.u;
  out += (h11 * h) * f1.u_t;
  return out;
}

SpectralField TimeSeries::rate_at(double t) const {
  if (frames.empty()) throw CoverageError("time series is empty");
  if (frames.size() == 1) return frames.front().u_t;
  require_inside(t);
  const std::size_t i = locate(t);
  const Frame& f0 = frames[i];
  const Frame& f1 = frames[i + 1];
  const double h = f1.t - f0.t;
  const double s = (t - f0.t) / h;
  const double s2 = s * s;
  const double d00 = (6 * s2 - 6 * s) / h, d10 = 3 * s2 - 4 * s + 1;
  const double d01 = (-6 * s2 + 6 * s) / h, d11 = 3 * s2 - 2 * s;
  SpectralField out = d00 * f0.u;
  out += d10 * f0.u_t;
  out += d01 * f1.u;
  out += d11 * f1.u_t;
  return out;
}

double TimeSeries::max_spacing() const {
  double gap = 0.0;
  for (std::size_t i = 1; i < frames.size(); ++i) gap = std::max(gap, frames[i].t - frames[i - 1].t);
  return gap;
}

bool TimeSeries::covers(double t0, double t1) const {
  if (frames.empty()) return false;
  const double slack = 1e-12 * std::max(1.0, std::abs(t1));
  return frames.front().t <= t0 + slack && frames.back().t >= t1 - slack;
}

namespace {

int step_count(const SolverConfig& cfg) {
  return std::max(1, static_cast<int>(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
}

double step_time(const SolverConfig& cfg, int k, int steps) { return k == steps ? cfg.t_end : k * cfg.dt; }

bool is_frame(int k, int steps, int stride) { return k % stride == 0 || k == steps; }

}  // namespace

TimeSeries TimeSeries::constant(const SpectralField& f, const SolverConfig& cfg) {
  TimeSeries out;
  const int steps = step_count(cfg);
  const SpectralField zero = SpectralField::zero(f.grid());
  for (int k = 0; k <= steps; ++k)
    if (is_frame(k, steps, cfg.monitor_stride)) out.frames.push_back({step_time(cfg, k, steps), f, zero});
  return out;
}

void require_coverage(const TimeSeries& series, const SolverConfig& cfg) {
  if (!series.covers(0.0, cfg.t_end))
    throw CoverageError("background does not cover [0, " + std::to_string(cfg.t_end) + "]");
  const double allowed = cfg.monitor_stride * cfg.dt * (1.0 + 1e-9);
  if (series.max_spacing() > allowed)
    throw CoverageError("background snapshot spacing exceeds monitor_stride * dt");
  if (!(series.frames.front().u.grid() == cfg.grid)) throw CoverageError("background lives on a different grid");
}

FieldTrack constant_track(SpectralField f) {
  return [f = std::move(f)](double) { return f; };
}

FieldTrack series_track(const TimeSeries& series) {
  return [&series](double t) { return series.at(t); };
}

// ---------------------------------------------------------------------------
// Equation pieces

namespace {

/// i xi^3 with the Nyquist mode removed (the odd third derivative drops it).
ComplexVector airy_symbol(const Grid& grid) {
  ComplexVector l(grid.n());
  const RealVector& xi = grid.wavenumbers();
  for (int i = 0; i < grid.n(); ++i) l[i] = Complex(0.0, xi[i] * xi[i] * xi[i]);
  l[grid.n() / 2] = 0.0;
  return l;
}

SpectralField apply_coeffwise(const SpectralField& f, const ComplexVector& m) {
  return SpectralField::from_coeffs(f.grid(), f.coeffs().cwiseProduct(m));
}

}  // namespace

SpectralField airy_propagate(const SpectralField& f, double t) {
  ComplexVector m = (airy_symbol(f.grid()) * t).array().exp();
  return apply_coeffwise(f, m);
}

SpectralField nonlinearity(const SpectralField& u) {
  const SpectralField ux = derivative(u, 1);
  return 0.5 * antiderivative_meanzero(product(ux, ux)).field - product(u, ux);
}

SpectralField time_derivative(const SpectralField& u) { return nonlinearity(u) - derivative(u, 3); }

// ---------------------------------------------------------------------------
// Integrators

namespace {

struct EtdCoefficients {
  ComplexVector e, e_half, q, f1, f2, f3;
};

Complex phi_q(Complex z) { return (std::exp(z / 2.0) - 1.0) / z; }
Complex phi_1(Complex z) { return (-4.0 - z + std::exp(z) * (4.0 - 3.0 * z + z * z)) / (z * z * z); }
Complex phi_2(Complex z) { return (2.0 + z + std::exp(z) * (z - 2.0)) / (z * z * z); }
Complex phi_3(Complex z) { return (-4.0 - 3.0 * z - z * z + std::exp(z) * (4.0 - z)) / (z * z * z); }

// Mean over a unit circle centred at z (Kassam-Trefethen); exact for analytic
// functions and free of the cancellation that plagues the closed forms at small |z|.
template <class F>
Complex contour_mean(F&& fn, Complex z) {
  constexpr int kPoints = 32;
  Complex sum = 0.0;
  for (int j = 0; j < kPoints; ++j) {
    const double theta = 2.0 * std::numbers::pi * (j + 0.5) / kPoints;
    sum += fn(z + std::polar(1.0, theta));
  }
  return sum / double(kPoints);
}

template <class F>
Complex phi_eval(F&& fn, Complex z) {
  return std::abs(z) < 0.5 ? contour_mean(fn, z) : fn(z);
}

EtdCoefficients make_etd(const ComplexVector& symbol, double h) {
  const Eigen::Index n = symbol.size();
  EtdCoefficients c;
  c.e.resize(n);
  c.e_half.resize(n);
  c.q.resize(n);
  c.f1.resize(n);
  c.f2.resize(n);
  c.f3.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex z = symbol[i] * h;
    c.e[i] = std::exp(z);
    c.e_half[i] = std::exp(z / 2.0);
    c.q[i] = h * phi_eval(phi_q, z);
    c.f1[i] = h * phi_eval(phi_1, z);
    c.f2[i] = h * phi_eval(phi_2, z);
    c.f3[i] = h * phi_eval(phi_3, z);
  }
  return c;
}

class Stepper {
public:
  Stepper(const Grid& grid, Integrator kind, const Rhs& rhs) : grid_(grid), kind_(kind), rhs_(rhs), symbol_(airy_symbol(grid)) {}

  SpectralField step(double t, const SpectralField& v, double h) {
    return kind_ == Integrator::etdrk4 ? etdrk4(t, v, h) : imex(t, v, h);
  }

private:
  const EtdCoefficients& coefficients(double h) {
    auto it = cache_.find(h);
    if (it == cache_.end()) it = cache_.emplace(h, make_etd(symbol_, h)).first;
    return it->second;
  }

  SpectralField combine(std::initializer_list<std::pair<const ComplexVector*, const SpectralField*>> terms) {
    ComplexVector acc = ComplexVector::Zero(grid_.n());
    for (const auto& [m, f] : terms) acc += m->cwiseProduct(f->coeffs());
    return SpectralField::from_coeffs(grid_, std::move(acc));
  }

  SpectralField etdrk4(double t, const SpectralField& v, double h) {
    const EtdCoefficients& c = coefficients(h);
    const SpectralField nv = rhs_(t, v);
    const SpectralField a = combine({{&c.e_half, &v}, {&c.q, &nv}});
    const SpectralField na = rhs_(t + h / 2, a);
    const SpectralField b = combine({{&c.e_half, &v}, {&c.q, &na}});
    const SpectralField nb = rhs_(t + h / 2, b);
    const SpectralField two_nb_minus_nv = 2.0 * nb - nv;
    const SpectralField cc = combine({{&c.e_half, &a}, {&c.q, &two_nb_minus_nv}});
    const SpectralField nc = rhs_(t + h, cc);
    const SpectralField na_plus_nb = 2.0 * (na + nb);
    return combine({{&c.e, &v}, {&c.f1, &nv}, {&c.f2, &na_plus_nb}, {&c.f3, &nc}});
  }

  // Crank-Nicolson on the dispersive term, Heun predictor-corrector on the rest.
  SpectralField imex(double t, const SpectralField& v, double h) {
    const ComplexVector plus = (ComplexVector::Ones(grid_.n()) + 0.5 * h * symbol_);
    const ComplexVector inv_minus = (ComplexVector::Ones(grid_.n()) - 0.5 * h * symbol_).cwiseInverse();
    const SpectralField nv = rhs_(t, v);
    ComplexVector pred = inv_minus.cwiseProduct(plus.cwiseProduct(v.coeffs()) + h * nv.coeffs());
    const SpectralField p = SpectralField::from_coeffs(grid_, std::move(pred));
    const SpectralField np = rhs_(t + h, p);
    ComplexVector corr = inv_minus.cwiseProduct(plus.cwiseProduct(v.coeffs()) + 0.5 * h * (nv.coeffs() + np.coeffs()));
    return SpectralField::from_coeffs(grid_, std::move(corr));
  }

  Grid grid_;
  Integrator kind_;
  const Rhs& rhs_;
  ComplexVector symbol_;
  std::map<double, EtdCoefficients> cache_;
};

bool healthy(const SpectralField& v) {
  return v.samples().allFinite() && v.samples().cwiseAbs().maxCoeff() <= kBlowupThreshold;
}

}  // namespace

TimeSeries drive(const SpectralField& v0, const Rhs& rhs, const SolverConfig& cfg, const DriveOptions& options) {
  cfg.validate();
  if (!(v0.grid() == cfg.grid)) throw std::invalid_argument("initial field does not live on the configured grid");
  const int steps = step_count(cfg);
  const double e1_0 = e1(v0);
  TimeSeries out;

  auto record = [&](double t, const SpectralField& v) {
    out.frames.push_back({t, v, rhs(t, v) - derivative(v, 3)});
    if (options.energy_symbol) out.reports.push_back(energy_report(v, t, e1_0, *options.energy_symbol));
  };

  if (!healthy(v0)) {
    out.status = RunStatus::blowup;
    out.message = "initial data is non-finite or exceeds the blow-up threshold";
    return out;
  }

  Stepper stepper(cfg.grid, cfg.integrator, rhs);
  SpectralField v = v0;
  record(0.0, v);
  for (int k = 1; k <= steps; ++k) {
    const double t0 = step_time(cfg, k - 1, steps);
    const double t1 = step_time(cfg, k, steps);
    v = stepper.step(t0, v, t1 - t0);
    if (!healthy(v)) {
      out.status = RunStatus::blowup;
      out.message = "blow-up sentinel tripped at t = " + std::to_string(t1);
      return out;
    }
    if (is_frame(k, steps, cfg.monitor_stride)) record(t1, v);
  }
  return out;
}

TimeSeries evolve(const SpectralField& u0, const SolverConfig& cfg, const EvolveOptions& options) {
  Rhs rhs = options.nonlinear ? Rhs([](double, const SpectralField& u) { return nonlinearity(u); })
                              : Rhs([](double, const SpectralField& u) { return SpectralField::zero(u.grid()); });
  DriveOptions drive_options;
  if (options.record_energy) drive_options.energy_symbol = LPSymbol(cfg.s);
  return drive(u0, rhs, cfg, drive_options);
}

TimeSeries evolve_linear(const SpectralField& v0, const LinearCoeffs& coeffs, const SolverConfig& cfg) {
  Rhs rhs = [&coeffs](double t, const SpectralField& v) {
    SpectralField out = SpectralField::zero(v.grid());
    if (coeffs.a) out -= product(coeffs.a(t), derivative(v, 1));
    if (coeffs.b) out -= product(derivative(coeffs.b(t), 1), v);
    if (coeffs.F) out += coeffs.F(t);
    return out;
  };
  return drive(v0, rhs, cfg, {});
}

TimeSeries evolve_linearized(const SpectralField& w0, const TimeSeries& background, const SolverConfig& cfg) {
  require_coverage(background, cfg);
  Rhs rhs = [&background](double t, const SpectralField& w) {
    const SpectralField u = background.at(t);
    const SpectralField source = antiderivative_meanzero(product(derivative(u, 1), derivative(w, 1))).field;
    return source - derivative(product(u, w), 1);
  };
  return drive(w0, rhs, cfg, {});
}

}  // namespace dhs
