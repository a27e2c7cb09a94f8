#pragma once

// Time integration for u_t + u_xxx = N(u) and its linear relatives.
//
// The dispersive part is integrated exactly through the Fourier multiplier
// exp(i xi^3 t); all other terms are handled by ETDRK4 (default) or by a
// second-order Crank-Nicolson/Heun IMEX scheme.  Every run returns a
// TimeSeries of snapshots together with their time derivatives, which is
// what the cubic Hermite interpolation used by the variable-coefficient
// integrators needs.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dhs/energy.hpp"
#include "dhs/grid.hpp"

namespace dhs {

enum class Integrator { etdrk4, imex_cn };

Integrator parse_integrator(const std::string& name);
std::string to_string(Integrator integrator);

struct SolverConfig {
  Grid grid;
  double dt;
  double t_end;
  double s;
  Integrator integrator = Integrator::etdrk4;
  int monitor_stride = 1;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  SolverConfig with_t_end(double t) const;
  SolverConfig with_dt(double step) const;
};

/// ||u||_inf above this (or any non-finite value) halts a run.
inline constexpr double kBlowupThreshold = 1e6;

enum class RunStatus { ok, blowup };

std::string to_string(RunStatus status);

struct Frame {
  double t;
  SpectralField u;
  SpectralField u_t;
};

class TimeSeries {
public:
  std::vector<Frame> frames;
  std::vector<EnergyReport> reports;
  RunStatus status = RunStatus::ok;
  std::string message;

  bool ok() const { return status == RunStatus::ok; }
  double t_begin() const { return frames.front().t; }
  double t_final() const { return frames.back().t; }
  const SpectralField& final_field() const { return frames.back().u; }

  /// Cubic Hermite interpolation from the stored snapshots and rates; throws
  /// CoverageError outside [t_begin, t_final].
  SpectralField at(double t) const;
  SpectralField rate_at(double t) const;

  /// Largest gap between consecutive snapshots.
  double max_spacing() const;
  bool covers(double t0, double t1) const;

  /// Snapshot of f at every frame time of cfg with zero time derivative.
  static TimeSeries constant(const SpectralField& f, const SolverConfig& cfg);

private:
  std::size_t locate(double t) const;
  void require_inside(double t) const;
};

class CoverageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Throws CoverageError unless the series covers [0, cfg.t_end] with snapshot
/// spacing no larger than monitor_stride * dt.
void require_coverage(const TimeSeries& series, const SolverConfig& cfg);

/// Time-indexed field; an empty track is identically zero.
using FieldTrack = std::function<SpectralField(double)>;

FieldTrack constant_track(SpectralField f);
FieldTrack series_track(const TimeSeries& series);

/// v_t + a v_x + b_x v + v_xxx = F.
struct LinearCoeffs {
  FieldTrack a;
  FieldTrack b;
  FieldTrack F;
};

/// exp(i xi^3 t) applied to f: the exact solution of v_t + v_xxx = 0.
SpectralField airy_propagate(const SpectralField& f, double t);

/// N(u) = -dealias(u u_x) + 1/2 (mean-zero primitive of u_x^2).
SpectralField nonlinearity(const SpectralField& u);

/// u_t = -u_xxx + N(u).
SpectralField time_derivative(const SpectralField& u);

struct EvolveOptions {
  bool nonlinear = true;
  bool record_energy = true;
};

TimeSeries evolve(const SpectralField& u0, const SolverConfig& cfg, const EvolveOptions& options = {});

TimeSeries evolve_linear(const SpectralField& v0, const LinearCoeffs& coeffs, const SolverConfig& cfg);

/// w_t + (u w)_x + w_xxx = d^{-1}(u_x w_x) along the background u.
TimeSeries evolve_linearized(const SpectralField& w0, const TimeSeries& background, const SolverConfig& cfg);

/// Lower-level driver: v_t = -v_xxx + rhs(t, v).
using Rhs = std::function<SpectralField(double, const SpectralField&)>;

struct DriveOptions {
  std::optional<LPSymbol> energy_symbol;  // record EnergyReports when set
};

TimeSeries drive(const SpectralField& v0, const Rhs& rhs, const SolverConfig& cfg, const DriveOptions& options);

}  // namespace dhs
