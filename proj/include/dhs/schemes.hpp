#pragma once

// Constructive procedures run as experiments: the Picard iteration for the
// transport-dispersive linearization, difference-of-solutions estimates, the
// low-frequency characteristic flow and the L^inf growth audit.

#include <vector>

#include "dhs/stepper.hpp"

namespace dhs {

struct IterationReport {
  double horizon = 0.0;
  std::vector<double> distances;  // sup_t max(||.||_inf, ||.||_Hdot1) of successive iterates
  std::vector<double> ratios;
  bool converged = false;
  bool non_contraction = false;
  int halvings = 0;  // horizon halvings spent before this report
};

/// sup over shared frame times of max(||a - b||_inf, ||a - b||_Hdot^sigma).
double sup_distance(const TimeSeries& a, const TimeSeries& b, double sigma);

/// One step of v_t + v_xxx + u_prev v_x = 1/2 d^{-1}((u_prev)_x^2), v(0) = u0.
TimeSeries picard_map(const TimeSeries& u_prev, const SpectralField& u0, const SolverConfig& cfg);

struct PicardResult {
  TimeSeries solution;
  IterationReport report;
};

inline constexpr double kPicardTolerance = 1e-9;

/// Iterates from u^0(t) = u0.  Flags non-contraction after three consecutive
/// ratios above one.
PicardResult picard_solve(const SpectralField& u0, const SolverConfig& cfg, double tol = kPicardTolerance,
                          int max_iter = 50);

/// Halves cfg.t_end until picard_solve converges or max_halvings is spent.
PicardResult picard_horizon_search(const SpectralField& u0, const SolverConfig& cfg, double tol, int max_iter,
                                   int max_halvings);

/// Largest of the last `count` ratios (0 when there are none).
double tail_ratio(const IterationReport& report, int count = 3);

/// sup_t ||u(t) - v(t)||_{L^inf cap Hdot^s} / ||u0 - v0||_{L^inf cap Hdot^s} with s = cfg.s;
/// 0 when the data coincide.
double difference_experiment(const SpectralField& u0, const SpectralField& v0, const SolverConfig& cfg);

/// Same ratio from two precomputed runs, restricted to t <= horizon.
double lipschitz_ratio(const TimeSeries& u, const TimeSeries& v, double s, double horizon);

struct FlowSample {
  double t;
  double sup_u_low;  // sup_x |u_{<=0}(t, q(t, x))|
  double min_qx;
  RealVector q;
};

struct FlowReport {
  std::vector<FlowSample> samples;
  bool monotone = true;
};

/// Characteristics q_t = u_{<=0}(t, q), q(0) = x from every grid point, with
/// q_x carried along by the variational equation.  RK4 at step cfg.dt.
FlowReport low_freq_flow(const TimeSeries& background, const SolverConfig& cfg);

/// sup_t ||u(t)||_inf / (||u0||_{X^0} + t (E1 + E1^{1/2})); 0 for the zero run.
double linfty_bound_audit(const TimeSeries& run);

}  // namespace dhs
