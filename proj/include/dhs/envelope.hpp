#pragma once

// Sharp frequency envelopes, smooth low-pass regularization of data and the
// regularized-data convergence study.

#include <string>
#include <vector>

#include "dhs/stepper.hpp"

namespace dhs {

enum class EnvelopeNorm {
  hdot1_hdot1s,  // max(||P_k u||_Hdot1, ||P_k u||_Hdot^{1+s})
  h1_derivative  // ||P_k u_x||_{H^1}
};

EnvelopeNorm parse_envelope_norm(const std::string& name);
std::string to_string(EnvelopeNorm kind);

struct Envelope {
  double delta = 0.5;
  EnvelopeNorm norm_kind = EnvelopeNorm::hdot1_hdot1s;
  std::vector<double> base;  // a_k, k = 0 .. top band
  std::vector<double> c;     // c_k = max_j 2^{-delta |k - j|} a_j

  /// (sum_{k >= h} c_k^2)^{1/2}.
  double c_geq(int h) const;
};

/// a_k of u0 per band in the chosen norm.
std::vector<double> band_norms(const SpectralField& u0, EnvelopeNorm kind, double s);

Envelope envelope_from_base(std::vector<double> base, double delta);

Envelope sharp_envelope(const SpectralField& u0, double delta, EnvelopeNorm kind, double s);

/// P_{<h} u0: the symbol phi(xi / 2^{h-1}).
SpectralField regularize(const SpectralField& u0, int h);

struct ConvergenceRow {
  int h;
  double distance;  // sup_t max(Hdot1, Hdot^{1+s}) of u^h - u_ref
  double c_geq_h;
  double ratio;
};

struct ConvergenceStudy {
  Envelope envelope;
  std::vector<ConvergenceRow> rows;
  double top_band_fraction = 0.0;  // largest share of L2 energy in the top band along the reference run
  bool under_resolved = false;
  RunStatus status = RunStatus::ok;
  std::string message;
};

inline constexpr double kUnderResolvedFraction = 1e-10;

/// Evolves u0^h for every h plus the reference u0^{reference_h}; runs are
/// spread over `workers` threads.
ConvergenceStudy convergence_study(const SpectralField& u0, const std::vector<int>& h_list, const SolverConfig& cfg,
                                   int reference_h, double delta, int workers = 1);

}  // namespace dhs
