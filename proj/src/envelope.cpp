#include "dhs/envelope.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>

#include "dhs/lp.hpp"

namespace dhs {

EnvelopeNorm parse_envelope_norm(const std::string& name) {
  if (name == "hdot1_hdot1s") return EnvelopeNorm::hdot1_hdot1s;
  if (name == "h1_derivative") return EnvelopeNorm::h1_derivative;
  throw std::invalid_argument("unknown envelope norm '" + name + "' (expected hdot1_hdot1s or h1_derivative)");
}

std::string to_string(EnvelopeNorm kind) {
  return kind == EnvelopeNorm::hdot1_hdot1s ? "hdot1_hdot1s" : "h1_derivative";
}

double Envelope::c_geq(int h) const {
  double sum = 0.0;
  for (std::size_t k = std::max(h, 0); k < c.size(); ++k) sum += c[k] * c[k];
  return std::sqrt(sum);
}

std::vector<double> band_norms(const SpectralField& u0, EnvelopeNorm kind, double s) {
  const int top = top_band(u0.grid());
  std::vector<double> a(top + 1);
  for (int k = 0; k <= top; ++k) {
    const SpectralField band = project(u0, Band::at(k));
    if (kind == EnvelopeNorm::hdot1_hdot1s) {
      a[k] = std::max(hdot(band, 1.0), hdot(band, 1.0 + s));
    } else {
      const double h1 = hdot(band, 1.0), h2 = hdot(band, 2.0);
      a[k] = std::sqrt(h1 * h1 + h2 * h2);
    }
  }
  return a;
}

Envelope envelope_from_base(std::vector<double> base, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("envelope: delta must lie in (0, 1)");
  Envelope env;
  env.delta = delta;
  env.c.assign(base.size(), 0.0);
  for (std::size_t k = 0; k < base.size(); ++k)
    for (std::size_t j = 0; j < base.size(); ++j) {
      const double gap = std::abs(double(k) - double(j));
      env.c[k] = std::max(env.c[k], std::exp2(-delta * gap) * base[j]);
    }
  env.base = std::move(base);
  return env;
}

Envelope sharp_envelope(const SpectralField& u0, double delta, EnvelopeNorm kind, double s) {
  Envelope env = envelope_from_base(band_norms(u0, kind, s), delta);
  env.norm_kind = kind;
  return env;
}

SpectralField regularize(const SpectralField& u0, int h) {
  if (h < 1) throw std::invalid_argument("regularize: h must be >= 1");
  return project(u0, Band::leq(h - 1));
}

namespace {

double envelope_distance(const TimeSeries& a, const TimeSeries& b, double s) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    const SpectralField diff = a.frames[i].u - b.frames[i].u;
    d = std::max({d, hdot(diff, 1.0), hdot(diff, 1.0 + s)});
  }
  return d;
}

}  // namespace

ConvergenceStudy convergence_study(const SpectralField& u0, const std::vector<int>& h_list, const SolverConfig& cfg,
                                   int reference_h, double delta, int workers) {
  cfg.validate();
  if (h_list.empty()) throw std::invalid_argument("convergence_study: h_list is empty");
  if (reference_h <= *std::max_element(h_list.begin(), h_list.end()))
    throw std::invalid_argument("convergence_study: reference_h must exceed every h in h_list");

  ConvergenceStudy study;
  study.envelope = sharp_envelope(u0, delta, EnvelopeNorm::hdot1_hdot1s, cfg.s);

  // slot 0 is the reference
  std::vector<int> levels{reference_h};
  levels.insert(levels.end(), h_list.begin(), h_list.end());
  std::vector<std::optional<TimeSeries>> runs(levels.size());
  std::vector<std::exception_ptr> errors(levels.size());
  std::atomic<std::size_t> next{0};
  const EvolveOptions quiet{true, false};

  auto work = [&] {
    for (std::size_t i = next++; i < levels.size(); i = next++) {
      try {
        runs[i] = evolve(regularize(u0, levels[i]), cfg, quiet);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < std::max(1, workers); ++w) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const auto& run : runs)
    if (!run->ok()) {
      study.status = run->status;
      study.message = run->message;
      return study;
    }

  const TimeSeries& ref = *runs[0];
  const int top = top_band(cfg.grid);
  for (const Frame& f : ref.frames) {
    const double total = l2(f.u);
    if (total == 0.0) continue;
    const double tail = l2(project(f.u, Band::at(top)));
    study.top_band_fraction = std::max(study.top_band_fraction, tail * tail / (total * total));
  }
  study.under_resolved = study.top_band_fraction > kUnderResolvedFraction;

  for (std::size_t i = 1; i < levels.size(); ++i) {
    const double distance = envelope_distance(*runs[i], ref, cfg.s);
    const double c = study.envelope.c_geq(levels[i]);
    study.rows.push_back({levels[i], distance, c, c > 0.0 ? distance / c : 0.0});
  }
  return study;
}

}  // namespace dhs
