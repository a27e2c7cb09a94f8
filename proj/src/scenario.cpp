#include "dhs/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dhs/config.hpp"
#include "dhs/envelope.hpp"
#include "dhs/io.hpp"
#include "dhs/presets.hpp"
#include "dhs/schemes.hpp"

namespace dhs {

namespace {

using nlohmann::json;
using config::require;
using config::require_integer;
using config::require_real;
using config::require_string;
using io::format_real;

constexpr std::string_view kKindNames[] = {"simulate",   "conserve", "picard", "linearized",
                                           "difference", "envelope", "flow",   "audit"};

class Outputs {
public:
  explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void text(const std::string& rel, const std::string& content) {
    const auto path = dir_ / rel;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    out.close();
    record(rel);
  }

  void field(const std::string& rel_base, const SpectralField& f) {
    const auto base = dir_ / rel_base;
    std::filesystem::create_directories(base.parent_path());
    io::write_field(base, f);
    record(rel_base + ".bin");
    record(rel_base + ".json");
  }

  const json& files() const { return files_; }

private:
  void record(const std::string& rel) {
    files_.push_back({{"path", rel}, {"hash", io::git_blob_hash_file(dir_ / rel)}});
  }

  std::filesystem::path dir_;
  json files_ = json::array();
};

struct Outcome {
  int code = kExitOk;
  std::string status = "ok";
  std::string message;
  std::string u0_hash;
  json results = json::object();

  void sentinel(std::string why, std::string detail) {
    code = kExitSentinel;
    status = std::move(why);
    message = std::move(detail);
  }

  void fail(std::string why, std::string detail) {
    code = kExitUsage;
    status = std::move(why);
    message = std::move(detail);
  }
};

SolverConfig solver_from(const json& c) {
  const Grid grid(static_cast<int>(require_integer(c, "grid.n")), require_real(c, "grid.length"));
  SolverConfig cfg{grid,
                   require_real(c, "solver.dt"),
                   require_real(c, "solver.t_end"),
                   require_real(c, "solver.s"),
                   parse_integrator(require_string(c, "solver.integrator")),
                   static_cast<int>(require_integer(c, "solver.monitor_stride"))};
  cfg.validate();
  return cfg;
}

SpectralField data_from(const json& c, const std::string& spec_key, const std::string& amplitude_key, const Grid& grid,
                        std::uint64_t seed) {
  return require_real(c, amplitude_key) * resolve_data(require_string(c, spec_key), grid, seed);
}

std::vector<double> real_list(const json& c, const std::string& key) {
  const json& v = require(c, key);
  if (!v.is_array() || v.empty()) throw config::ConfigError("config key '" + key + "' must be a non-empty array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw config::ConfigError("config key '" + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<int> integer_list(const json& c, const std::string& key) {
  const json& v = require(c, key);
  if (!v.is_array() || v.empty()) throw config::ConfigError("config key '" + key + "' must be a non-empty array");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw config::ConfigError("config key '" + key + "' must hold integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::string energies_csv(const TimeSeries& series) {
  std::string out = std::string(kEnergyCsvHeader) + '\n';
  for (const auto& r : series.reports) out += csv_row(r) + '\n';
  return out;
}

void write_snapshots(Outputs& out, const TimeSeries& series, const std::string& dir) {
  std::string index = "index,t\n";
  for (std::size_t i = 0; i < series.frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "u_%06zu", i);
    out.field(dir + "/" + name, series.frames[i].u);
    index += std::to_string(i) + ',' + format_real(series.frames[i].t) + '\n';
  }
  out.text(dir + "/times.csv", index);
}

bool check_run(const TimeSeries& series, Outcome& outcome) {
  if (series.ok()) return true;
  outcome.sentinel("blowup", series.message);
  return false;
}

TimeSeries truncated(const TimeSeries& series, double horizon) {
  TimeSeries out;
  for (const auto& f : series.frames)
    if (f.t <= horizon * (1.0 + 1e-12)) out.frames.push_back(f);
  return out;
}

double relative_drift(const std::vector<double>& values) {
  double drift = 0.0;
  const double scale = std::abs(values.front());
  for (double v : values) drift = std::max(drift, std::abs(v - values.front()));
  return scale > 0.0 ? drift / scale : drift;
}

double fitted_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const double n = double(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double denom = n * stt - st * st;
  return denom == 0.0 ? 0.0 : (n * sty - st * sy) / denom;
}

// --- experiments ------------------------------------------------------------

void simulate(const Scenario& sc, Outputs& out, Outcome& outcome, bool conserve) {
  const SolverConfig cfg = solver_from(sc.config);
  const SpectralField u0 = data_from(sc.config, "data.spec", "data.amplitude", cfg.grid, sc.seed);
  outcome.u0_hash = io::field_hash(u0);
  const TimeSeries run = evolve(u0, cfg);
  out.text("energies.csv", energies_csv(run));
  if (!conserve) write_snapshots(out, run, "snapshots");
  outcome.results["frames"] = run.frames.size();
  outcome.results["t_final"] = run.frames.empty() ? 0.0 : run.t_final();
  if (!check_run(run, outcome)) return;
  if (!conserve) return;

  std::vector<double> t, e1s, e2g, e2u;
  for (std::size_t i = 0; i < run.frames.size(); ++i) {
    t.push_back(run.frames[i].t);
    e1s.push_back(run.reports[i].e1);
    e2g.push_back(run.reports[i].e2_gauge);
    e2u.push_back(e2(run.frames[i].u));
  }
  const double e1_0 = e1s.front();
  outcome.results["e1_relative_drift"] = relative_drift(e1s);
  outcome.results["e2_gauge_relative_drift"] = relative_drift(e2g);
  outcome.results["e2_uncorrected_relative_drift"] = relative_drift(e2u);
  outcome.results["e2_uncorrected_slope"] = fitted_slope(t, e2u);
  outcome.results["galilean_slope"] = e1_0 * e1_0 / (2.0 * cfg.grid.length());
}

void picard(const Scenario& sc, Outputs& out, Outcome& outcome) {
  const SolverConfig cfg = solver_from(sc.config);
  const SpectralField u0 = data_from(sc.config, "data.spec", "data.amplitude", cfg.grid, sc.seed);
  outcome.u0_hash = io::field_hash(u0);
  const double tol = require_real(sc.config, "picard.tol");
  const int max_iter = static_cast<int>(require_integer(sc.config, "picard.max_iter"));
  const int max_halvings = static_cast<int>(require_integer(sc.config, "picard.max_halvings"));
  if (max_halvings < 0) throw config::ConfigError("picard.max_halvings must be >= 0");
  const PicardResult result = picard_horizon_search(u0, cfg, tol, max_iter, max_halvings);
  const IterationReport& r = result.report;
  const json report = {{"horizon", r.horizon},   {"distances", r.distances},
                       {"ratios", r.ratios},     {"converged", r.converged},
                       {"non_contraction", r.non_contraction}, {"halvings", r.halvings}};
  out.text("iteration_report.json", report.dump(2) + '\n');
  if (!result.solution.frames.empty()) out.field("snapshots/picard_final", result.solution.final_field());
  outcome.results["horizon"] = r.horizon;
  outcome.results["iterations"] = r.distances.size();
  outcome.results["tail_ratio"] = tail_ratio(r);
  if (!r.converged)
    outcome.sentinel("non_contraction", r.non_contraction ? "iteration stopped contracting" : "iteration did not reach tol");
}

void linearized(const Scenario& sc, Outputs& out, Outcome& outcome) {
  const SolverConfig cfg = solver_from(sc.config);
  const SpectralField u0 = data_from(sc.config, "data.spec", "data.amplitude", cfg.grid, sc.seed);
  const SpectralField delta =
      data_from(sc.config, "linearized.perturbation", "linearized.perturbation_amplitude", cfg.grid, sc.seed + 1);
  const std::vector<double> epsilons = real_list(sc.config, "linearized.epsilons");
  outcome.u0_hash = io::field_hash(u0);
  const TimeSeries background = evolve(u0, cfg);
  out.text("energies.csv", energies_csv(background));
  if (!check_run(background, outcome)) return;
  const TimeSeries w = evolve_linearized(delta, background, cfg);
  if (!check_run(w, outcome)) return;
  write_snapshots(out, w, "linearized");

  const EvolveOptions quiet{true, false};
  double scale = 0.0;
  for (const auto& f : w.frames) scale = std::max({scale, linf(f.u), hdot(f.u, 1.0)});
  std::string csv = "eps,error\n";
  for (double eps : epsilons) {
    const TimeSeries moved = evolve(u0 + eps * delta, cfg, quiet);
    if (!check_run(moved, outcome)) return;
    double err = 0.0;
    for (std::size_t i = 0; i < w.frames.size(); ++i) {
      const SpectralField quotient = (1.0 / eps) * (moved.frames[i].u - background.frames[i].u);
      const SpectralField gap = quotient - w.frames[i].u;
      err = std::max({err, linf(gap), hdot(gap, 1.0)});
    }
    csv += format_real(eps) + ',' + format_real(scale > 0.0 ? err / scale : err) + '\n';
  }
  out.text("directional.csv", csv);
}

void difference(const Scenario& sc, Outputs& out, Outcome& outcome) {
  const SolverConfig cfg = solver_from(sc.config);
  const SpectralField u0 = data_from(sc.config, "data.spec", "data.amplitude", cfg.grid, sc.seed);
  const SpectralField delta =
      data_from(sc.config, "difference.perturbation", "difference.perturbation_amplitude", cfg.grid, sc.seed + 1);
  const std::vector<double> epsilons = real_list(sc.config, "difference.epsilons");
  outcome.u0_hash = io::field_hash(u0);
  const EvolveOptions quiet{true, false};
  const TimeSeries u = evolve(u0, cfg, quiet);
  if (!check_run(u, outcome)) return;
  std::string csv = "eps,ratio\n";
  json ratios = json::array();
  for (double eps : epsilons) {
    const TimeSeries v = evolve(u0 + eps * delta, cfg, quiet);
    if (!check_run(v, outcome)) return;
    const double ratio = lipschitz_ratio(u, v, cfg.s, cfg.t_end);
    ratios.push_back(ratio);
    csv += format_real(eps) + ',' + format_real(ratio) + '\n';
  }
  out.text("difference.csv", csv);
  outcome.results["ratios"] = ratios;
}

void envelope(const Scenario& sc, Outputs& out, Outcome& outcome) {
  const SolverConfig cfg = solver_from(sc.config);
  const SpectralField u0 = data_from(sc.config, "data.spec", "data.amplitude", cfg.grid, sc.seed);
  outcome.u0_hash = io::field_hash(u0);
  const double delta = require_real(sc.config, "envelope.delta");
  const std::vector<int> h_list = integer_list(sc.config, "envelope.h_list");
  const int reference_h = static_cast<int>(require_integer(sc.config, "envelope.reference_h"));
  const ConvergenceStudy study = convergence_study(u0, h_list, cfg, reference_h, delta, sc.workers);

  std::string env = "k,a_k,c_k\n";
  for (std::size_t k = 0; k < study.envelope.c.size(); ++k)
    env += std::to_string(k) + ',' + format_real(study.envelope.base[k]) + ',' + format_real(study.envelope.c[k]) + '\n';
  out.text("envelope.csv", env);
  if (study.status != RunStatus::ok) {
    outcome.sentinel("blowup", study.message);
    return;
  }
  std::string conv = "h,distance,c_geq_h,ratio\n";
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : study.rows) {
    conv += std::to_string(r.h) + ',' + format_real(r.distance) + ',' + format_real(r.c_geq_h) + ',' +
            format_real(r.ratio) + '\n';
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  out.text("convergence.csv", conv);
  outcome.results["ratio_spread"] = lo > 0.0 ? hi / lo : INFINITY;
  outcome.results["under_resolved"] = study.under_resolved;
  outcome.results["top_band_fraction"] = study.top_band_fraction;
}

void flow(const Scenario& sc, Outputs& out, Outcome& outcome) {
  const SolverConfig cfg = solver_from(sc.config);
  const SpectralField u0 = data_from(sc.config, "data.spec", "data.amplitude", cfg.grid, sc.seed);
  outcome.u0_hash = io::field_hash(u0);
  const TimeSeries background = evolve(u0, cfg);
  out.text("energies.csv", energies_csv(background));
  if (!check_run(background, outcome)) return;
  const FlowReport report = low_freq_flow(background, cfg);
  std::string csv = "t,sup_u_low,min_qx\n";
  double min_qx = INFINITY;
  for (const auto& s : report.samples) {
    csv += format_real(s.t) + ',' + format_real(s.sup_u_low) + ',' + format_real(s.min_qx) + '\n';
    min_qx = std::min(min_qx, s.min_qx);
  }
  out.text("flow.csv", csv);
  outcome.results["min_qx"] = min_qx;
  outcome.results["monotone"] = report.monotone;
  if (!report.monotone) outcome.sentinel("flow_not_monotone", "characteristics lost strict monotonicity");
}

void audit(const Scenario& sc, Outputs& out, Outcome& outcome) {
  const SolverConfig cfg = solver_from(sc.config);
  const SpectralField u0 = data_from(sc.config, "data.spec", "data.amplitude", cfg.grid, sc.seed);
  outcome.u0_hash = io::field_hash(u0);
  const std::vector<double> horizons = real_list(sc.config, "audit.horizons");
  for (double h : horizons)
    if (!(h > 0.0 && h <= cfg.t_end * (1.0 + 1e-12)))
      throw config::ConfigError("audit.horizons must lie in (0, solver.t_end]");
  const TimeSeries run = evolve(u0, cfg);
  out.text("energies.csv", energies_csv(run));
  if (!check_run(run, outcome)) return;
  std::string csv = "horizon,constant\n";
  json constants = json::array();
  for (double h : horizons) {
    const double c = linfty_bound_audit(truncated(run, h));
    constants.push_back(c);
    csv += format_real(h) + ',' + format_real(c) + '\n';
  }
  out.text("audit.csv", csv);
  outcome.results["constants"] = constants;
}

void dispatch(const Scenario& sc, Outputs& out, Outcome& outcome) {
  switch (sc.kind) {
    case ScenarioKind::simulate: return simulate(sc, out, outcome, false);
    case ScenarioKind::conserve: return simulate(sc, out, outcome, true);
    case ScenarioKind::picard: return picard(sc, out, outcome);
    case ScenarioKind::linearized: return linearized(sc, out, outcome);
    case ScenarioKind::difference: return difference(sc, out, outcome);
    case ScenarioKind::envelope: return envelope(sc, out, outcome);
    case ScenarioKind::flow: return flow(sc, out, outcome);
    case ScenarioKind::audit: return audit(sc, out, outcome);
  }
}

}  // namespace

ScenarioKind parse_scenario_kind(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kKindNames); ++i)
    if (name == kKindNames[i]) return static_cast<ScenarioKind>(i);
  throw UsageError("unknown scenario kind '" + name + "'");
}

std::string to_string(ScenarioKind kind) { return std::string(kKindNames[static_cast<std::size_t>(kind)]); }

int run(const Scenario& sc) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::exists(sc.outdir, ec) && !fs::is_empty(sc.outdir, ec)) {
    if (!sc.overwrite) {
      std::cerr << "dhs: output directory " << sc.outdir << " is not empty (pass --overwrite to replace it)\n";
      return kExitUsage;
    }
    fs::remove_all(sc.outdir);
  }
  fs::create_directories(sc.outdir);

  const auto start = std::chrono::steady_clock::now();
  Outputs out(sc.outdir);
  Outcome outcome;
  try {
    dispatch(sc, out, outcome);
  } catch (const config::ConfigError& e) {
    outcome.fail("usage_error", e.what());
  } catch (const UsageError& e) {
    outcome.fail("usage_error", e.what());
  } catch (const std::invalid_argument& e) {
    outcome.fail("usage_error", e.what());
  } catch (const std::exception& e) {
    outcome.fail("error", e.what());
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const json manifest = {{"kind", to_string(sc.kind)},
                         {"config", sc.config},
                         {"seed", sc.seed},
                         {"u0_hash", outcome.u0_hash},
                         {"status", outcome.status},
                         {"exit_code", outcome.code},
                         {"message", outcome.message},
                         {"wall_time_s", wall},
                         {"results", outcome.results},
                         {"files", out.files()}};
  std::ofstream(sc.outdir / "manifest.json") << manifest.dump(2) << '\n';
  if (outcome.code == kExitUsage) std::cerr << "dhs: " << outcome.message << '\n';
  return outcome.code;
}

}  // namespace dhs
