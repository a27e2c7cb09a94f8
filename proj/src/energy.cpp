#include "dhs/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dhs/io.hpp"
#include "dhs/stepper.hpp"

namespace dhs {

std::string csv_row(const EnergyReport& r) {
  using io::format_real;
  return format_real(r.t) + ',' + format_real(r.e1) + ',' + format_real(r.e2_gauge) + ',' + format_real(r.beta) +
         ',' + format_real(r.e_tilde) + ',' + format_real(r.hs_high) + ',' + format_real(r.linf) + ',' +
         format_real(r.h1) + ',' + format_real(r.h1s);
}

double e1(const SpectralField& u) {
  const double h1 = hdot(u, 1.0);
  return h1 * h1;
}

double e2(const SpectralField& u) {
  const SpectralField ux = derivative(u, 1);
  const double h2 = hdot(u, 2.0);
  return h2 * h2 - inner(u, product(ux, ux));
}

GaugedE2 e2_gauge(const SpectralField& u, double t, double e1_0) {
  const double beta = e1_0 * t / (2.0 * u.grid().length());
  return {e2(u) - beta * e1(u), beta};
}

double x0_norm(const SpectralField& u) { return std::max(linf(u), hdot(u, 1.0)); }

double xs_norm(const SpectralField& u, double s) {
  if (!(s > 0.5 && s <= 1.0)) throw std::invalid_argument("xs_norm: s must lie in (1/2, 1]");
  return std::max(x0_norm(u), hdot(u, 1.0 + s));
}

SpectralField normal_form_variable(const SpectralField& u) {
  const SpectralField once = antiderivative_meanzero(product(u, u)).field;
  const SpectralField twice = antiderivative_meanzero(once).field;
  const SpectralField prim = antiderivative_meanzero(u).field;
  return u - (1.0 / 6.0) * twice + (1.0 / 6.0) * product(prim, prim);
}

double high_sobolev_energy(const SpectralField& u, const LPSymbol& sym) {
  const SpectralField aux = apply_A(derivative(u, 1), sym);
  return inner(aux, aux);
}

double modified_energy(const SpectralField& u, const LPSymbol& sym) {
  const SpectralField au = apply_A(u, sym);
  SpectralField bracket = apply_A(product(u, u), sym);
  bracket += 2.0 * commutator_A(u, u, sym);
  bracket -= product(au, u);
  return high_sobolev_energy(u, sym) - inner(au, bracket) / 3.0;
}

double equivalence_defect(const SpectralField& u, const LPSymbol& sym) {
  const double hs = high_sobolev_energy(u, sym);
  const double numerator = std::abs(hs - modified_energy(u, sym));
  const double denominator = e1(u) * linf(u);
  const double floor = 1e-14 * std::max(1.0, hs);
  if (denominator == 0.0) return numerator <= floor ? 0.0 : std::numeric_limits<double>::infinity();
  return numerator / denominator;
}

QSplit q_split(const SpectralField& u) {
  const SpectralField ux = derivative(u, 1);
  const SpectralField uxx = derivative(u, 2);
  const SpectralField once = antiderivative_meanzero(product(ux, uxx)).field;
  return {antiderivative_meanzero(once).field, -product(u, ux)};
}

double quartic_rate(const SpectralField& u, const LPSymbol& sym) {
  const SpectralField q = nonlinearity(u);
  const SpectralField au = apply_A(u, sym);
  return inner(apply_A(q, sym), L_A(u, u, sym)) + inner(au, L_A(q, u, sym)) + inner(au, L_A(u, q, sym));
}

double modified_energy_growth_ratio(const SpectralField& u, const LPSymbol& sym) {
  const SpectralField au = apply_A(u, sym);
  const SpectralField ux = derivative(u, 1);
  const double scale = inner(au, au) * (e1(u) + linf(ux) * linf(u));
  if (scale == 0.0) return 0.0;
  return quartic_rate(u, sym) / scale;
}

EnergyReport energy_report(const SpectralField& u, double t, double e1_0, const LPSymbol& sym) {
  EnergyReport r;
  r.t = t;
  r.h1 = hdot(u, 1.0);
  r.e1 = r.h1 * r.h1;
  const GaugedE2 g = e2_gauge(u, t, e1_0);
  r.e2_gauge = g.e2_star;
  r.beta = g.beta;
  r.e_tilde = modified_energy(u, sym);
  r.hs_high = high_sobolev_energy(u, sym);
  r.linf = linf(u);
  r.h1s = hdot(u, 1.0 + sym.s);
  return r;
}

}  // namespace dhs
