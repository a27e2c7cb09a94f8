#include "dhs/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace dhs {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

SpectralField low_pass(const SpectralField& f, int k) {
  return apply_symbol(f, [k](double xi) { return lp_low_symbol(k, xi); });
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double b = bump(t);
  return b / (b + bump(1.0 - t));
}

double lp_cutoff(double xi) { return smooth_step(2.0 - std::abs(xi)); }

double lp_low_symbol(int k, double xi) {
  if (k < 0) return 0.0;
  return lp_cutoff(std::ldexp(xi, -k));
}

double lp_band_symbol(int k, double xi) {
  if (k < 0) return 0.0;
  if (k == 0) return lp_cutoff(xi);
  return lp_low_symbol(k, xi) - lp_low_symbol(k - 1, xi);
}

LPSymbol::LPSymbol(double s_) : s(s_) {
  if (!(s > 0.5 && s <= 1.0)) throw std::invalid_argument("LPSymbol: s must lie in (1/2, 1]");
}

double LPSymbol::a(double xi) const { return std::pow(std::abs(xi), s) * (1.0 - lp_cutoff(xi)); }

int top_band(const Grid& grid) {
  int k = 1;
  while (std::ldexp(1.0, k) < grid.max_wavenumber()) ++k;
  return k;
}

SpectralField project(const SpectralField& f, Band band) {
  switch (band.kind) {
    case Band::Kind::leq:
      return low_pass(f, band.k);
    case Band::Kind::at:
      return apply_symbol(f, [k = band.k](double xi) { return lp_band_symbol(k, xi); });
    case Band::Kind::gt0:
      return apply_symbol(f, [](double xi) { return 1.0 - lp_cutoff(xi); });
  }
  throw std::logic_error("project: unknown band kind");
}

SpectralField apply_A(const SpectralField& f, const LPSymbol& sym) {
  return apply_symbol(f, [&sym](double xi) { return sym.a(xi); });
}

SpectralField paraproduct_low_high(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  SpectralField out = SpectralField::zero(f.grid());
  const int top = top_band(f.grid());
  for (int k = 5; k <= top; ++k) out += product(low_pass(f, k - 5), project(g, Band::at(k)));
  return out;
}

SpectralField balanced_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  SpectralField out = SpectralField::zero(f.grid());
  const int top = top_band(f.grid());
  for (int j = 0; j <= top; ++j) {
    // sum_{|k - j| <= 4} P_k g telescopes to P_{<=j+4} g - P_{<=j-5} g.
    const int lo = j - 5, hi = j + 4;
    SpectralField near = apply_symbol(g, [lo, hi](double xi) {
      return lp_low_symbol(hi, xi) - lp_low_symbol(lo, xi);
    });
    out += product(project(f, Band::at(j)), near);
  }
  return out;
}

SpectralField commutator_A(const SpectralField& v, const SpectralField& w, const LPSymbol& sym) {
  require_same_grid(v, w);
  const SpectralField prim = antiderivative_meanzero(v).field;
  const SpectralField wx = derivative(w, 1);
  return apply_A(product(prim, wx), sym) - product(prim, apply_A(wx, sym));
}

SpectralField L_A(const SpectralField& v, const SpectralField& w, const LPSymbol& sym) {
  require_same_grid(v, w);
  SpectralField out = (-1.0 / 3.0) * apply_A(product(v, w), sym);
  out -= (2.0 / 3.0) * commutator_A(v, w, sym);
  out += (1.0 / 3.0) * product(apply_A(v, sym), w);
  return out;
}

}  // namespace dhs
