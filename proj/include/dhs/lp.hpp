#pragma once

// Littlewood-Paley calculus on the grid: smooth dyadic projectors, the
// weight A(D) = |D|^s P_{>0}, Bony paraproducts and the commutators that
// enter the modified energy.
//
// Band indexing: band 0 is P_{<=0} (symbol phi), band k >= 1 is P_k with
// symbol psi_k(xi) = phi(xi / 2^k) - phi(xi / 2^{k-1}).  The paraproduct
// T_f g pairs P_{<k-4} f = P_{<=k-5} f with P_k g; everything with band
// indices within 4 of each other (including the low-low block) is Pi(f, g).

#include "dhs/grid.hpp"

namespace dhs {

/// C-infinity transition: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

/// Low-pass cutoff: 1 on |xi| <= 1, 0 on |xi| >= 2, monotone in between.
double lp_cutoff(double xi);

/// Symbol of P_{<=k}: phi(xi / 2^k).  Returns 0 for k < 0.
double lp_low_symbol(int k, double xi);

/// Symbol of band k (band 0 is phi itself).
double lp_band_symbol(int k, double xi);

struct LPSymbol {
  double s;

  explicit LPSymbol(double s);
  /// a(xi) = |xi|^s (1 - phi(xi)).
  double a(double xi) const;
};

/// Highest band index whose support meets the grid's wavenumbers.
int top_band(const Grid& grid);

struct Band {
  enum class Kind { leq, at, gt0 };
  Kind kind;
  int k = 0;

  static Band leq(int k) { return {Kind::leq, k}; }
  static Band at(int k) { return {Kind::at, k}; }
  static Band gt0() { return {Kind::gt0, 0}; }
};

SpectralField project(const SpectralField& f, Band band);

SpectralField apply_A(const SpectralField& f, const LPSymbol& sym);

/// T_f g = sum_k P_{<k-4} f * P_k g.
SpectralField paraproduct_low_high(const SpectralField& f, const SpectralField& g);

/// Pi(f, g): band pairs with |j - k| <= 4.
SpectralField balanced_product(const SpectralField& f, const SpectralField& g);

/// [A, V] w_x with V multiplication by the mean-zero primitive of v.
SpectralField commutator_A(const SpectralField& v, const SpectralField& w, const LPSymbol& sym);

/// L_A(v, w) = -A(vw)/3 - 2/3 [A, d^{-1} v] w_x + A v * w / 3.
SpectralField L_A(const SpectralField& v, const SpectralField& w, const LPSymbol& sym);

}  // namespace dhs
