#pragma once

// Conserved quantities, X^s norms, the normal-form variable and the
// normal-form modified energy.

#include <string>

#include "dhs/grid.hpp"
#include "dhs/lp.hpp"

namespace dhs {

struct EnergyReport {
  double t = 0.0;
  double e1 = 0.0;
  double e2_gauge = 0.0;
  double beta = 0.0;
  double e_tilde = 0.0;
  double hs_high = 0.0;
  double linf = 0.0;
  double h1 = 0.0;
  double h1s = 0.0;
};

/// CSV header matching csv_row().
inline constexpr const char* kEnergyCsvHeader = "t,e1,e2_gauge,beta,e_tilde,hs_high,linf,h1,h1s";
std::string csv_row(const EnergyReport& r);

/// E1 = int u_x^2.
double e1(const SpectralField& u);

/// Uncorrected E2 = int u_xx^2 - u u_x^2.
double e2(const SpectralField& u);

struct GaugedE2 {
  double e2_star;
  double beta;
};

/// beta = e1_0 t / (2 L); E2* = int u_xx^2 - (u + beta) u_x^2.
GaugedE2 e2_gauge(const SpectralField& u, double t, double e1_0);

/// max(||u||_inf, ||u||_Hdot1, ||u||_Hdot^{1+s}), s in (1/2, 1].
double xs_norm(const SpectralField& u, double s);

/// max(||u||_inf, ||u||_Hdot1).
double x0_norm(const SpectralField& u);

/// u - d^{-2}(u^2)/6 + (d^{-1} u)^2/6 in the mean-zero gauge.
SpectralField normal_form_variable(const SpectralField& u);

double modified_energy(const SpectralField& u, const LPSymbol& sym);

/// ||u_{>0}||^2_{Hdot^{1+s}}, which equals int (A u_x)^2.
double high_sobolev_energy(const SpectralField& u, const LPSymbol& sym);

/// |hs_high - E~| / (E1 ||u||_inf); 0 when both vanish, +infinity when only
/// the denominator does.
double equivalence_defect(const SpectralField& u, const LPSymbol& sym);

struct QSplit {
  SpectralField q1;  // d^{-2}(u_x u_xx)
  SpectralField q2;  // -u u_x
};

QSplit q_split(const SpectralField& u);

/// int A Q L_A(u,u) + A u L_A(Q,u) + A u L_A(u,Q) with Q the gauge-fixed right
/// side; this is the exact time derivative of the modified energy.
double quartic_rate(const SpectralField& u, const LPSymbol& sym);

/// quartic_rate / (||Au||^2 (||u_x||^2 + ||u_x||_inf ||u||_inf)).
double modified_energy_growth_ratio(const SpectralField& u, const LPSymbol& sym);

EnergyReport energy_report(const SpectralField& u, double t, double e1_0, const LPSymbol& sym);

}  // namespace dhs
