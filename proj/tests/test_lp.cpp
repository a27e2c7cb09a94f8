#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dhs/lp.hpp"
#include "oracle.hpp"

using namespace dhs;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectralField mode_cos(const Grid& g, double xi) {
  return make_field(g, [xi](double x) { return std::cos(xi * x); });
}

SpectralField white(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  RealVector s(g.n());
  for (auto& v : s) v = normal(rng);
  return SpectralField::from_samples(g, s);
}

}  // namespace

TEST_CASE("cutoff symbol shape") {
  CHECK(lp_cutoff(0.0) == 1.0);
  CHECK(lp_cutoff(1.0) == 1.0);
  CHECK(lp_cutoff(-0.7) == 1.0);
  CHECK(lp_cutoff(2.0) == 0.0);
  CHECK(lp_cutoff(-5.0) == 0.0);
  CHECK(lp_cutoff(1.5) == doctest::Approx(0.5));
  double previous = 1.0;
  for (double xi = 1.0; xi <= 2.0; xi += 1e-3) {
    CHECK(lp_cutoff(xi) <= previous);
    previous = lp_cutoff(xi);
  }
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(1e-3) < 1e-300);
}

TEST_CASE("bands form a partition of unity on the lattice") {
  for (const Grid& g : {Grid(256, kTwoPi), Grid(64, 0.37), Grid(1024, 300.0)}) {
    const int top = top_band(g);
    CHECK(std::ldexp(1.0, top) >= g.max_wavenumber());
    for (int i = 0; i < g.n(); ++i) {
      double sum = 0.0;
      for (int k = 0; k <= top; ++k) sum += lp_band_symbol(k, g.wavenumbers()[i]);
      CHECK(std::abs(sum - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("project") {
  const Grid g(128, kTwoPi);
  CHECK(l2(project(mode_cos(g, 8), Band::leq(0))) < 1e-14);
  const SpectralField c = make_field(g, [](double) { return 1.75; });
  CHECK(l2(project(c, Band::leq(0)) - c) < 1e-14);
  std::mt19937_64 rng(2);
  const SpectralField f = white(g, rng);
  SpectralField sum = SpectralField::zero(g);
  for (int k = 0; k <= top_band(g); ++k) sum += project(f, Band::at(k));
  CHECK(l2(sum - f) <= 1e-12 * l2(f));
  CHECK(l2(project(f, Band::gt0()) + project(f, Band::leq(0)) - f) <= 1e-12 * l2(f));
}

TEST_CASE("projectors contract, commute with each other and with derivative") {
  const Grid g(256, 5.0);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const SpectralField f = white(g, rng);
    for (Band b : {Band::leq(0), Band::leq(3), Band::at(2), Band::at(6), Band::gt0()}) {
      CHECK(l2(project(f, b)) <= l2(f) * (1 + 1e-12));
      const SpectralField d1 = derivative(project(f, b), 2), d2 = project(derivative(f, 2), b);
      CHECK(l2(d1 - d2) <= 1e-12 * l2(d1) + 1e-12);
      const SpectralField ab = project(project(f, b), Band::at(4)), ba = project(project(f, Band::at(4)), b);
      CHECK(l2(ab - ba) <= 1e-12 * l2(f));
    }
  }
}

TEST_CASE("apply_A") {
  const LPSymbol sym(0.75);
  const Grid g(64, kTwoPi);
  CHECK(l2(apply_A(make_field(g, [](double) { return 3.0; }), sym)) < 1e-14);
  const SpectralField four = mode_cos(g, 4);
  CHECK(l2(apply_A(four, sym) - 2.8284271247461903 * four) < 1e-12);
  // lattice spacing 1.5: phi(1.5) = 1/2 for the smooth step in use
  const Grid g15(64, 4.0 * std::numbers::pi / 3.0);
  const SpectralField one_half = mode_cos(g15, 1.5);
  CHECK(l2(apply_A(one_half, sym) - 0.6777015027073836 * one_half) < 1e-12);
  // spectrum inside |xi| <= 1 is annihilated up to transform roundoff
  const SpectralField low = make_field(g, [](double x) { return 2.0 + std::sin(x) - 0.3 * std::cos(x); });
  CHECK(l2(apply_A(low, sym)) < 1e-13);
  CHECK_THROWS_AS(LPSymbol(0.5), std::invalid_argument);
  CHECK_THROWS_AS(LPSymbol(1.01), std::invalid_argument);
}

TEST_CASE("paraproduct_low_high") {
  const Grid g(512, kTwoPi);
  std::mt19937_64 rng(6);
  SUBCASE("constant low factor") {
    const SpectralField c = make_field(g, [](double) { return 2.5; });
    const SpectralField f = oracle::random_field(g, 160, rng);
    const SpectralField expected = 2.5 * dealias(f - project(f, Band::leq(4)));
    CHECK(l2(paraproduct_low_high(c, f) - expected) <= 1e-12 * l2(f));
  }
  SUBCASE("wrong ordering gives nothing") {
    CHECK(l2(paraproduct_low_high(mode_cos(g, 64), mode_cos(g, 4))) < 1e-13);
  }
  SUBCASE("grid mismatch") {
    CHECK_THROWS_AS(paraproduct_low_high(SpectralField::zero(g), SpectralField::zero(Grid(512, 1.0))),
                    std::invalid_argument);
  }
}

TEST_CASE("balanced_product") {
  const Grid g(512, kTwoPi);
  const SpectralField f = mode_cos(g, 32), h = make_field(g, [](double x) { return std::sin(32 * x); });
  CHECK(l2(balanced_product(f, h) - product(f, h)) < 1e-12);
  CHECK(l2(balanced_product(mode_cos(g, 2), mode_cos(g, 128))) < 1e-13);
  CHECK_THROWS_AS(balanced_product(f, SpectralField::zero(Grid(256, kTwoPi))), std::invalid_argument);
}

TEST_CASE("Bony decomposition is complete") {
  std::mt19937_64 rng(10);
  for (const Grid& g : {Grid(128, kTwoPi), Grid(256, 40.0)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const SpectralField f = white(g, rng), h = white(g, rng);
      const SpectralField whole = product(f, h);
      const SpectralField pieces = paraproduct_low_high(f, h) + paraproduct_low_high(h, f) + balanced_product(f, h);
      CHECK(l2(pieces - whole) <= 1e-10 * l2(whole));
    }
  }
}

TEST_CASE("commutator_A") {
  const LPSymbol sym(0.75);
  const Grid g(64, kTwoPi);
  std::mt19937_64 rng(11);
  const SpectralField w = mode_cos(g, 10);
  CHECK(l2(commutator_A(SpectralField::zero(g), w, sym)) == 0.0);
  CHECK(l2(commutator_A(make_field(g, [](double) { return 4.0; }), w, sym)) < 1e-13);

  // direct double sum: sum_{j+k=m} V_j (i xi_k) w_k (a(xi_m) - a(xi_k))
  const oracle::Torus t{64, kTwoPi};
  for (int trial = 0; trial < 3; ++trial) {
    const SpectralField v = oracle::random_field(g, 4, rng);
    const SpectralField wr = oracle::random_field(g, 12, rng);
    const oracle::Spectrum V = oracle::primitive(t, oracle::spectrum(v)), W = oracle::spectrum(wr);
    oracle::Spectrum expected;
    for (const auto& [j, x] : V)
      for (const auto& [k, y] : W) {
        const int m = j + k;
        if (std::abs(m) > t.cut()) continue;
        expected[m] += x * Complex(0.0, t.xi(k)) * y * (sym.a(t.xi(m)) - sym.a(t.xi(k)));
      }
    CHECK(oracle::max_difference(commutator_A(v, wr, sym), expected) < 1e-12);
  }
}

TEST_CASE("L_A") {
  const LPSymbol sym(0.75);
  const Grid g(128, kTwoPi);
  std::mt19937_64 rng(12);
  CHECK(l2(L_A(SpectralField::zero(g), SpectralField::zero(g), sym)) == 0.0);
  const SpectralField w = oracle::random_field(g, 40, rng);
  const SpectralField c = make_field(g, [](double) { return 1.3; });
  CHECK(l2(L_A(c, w, sym) + (1.3 / 3.0) * apply_A(dealias(w), sym)) < 1e-12 * l2(w));

  const SpectralField v = oracle::random_field(g, 40, rng);
  SpectralField assembled = (-1.0 / 3.0) * apply_A(product(v, w), sym);
  assembled -= (2.0 / 3.0) * commutator_A(v, w, sym);
  assembled += (1.0 / 3.0) * product(apply_A(v, sym), w);
  CHECK(l2(L_A(v, w, sym) - assembled) == 0.0);
}

TEST_CASE("L_A bound constant stays put as frequencies grow") {
  // ||L_A(v, w)|| <= C (||Av|| ||w||_inf + ||Aw|| ||v||_inf); record C per band
  const LPSymbol sym(0.75);
  const Grid g(1024, kTwoPi);
  std::mt19937_64 rng(13);
  std::vector<double> constants;
  for (int k = 2; k <= 7; ++k) {
    double worst = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      const SpectralField v = project(oracle::random_field(g, 1 << (k + 1), rng), Band::at(k));
      const SpectralField w = project(oracle::random_field(g, 1 << (k + 1), rng), Band::at(k));
      const double rhs = l2(apply_A(v, sym)) * linf(w) + l2(apply_A(w, sym)) * linf(v);
      worst = std::max(worst, l2(L_A(v, w, sym)) / rhs);
    }
    constants.push_back(worst);
  }
  const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
  MESSAGE("L_A bound constants per band: ", constants[0], " ... ", constants.back());
  CHECK(*hi < 2.0);
  CHECK(*hi / *lo < 4.0);
}
