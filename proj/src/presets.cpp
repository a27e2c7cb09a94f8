#include "dhs/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dhs/io.hpp"

namespace dhs {

namespace {

SpectralField random_decay(const Grid& grid, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const int n = grid.n();
  const double limit = grid.max_wavenumber() / 4.0;
  ComplexVector c = ComplexVector::Zero(n);
  for (int j = 1; j < n / 2; ++j) {
    const double xi = grid.wavenumbers()[j];
    if (xi > limit) break;
    const double amplitude = std::exp2(-sigma * std::max(0.0, std::log2(xi)));
    c[j] = std::polar(0.5 * n * amplitude, phase(rng));
  }
  return SpectralField::from_coeffs(grid, std::move(c));
}

}  // namespace

SpectralField preset_data(const std::string& name, const Grid& grid, std::uint64_t seed) {
  const double k = 2.0 * std::numbers::pi / grid.length();
  if (name == "zero") return SpectralField::zero(grid);
  if (name == "sin") return make_field(grid, [k](double x) { return std::sin(k * x); });
  if (name == "two_mode") return make_field(grid, [k](double x) { return std::sin(k * x) + 0.5 * std::cos(2 * k * x); });
  if (name == "gaussian_bump") {
    const double centre = grid.length() / 2, width = grid.length() / 16;
    return make_field(grid, [=](double x) { return std::exp(-0.5 * std::pow((x - centre) / width, 2)); });
  }
  const std::string prefix = "random_decay(";
  if (name.starts_with(prefix) && name.ends_with(")")) {
    const std::string arg = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    std::size_t used = 0;
    double sigma = 0.0;
    try {
      sigma = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size() || !std::isfinite(sigma))
      throw std::invalid_argument("random_decay needs a numeric exponent, got '" + arg + "'");
    return random_decay(grid, sigma, seed);
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

SpectralField resolve_data(const std::string& spec, const Grid& grid, std::uint64_t seed) {
  if (spec.starts_with("preset:")) return preset_data(spec.substr(7), grid, seed);
  SpectralField f = io::read_field(spec);
  if (!(f.grid() == grid)) throw std::invalid_argument("stored field '" + spec + "' does not match the configured grid");
  return f;
}

}  // namespace dhs
