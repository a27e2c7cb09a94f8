#include "dhs/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

namespace dhs {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> engine;
  return engine;
}

}  // namespace

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (!is_power_of_two(n) || n < 16)
    throw std::invalid_argument("grid: n must be a power of two >= 16, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid: length must be positive and finite");
  auto data = std::make_shared<Data>();
  data->xi.resize(n);
  data->x.resize(n);
  const double k0 = 2.0 * std::numbers::pi / length;
  for (int i = 0; i < n; ++i) {
    data->xi[i] = k0 * mode(i);
    data->x[i] = i * length / n;
  }
  data_ = std::move(data);
}

double Grid::max_wavenumber() const { return 2.0 * std::numbers::pi / length_ * (n_ / 2); }

namespace fft {

ComplexVector forward(const RealVector& samples) {
  ComplexVector out(samples.size());
  thread_fft().fwd(out, samples);
  return out;
}

RealVector inverse(const ComplexVector& coeffs) {
  RealVector out(coeffs.size());
  thread_fft().inv(out, coeffs);
  return out;
}

void symmetrize(ComplexVector& c) {
  const Eigen::Index n = c.size();
  c[0] = c[0].real();
  c[n / 2] = c[n / 2].real();
  for (Eigen::Index i = 1; i < n / 2; ++i) {
    const Complex avg = 0.5 * (c[i] + std::conj(c[n - i]));
    c[i] = avg;
    c[n - i] = std::conj(avg);
  }
}

}  // namespace fft

SpectralField SpectralField::zero(const Grid& grid) {
  return SpectralField(grid, RealVector::Zero(grid.n()), ComplexVector::Zero(grid.n()));
}

SpectralField SpectralField::from_samples(const Grid& grid, RealVector samples) {
  if (samples.size() != grid.n()) throw std::invalid_argument("field: sample count does not match grid");
  ComplexVector c = fft::forward(samples);
  return SpectralField(grid, std::move(samples), std::move(c));
}

SpectralField SpectralField::from_coeffs(const Grid& grid, ComplexVector coeffs) {
  if (coeffs.size() != grid.n()) throw std::invalid_argument("field: coefficient count does not match grid");
  fft::symmetrize(coeffs);
  RealVector s = fft::inverse(coeffs);
  return SpectralField(grid, std::move(s), std::move(coeffs));
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other);
  samples_ += other.samples_;
  coeffs_ += other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other);
  samples_ -= other.samples_;
  coeffs_ -= other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  samples_ *= scale;
  coeffs_ *= scale;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double scale, SpectralField f) { return f *= scale; }
SpectralField operator-(SpectralField f) { return f *= -1.0; }

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

SpectralField make_field(const Grid& grid, const std::function<double(double)>& sampler) {
  RealVector s(grid.n());
  for (int i = 0; i < grid.n(); ++i) {
    s[i] = sampler(grid.positions()[i]);
    if (!std::isfinite(s[i]))
      throw std::invalid_argument("make_field: non-finite sample at x = " + std::to_string(grid.positions()[i]));
  }
  return SpectralField::from_samples(grid, std::move(s));
}

SpectralField derivative(const SpectralField& f, int order) {
  if (order < 1) throw std::invalid_argument("derivative: order must be >= 1");
  const Grid& g = f.grid();
  ComplexVector c = f.coeffs();
  const RealVector& xi = g.wavenumbers();
  const Complex unit(0.0, 1.0);
  for (int i = 0; i < g.n(); ++i) c[i] *= std::pow(unit * xi[i], order);
  if (order % 2 == 1) c[g.n() / 2] = 0.0;
  return SpectralField::from_coeffs(g, std::move(c));
}

Primitive antiderivative_meanzero(const SpectralField& f) {
  const Grid& g = f.grid();
  ComplexVector c = f.coeffs();
  const RealVector& xi = g.wavenumbers();
  const double mean = f.mean();
  c[0] = 0.0;
  c[g.n() / 2] = 0.0;
  for (int i = 1; i < g.n(); ++i)
    if (i != g.n() / 2) c[i] /= Complex(0.0, xi[i]);
  return {SpectralField::from_coeffs(g, std::move(c)), mean};
}

SpectralField dealias(const SpectralField& f) {
  const Grid& g = f.grid();
  ComplexVector c = f.coeffs();
  const int cut = g.dealias_cutoff();
  for (int i = 0; i < g.n(); ++i)
    if (std::abs(g.mode(i)) > cut) c[i] = 0.0;
  return SpectralField::from_coeffs(g, std::move(c));
}

SpectralField product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  const Grid& grid = f.grid();
  ComplexVector c = fft::forward(f.samples().cwiseProduct(g.samples()));
  const int cut = grid.dealias_cutoff();
  for (int i = 0; i < grid.n(); ++i)
    if (std::abs(grid.mode(i)) > cut) c[i] = 0.0;
  return SpectralField::from_coeffs(grid, std::move(c));
}

double inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  const double n = f.grid().n();
  const double sum = (f.coeffs().array() * g.coeffs().array().conjugate()).real().sum();
  return f.grid().length() * sum / (n * n);
}

double norm(const SpectralField& f, Norm kind) {
  const Grid& g = f.grid();
  const double n = g.n();
  switch (kind.kind) {
    case Norm::Kind::linf:
      return f.samples().cwiseAbs().maxCoeff();
    case Norm::Kind::l2:
      return std::sqrt(g.length()) * f.coeffs().norm() / n;
    case Norm::Kind::hdot: {
      if (!(kind.sigma >= 0.0 && kind.sigma <= 3.0))
        throw std::invalid_argument("norm: Sobolev exponent must lie in [0, 3]");
      const RealVector& xi = g.wavenumbers();
      double sum = 0.0;
      for (int i = 1; i < g.n(); ++i)
        sum += std::pow(std::abs(xi[i]), 2.0 * kind.sigma) * std::norm(f.coeffs()[i]);
      return std::sqrt(g.length() * sum) / n;
    }
  }
  throw std::logic_error("norm: unknown kind");
}

}  // namespace dhs
