#pragma once

// Periodic grid and the spectral field type that every other module computes on.
//
// Conventions: coefficients are stored in FFT order (index i holds mode
// j = i for i <= n/2 and j = i - n otherwise) and are unnormalized, i.e.
// coeffs = sum_m samples_m exp(-2 pi i j m / n).  The single mode sin(2 pi x / L)
// therefore has coefficients of magnitude n/2 at j = +-1.

#include <complex>
#include <functional>
#include <memory>

#include <Eigen/Dense>

namespace dhs {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

class Grid {
public:
  Grid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }

  /// Wavenumbers 2 pi j / L in FFT order.
  const RealVector& wavenumbers() const { return data_->xi; }
  /// Sample positions i L / n.
  const RealVector& positions() const { return data_->x; }

  /// Signed mode j of FFT slot i.
  int mode(int index) const { return index <= n_ / 2 ? index : index - n_; }
  /// FFT slot of signed mode j, |j| <= n/2.
  int index(int mode) const { return mode >= 0 ? mode : mode + n_; }

  /// Largest retained |j| under the 2/3 rule.
  int dealias_cutoff() const { return n_ / 3; }
  double max_wavenumber() const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

private:
  struct Data {
    RealVector xi;
    RealVector x;
  };
  int n_;
  double length_;
  std::shared_ptr<const Data> data_;
};

/// Real periodic field: samples and their (Hermitian) Fourier coefficients.
class SpectralField {
public:
  static SpectralField zero(const Grid& grid);
  static SpectralField from_samples(const Grid& grid, RealVector samples);
  /// Coefficients are symmetrized before use so the field is exactly real.
  static SpectralField from_coeffs(const Grid& grid, ComplexVector coeffs);

  const Grid& grid() const { return grid_; }
  const RealVector& samples() const { return samples_; }
  const ComplexVector& coeffs() const { return coeffs_; }

  /// Coefficient of signed mode j.
  Complex coeff(int mode) const { return coeffs_[grid_.index(mode)]; }
  double mean() const { return coeffs_[0].real() / grid_.n(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

private:
  SpectralField(Grid grid, RealVector samples, ComplexVector coeffs)
      : grid_(std::move(grid)), samples_(std::move(samples)), coeffs_(std::move(coeffs)) {}

  Grid grid_;
  RealVector samples_;
  ComplexVector coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double scale, SpectralField f);
SpectralField operator-(SpectralField f);

void require_same_grid(const SpectralField& a, const SpectralField& b);

namespace fft {
ComplexVector forward(const RealVector& samples);
RealVector inverse(const ComplexVector& coeffs);
/// Enforce c(-j) = conj(c(j)), real zero and Nyquist modes.
void symmetrize(ComplexVector& coeffs);
}  // namespace fft

SpectralField make_field(const Grid& grid, const std::function<double(double)>& sampler);

/// Applies a real, even-or-odd Fourier multiplier m(xi) coefficient-wise.
template <class Symbol>
SpectralField apply_symbol(const SpectralField& f, Symbol&& symbol) {
  const RealVector& xi = f.grid().wavenumbers();
  ComplexVector c = f.coeffs();
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= symbol(xi[i]);
  return SpectralField::from_coeffs(f.grid(), std::move(c));
}

/// Multiplier (i xi)^order; the Nyquist mode is dropped for odd orders.
SpectralField derivative(const SpectralField& f, int order);

struct Primitive {
  SpectralField field;
  double mean;
};

/// Returns the mean-zero periodic primitive of f - mean(f), and mean(f).
Primitive antiderivative_meanzero(const SpectralField& f);

/// Zero every |j| > n/3.
SpectralField dealias(const SpectralField& f);

/// Pointwise product, dealiased.
SpectralField product(const SpectralField& f, const SpectralField& g);

/// Integral over the torus of f * g (Parseval on the trigonometric interpolants).
double inner(const SpectralField& f, const SpectralField& g);

struct Norm {
  enum class Kind { linf, l2, hdot };
  Kind kind;
  double sigma = 0.0;

  static Norm linf() { return {Kind::linf}; }
  static Norm l2() { return {Kind::l2}; }
  static Norm hdot(double sigma) { return {Kind::hdot, sigma}; }
};

/// Linf is max |samples|; L2 and homogeneous Sobolev norms use Parseval
/// (Hdot excludes the zero mode).  sigma must lie in [0, 3].
double norm(const SpectralField& f, Norm kind);

inline double linf(const SpectralField& f) { return norm(f, Norm::linf()); }
inline double l2(const SpectralField& f) { return norm(f, Norm::l2()); }
inline double hdot(const SpectralField& f, double sigma) { return norm(f, Norm::hdot(sigma)); }

}  // namespace dhs
