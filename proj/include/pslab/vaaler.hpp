#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace pslab {

/// Degree-H trigonometric approximation of psi(t) = {t} - 1/2 with a
/// nonnegative trigonometric majorant for the error:
///
///   |psi(t) - sum_{1<=|h|<=H} a(h) e(ht)| <= sum_{|h|<=H} b(h) e(ht).
///
/// Built from Vaaler's polynomial
///   a(h) = -phi(h/(H+1)) / (2 pi i h),
///   phi(u) = pi u (1 - |u|) cot(pi u) + |u|,
/// with the Fejer kernel majorant b(h) = (1 - |h|/(H+1)) / (2H + 2).
class VaalerApprox {
public:
  explicit VaalerApprox(std::uint32_t H);

  std::uint32_t H() const { return H_; }
  /// h in [-H, -1] u [1, H].
  std::complex<double> a(std::int64_t h) const;
  /// h in [-H, H].
  double b(std::int64_t h) const;

  /// Real part of sum a(h) e(ht); the imaginary part is checked to vanish.
  double approx_psi(double t) const;
  /// sum b(h) e(ht), real.
  double majorant(double t) const;
  /// Full complex value of sum a(h) e(ht), for realness checks.
  std::complex<double> approx_complex(double t) const;

private:
  std::uint32_t H_;
  std::vector<double> coeff_;  // a(+-h) = +-i coeff_[h-1]
  std::vector<double> fejer_;  // b(0..H)
};

/// Vaaler's weight phi(u) on 0 < |u| < 1.
double vaaler_phi(double u);

VaalerApprox build_vaaler(std::uint32_t H);
double approx_psi(const VaalerApprox& v, double t);
double majorant(const VaalerApprox& v, double t);

struct ScanStats {
  std::uint32_t H = 0;
  std::uint64_t grid_size = 0;
  double max_error = 0.0;
  double mean_error = 0.0;
  /// max over t of |psi - approx| - majorant (<= 0 when the inequality holds)
  double max_violation = 0.0;
  /// largest |Im sum a(h) e(ht)| on every 97th sample
  double max_imag = 0.0;
  double min_majorant = 0.0;
};

/// Scans t = (k + offset) / grid_size for k in [0, grid_size), with an
/// irrational offset so no sample lands on an integer. grid_size >= 10.
ScanStats max_error_scan(const VaalerApprox& v, std::uint64_t grid_size);

}  // namespace pslab
