#include "pslab/vaaler.hpp"

#include "pslab/exactmath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pslab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double vaaler_phi(double u) {
  const double au = std::abs(u);
  if (!(au > 0.0 && au < 1.0)) throw std::domain_error("vaaler_phi: need 0 < |u| < 1");
  const double piu = std::numbers::pi * au;
  return piu * (1.0 - au) / std::tan(piu) + au;
}

VaalerApprox::VaalerApprox(std::uint32_t H) : H_(H) {
  if (H < 1) throw std::invalid_argument("VaalerApprox: H must be >= 1");
  const double scale = static_cast<double>(H) + 1.0;
  coeff_.resize(H);
  fejer_.resize(H + 1);
  for (std::uint32_t h = 1; h <= H; ++h) {
    // a(h) = -phi / (2 pi i h) = i phi / (2 pi h)
    coeff_[h - 1] = vaaler_phi(h / scale) / (kTwoPi * h);
  }
  for (std::uint32_t h = 0; h <= H; ++h) fejer_[h] = (1.0 - h / scale) / (2.0 * scale);
}

std::complex<double> VaalerApprox::a(std::int64_t h) const {
  if (h == 0 || h > static_cast<std::int64_t>(H_) || h < -static_cast<std::int64_t>(H_))
    throw std::out_of_range("VaalerApprox::a: h outside [-H, -1] u [1, H]");
  const double v = coeff_[static_cast<std::size_t>(std::abs(h)) - 1];
  return {0.0, h > 0 ? v : -v};
}

double VaalerApprox::b(std::int64_t h) const {
  if (h > static_cast<std::int64_t>(H_) || h < -static_cast<std::int64_t>(H_))
    throw std::out_of_range("VaalerApprox::b: h outside [-H, H]");
  return fejer_[static_cast<std::size_t>(std::abs(h))];
}

std::complex<double> VaalerApprox::approx_complex(double t) const {
  std::complex<double> sum = 0.0;
  for (std::uint32_t h = 1; h <= H_; ++h) {
    const double theta = kTwoPi * h * t;
    const std::complex<double> eh = std::polar(1.0, theta);
    sum += a(h) * eh + a(-static_cast<std::int64_t>(h)) * std::conj(eh);
  }
  return sum;
}

double VaalerApprox::approx_psi(double t) const {
  // Paired terms: i v (e(ht) - e(-ht)) = -2 v sin(2 pi h t).
  const double frac = t - std::floor(t);
  double sum = 0.0;
  for (std::uint32_t h = H_; h >= 1; --h) sum -= 2.0 * coeff_[h - 1] * std::sin(kTwoPi * h * frac);
  return sum;
}

double VaalerApprox::majorant(double t) const {
  const double frac = t - std::floor(t);
  double sum = 0.0;
  for (std::uint32_t h = H_; h >= 1; --h) sum += 2.0 * fejer_[h] * std::cos(kTwoPi * h * frac);
  return sum + fejer_[0];
}

VaalerApprox build_vaaler(std::uint32_t H) { return VaalerApprox(H); }
double approx_psi(const VaalerApprox& v, double t) { return v.approx_psi(t); }
double majorant(const VaalerApprox& v, double t) { return v.majorant(t); }

ScanStats max_error_scan(const VaalerApprox& v, std::uint64_t grid_size) {
  if (grid_size < 10) throw std::invalid_argument("max_error_scan: grid_size must be >= 10");
  const double offset = std::numbers::sqrt2 - 1.0;
  ScanStats stats{.H = v.H(), .grid_size = grid_size};
  stats.max_violation = -INFINITY;
  stats.min_majorant = INFINITY;
  double total = 0.0;
  for (std::uint64_t k = 0; k < grid_size; ++k) {
    const double t = (static_cast<double>(k) + offset) / static_cast<double>(grid_size);
    const double err = std::abs(frac_part_psi(t) - v.approx_psi(t));
    const double maj = v.majorant(t);
    stats.max_error = std::max(stats.max_error, err);
    stats.max_violation = std::max(stats.max_violation, err - maj);
    stats.min_majorant = std::min(stats.min_majorant, maj);
    if (k % 97 == 0) stats.max_imag = std::max(stats.max_imag, std::abs(v.approx_complex(t).imag()));
    total += err;
  }
  stats.mean_error = total / static_cast<double>(grid_size);
  return stats;
}

}  // namespace pslab
