#include "pslab/exactmath.hpp"
#include "pslab/vaaler.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pslab;

TEST_CASE("phi") {
  // phi(u) -> 1 as u -> 0, phi(1/2) = 1/2
  CHECK(vaaler_phi(1e-9) == doctest::Approx(1.0));
  CHECK(vaaler_phi(0.5) == doctest::Approx(0.5));
  CHECK(vaaler_phi(-0.5) == doctest::Approx(0.5));
  for (double u = 0.01; u < 1.0; u += 0.01) {
    REQUIRE(vaaler_phi(u) >= 0.0);
    REQUIRE(vaaler_phi(u) <= 1.0 + 1e-15);
  }
}

TEST_CASE("coefficient bounds") {
  for (std::uint32_t H : {1u, 8u, 64u, 256u}) {
    const VaalerApprox v = build_vaaler(H);
    for (std::int64_t h = 1; h <= H; ++h) {
      REQUIRE(std::abs(v.a(h)) * h <= 1.0 / (2 * std::numbers::pi) + 1e-15);
      REQUIRE(v.a(-h) == std::conj(v.a(h)));
    }
    for (std::int64_t h = -static_cast<std::int64_t>(H); h <= static_cast<std::int64_t>(H); ++h) {
      REQUIRE(v.b(h) * H <= 2.0);
      REQUIRE(v.b(h) >= 0.0);
    }
    CHECK(v.b(0) == doctest::Approx(1.0 / (2 * H + 2)));
    CHECK_THROWS_AS(v.a(0), std::out_of_range);
    CHECK_THROWS_AS(v.a(H + 1), std::out_of_range);
  }
}

TEST_CASE("pointwise inequality at random points") {
  const VaalerApprox v = build_vaaler(16);
  for (int k = 1; k < 5000; ++k) {
    const double t = std::fmod(k * std::numbers::sqrt2, 1.0) + (k % 7) - 3;
    const double err = std::abs(frac_part_psi(t) - v.approx_psi(t));
    REQUIRE(err <= v.majorant(t) + 1e-12);
    REQUIRE(std::abs(v.approx_complex(t).imag()) < 1e-12);
  }
}

TEST_CASE("scan statistics") {
  const ScanStats s8 = max_error_scan(build_vaaler(8), 10000);
  const ScanStats s16 = max_error_scan(build_vaaler(16), 10000);
  CHECK(s8.max_violation <= 1e-12);
  CHECK(s16.max_violation <= 1e-12);
  CHECK(s8.min_majorant >= -1e-12);
  const double halving = s16.mean_error / s8.mean_error;
  CHECK(halving > 0.4);
  CHECK(halving < 0.6);
  CHECK_THROWS_AS(max_error_scan(build_vaaler(8), 5), std::invalid_argument);
  CHECK_THROWS_AS(build_vaaler(0), std::invalid_argument);
}
