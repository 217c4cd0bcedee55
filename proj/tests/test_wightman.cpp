#include <doctest.h>

#include <cmath>

#include "harvest/wightman.hpp"

using namespace harvest;

TEST_CASE("sigma rearrangement matches the defining expression") {
  const SpacetimeParams p(10, 0.3);
  const double rh = p.horizon_radius(), l = p.ads_length();
  for (double da : {0.5, 4.0}) {
    for (int n : {0, 1, -2}) {
      const StaticPoint a = point_at_distance(da, p), b = point_at_distance(da + 2.5, p);
      const WightmanPoint x{0.7, a, 0.2}, y{-1.1, b, 0.0};
      const double eps = 1e-3;
      const std::complex<double> arg(rh / (l * l) * (x.t - y.t), -eps);
      const std::complex<double> raw =
          a.radius * b.radius / (rh * rh) * std::cosh(rh / l * (x.phi - y.phi - 2 * M_PI * n)) - 1.0 -
          std::sqrt((a.radius * a.radius - rh * rh) * (b.radius * b.radius - rh * rh)) / (rh * rh) * std::cosh(arg);
      const auto s = sigma_epsilon(x, y, n, eps, p);
      CHECK(std::abs(s - raw) < 1e-11 * std::abs(raw));
    }
  }
}

TEST_CASE("coincident points give an exact zero") {
  const SpacetimeParams p(10, 0.01);
  const StaticPoint a = point_at_distance(1e-4, p);
  const WightmanPoint x{0.0, a, 0.0};
  CHECK(sigma_epsilon(x, x, 0, 0.0, p) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("alpha^+ image is two units above alpha^-") {
  const SpacetimeParams p(10, 0.01);
  const StaticPoint a = point_at_distance(7, p), b = point_at_distance(14, p);
  const PairGeometry g = pair_geometry(a, b, p);
  for (int n : {0, 1, 5}) {
    const ImageTerm t = alpha_pm(n, g);
    CHECK(t.cosh_plus_m1 - t.cosh_minus_m1 == doctest::Approx(2.0 / (a.sinh_d * b.sinh_d)).epsilon(1e-12));
    CHECK(std::cosh(t.alpha_minus) - 1 == doctest::Approx(t.cosh_minus_m1).epsilon(1e-10));
  }
  // n and -n images coincide for aligned detectors
  CHECK(alpha_pm(3, g).cosh_minus_m1 == doctest::Approx(alpha_pm(-3, g).cosh_minus_m1).epsilon(1e-14));
}

TEST_CASE("image magnitudes decay and the tail is summable") {
  const SpacetimeParams p(10, 0.01);
  const StaticPoint a = point_at_distance(7, p), b = point_at_distance(14, p);
  const PairGeometry g = pair_geometry(a, b, p);
  double prev = image_term_magnitude(0, g);
  for (int n = 1; n < 30; ++n) {
    const double m = image_term_magnitude(n, g);
    CHECK(m < prev);
    prev = m;
  }
  CHECK(magnitude_tail(10, g) < magnitude_tail(5, g));
  CHECK(magnitude_tail(5, g) > image_term_magnitude(6, g));
}

TEST_CASE("far images are numerically at infinity") {
  const SpacetimeParams p(10, 100.0);  // r_h / l = 10
  const StaticPoint a = point_at_distance(1, p), b = point_at_distance(8, p);
  const ImageTerm t = alpha_pm(20, pair_geometry(a, b, p));
  CHECK(std::isinf(t.cosh_minus_m1));
  CHECK(image_term_magnitude(t) == 0.0);
}
