#include <doctest.h>

#include <cmath>
#include <vector>

#include "harvest/correlations.hpp"
#include "harvest/errors.hpp"

using namespace harvest;

TEST_CASE("mutual information closed cases") {
  const double l = 0.37;
  // maximally correlated: L_+ = 2L, L_- = 0
  CHECK(mutual_information(l, l, l) == doctest::Approx(2 * l * std::log(2.0)).epsilon(1e-14));
  CHECK(mutual_information(0.2, 0.5, 0.0) == 0.0);
  CHECK(mutual_information(0.0, 0.5, 0.0) == 0.0);
}

TEST_CASE("mutual information agrees with the textbook formula") {
  for (auto [a, b, c] : {std::tuple{0.3, 0.2, 0.1}, std::tuple{1e-3, 0.4, 1e-4}, std::tuple{0.15, 0.15, 0.07}}) {
    const double s = std::sqrt((a - b) * (a - b) + 4 * c * c);
    const double lp = (a + b + s) / 2, lm = (a + b - s) / 2;
    const double naive = lp * std::log(lp) + lm * std::log(lm) - a * std::log(a) - b * std::log(b);
    CHECK(mutual_information(a, b, c) == doctest::Approx(naive).epsilon(1e-10));
    CHECK(mutual_information(a, b, c) >= 0);
  }
}

TEST_CASE("small correlations keep their digits") {
  // I ~ c^2/(a - b) ln(a/b) + ... for c << a, b; the naive form loses everything here
  const double a = 0.3, b = 0.2, c = 1e-9;
  const double approx = c * c * std::log(a / b) / (a - b);
  CHECK(mutual_information(a, b, c) == doctest::Approx(approx).epsilon(1e-6));
}

TEST_CASE("eigenvalues of the reduced block") {
  const Eigenvalues e = l_pm(0.3, 0.2, 0.1);
  CHECK(e.plus + e.minus == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.plus * e.minus == doctest::Approx(0.3 * 0.2 - 0.01).epsilon(1e-14));
}

TEST_CASE("Cauchy-Schwarz violations beyond the slack are reported") {
  CHECK_THROWS_AS(mutual_information(0.1, 0.1, 0.2), ConsistencyError);
  CHECK(mutual_information(0.1, 0.1, 0.1 + 1e-12, 1e-10) >= 0);
}

TEST_CASE("weak anti-Hawking detection on sampled curves") {
  std::vector<double> t = {0.1, 0.2, 0.4, 0.8, 1.6, 3.2};
  std::vector<double> rising = {1, 2, 3, 4, 5, 6};
  std::vector<double> dip = {1, 2, 3, 2.5, 4, 6};
  std::vector<double> err(6, 1e-3);
  CHECK_FALSE(anti_hawking_weak(t, rising, err).detected);
  const AntiHawkingResult r = anti_hawking_weak(t, dip, err);
  CHECK(r.detected);
  REQUIRE_FALSE(r.intervals.empty());
  CHECK(r.intervals.front().lo >= 0.2);
  CHECK(r.derivative.size() == 4);
  // large error bars hide the dip
  std::vector<double> big(6, 10.0);
  CHECK_FALSE(anti_hawking_weak(t, dip, big).detected);
}

TEST_CASE("anti-Hawking grid errors") {
  std::vector<double> three = {1, 2, 3};
  CHECK_THROWS_AS(anti_hawking_weak(three, three, three), DomainError);
  std::vector<double> t = {1, 3, 2, 4}, f = {1, 2, 3, 4};
  CHECK_THROWS_AS(anti_hawking_strong(t, f, f), DomainError);
  std::vector<double> shorter = {1, 2, 3};
  std::vector<double> ok = {1, 2, 3, 4};
  CHECK_THROWS_AS(anti_hawking_weak(ok, ok, shorter), DomainError);
}

TEST_CASE("EDR temperature of a thermal ratio") {
  const double gap = 1.3, t = 0.7;
  CHECK(edr_temperature(std::exp(-gap / t), 1.0, gap) == doctest::Approx(t).epsilon(1e-14));
}
