#include <doctest.h>

#include <cmath>
#include <random>

#include "harvest/errors.hpp"
#include "harvest/geometry.hpp"

using namespace harvest;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("horizon radius and Hawking temperature") {
  const SpacetimeParams p(10, 0.01);
  CHECK(p.horizon_radius() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.hawking_temperature() == doctest::Approx(1.0 / (2 * M_PI * 100)).epsilon(1e-14));
  const auto q = SpacetimeParams::from_horizon_radius(10, 3.0);
  CHECK(rel(q.horizon_radius(), 3.0) < 1e-15);
}

TEST_CASE("invalid spacetimes and placements") {
  CHECK_THROWS_AS(SpacetimeParams(-1, 0.01), DomainError);
  CHECK_THROWS_AS(SpacetimeParams(10, 0), DomainError);
  CHECK_THROWS_AS(boundary_from_zeta(2), DomainError);
  const SpacetimeParams p(10, 0.01);
  CHECK_THROWS_AS(resolve(Radius::absolute(0.5, p.horizon_radius()), p), DomainError);
  CHECK_THROWS_AS(resolve(Radius::absolute(2.0, 1.5), p), DomainError);
  CHECK_THROWS_AS(local_temperature(HorizonDistance{0.0}, p), DivergenceError);
  CHECK_THROWS_AS(proper_distance(2.0, 1.5, p), DomainError);
}

TEST_CASE("placement round trips on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lg(-3, 2);
  double worst = 0;
  for (int i = 0; i < 2000; ++i) {
    const double l = std::pow(10, lg(rng) / 2 + 1);
    const double m = std::pow(10, lg(rng));
    const double d = std::pow(10, lg(rng));
    const SpacetimeParams p(l, m);
    const Placement from_d = HorizonDistance{d};
    const Radius r = to_radius(from_d, p);
    const ThermalPair tp = to_thermal(from_d, p);
    worst = std::max(worst, rel(to_horizon_distance(r, p), d));
    worst = std::max(worst, rel(to_horizon_distance(tp, p), d));
    const ThermalPair back = to_thermal(r, p);
    worst = std::max(worst, rel(back.temperature, tp.temperature));
    worst = std::max(worst, rel(back.redshift, tp.redshift));
    // (T, gamma) -> (r_h, d) reproduces the spacetime
    const ThermalPlacement pl = placement_from_thermal(tp.temperature, tp.redshift, l);
    worst = std::max(worst, rel(pl.horizon_radius, p.horizon_radius()));
    worst = std::max(worst, rel(pl.horizon_distance, d));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("redshift from the radius agrees with the distance form") {
  const SpacetimeParams p(10, 0.01);
  for (double d : {1e-3, 0.1, 1.0, 7.0, 20.0, 80.0}) {
    const Radius r = to_radius(HorizonDistance{d}, p);
    CHECK(rel(redshift_from_radius(r, p), redshift_from_distance(d, p)) < 1e-12);
  }
}

TEST_CASE("proper distance between radii") {
  const SpacetimeParams p(10, 0.01);
  const Radius a = to_radius(HorizonDistance{3.0}, p);
  const Radius b = to_radius(HorizonDistance{10.0}, p);
  CHECK(proper_distance(a, b, p) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(proper_distance(p.horizon_radius(), b.value(), p) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("local temperature is T_H / gamma") {
  const SpacetimeParams p(10, 0.01);
  const double d = 7.0;
  const double t = local_temperature(HorizonDistance{d}, p);
  CHECK(rel(t, 1.0 / (2 * M_PI * 10 * std::sinh(d / 10))) < 1e-14);
}
