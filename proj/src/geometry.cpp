#include "harvest/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "harvest/errors.hpp"

namespace harvest {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// acosh(1 + u) without the cancellation of acosh(x) near x = 1.
double acosh1p(double u) { return std::log1p(u + std::sqrt(u * (u + 2.0))); }

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double zeta_of(Boundary bc) { return static_cast<double>(static_cast<int>(bc)); }

Boundary boundary_from_zeta(int zeta) {
  switch (zeta) {
    case -1:
      return Boundary::Neumann;
    case 0:
      return Boundary::Transparent;
    case 1:
      return Boundary::Dirichlet;
  }
  throw DomainError("boundary condition zeta must be -1, 0 or 1, got " + std::to_string(zeta));
}

SpacetimeParams::SpacetimeParams(double ads_length, double mass, Boundary bc)
    : ads_length_(ads_length), mass_(mass), bc_(bc) {
  if (!(ads_length > 0.0) || !std::isfinite(ads_length)) {
    throw DomainError("AdS length must be positive and finite");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw DomainError("black hole mass must be positive and finite");
  }
}

SpacetimeParams SpacetimeParams::from_horizon_radius(double ads_length, double horizon_radius,
                                                     Boundary bc) {
  const double ratio = horizon_radius / ads_length;
  return SpacetimeParams(ads_length, ratio * ratio, bc);
}

double SpacetimeParams::horizon_radius() const { return ads_length_ * std::sqrt(mass_); }

double SpacetimeParams::hawking_temperature() const {
  return horizon_radius() / (kTwoPi * ads_length_ * ads_length_);
}

double horizon_radius(const SpacetimeParams& params) { return params.horizon_radius(); }

Radius Radius::absolute(double r, double horizon) { return Radius(horizon, r - horizon); }

Radius Radius::from_offset(double offset, double horizon) { return Radius(horizon, offset); }

StaticPoint point_at_distance(double d, const SpacetimeParams& params) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw DomainError("horizon distance must be finite and non-negative");
  }
  const double l = params.ads_length();
  const double rh = params.horizon_radius();
  const double x = d / l;
  const double half = std::sinh(0.5 * x);
  StaticPoint p{};
  p.horizon_distance = d;
  p.sinh_d = std::sinh(x);
  p.cosh_d = std::cosh(x);
  p.radius = rh * p.cosh_d;
  p.radius_offset = 2.0 * rh * half * half;
  p.redshift = rh / l * p.sinh_d;
  return p;
}

namespace {

double distance_from_radius(const Radius& r, const SpacetimeParams& params) {
  const double rh = params.horizon_radius();
  if (!close_rel(r.horizon(), rh, 1e-12)) {
    throw DomainError("radius was measured against a different horizon radius");
  }
  if (!(r.offset() >= 0.0)) {
    throw DomainError("radius lies inside the horizon");
  }
  return params.ads_length() * acosh1p(r.offset() / rh);
}

double distance_from_thermal(const ThermalPair& tp, const SpacetimeParams& params) {
  if (!(tp.temperature > 0.0) || !(tp.redshift > 0.0)) {
    throw DomainError("thermal placement needs T > 0 and gamma > 0");
  }
  const double th = params.hawking_temperature();
  if (!close_rel(tp.temperature * tp.redshift, th, 1e-10)) {
    throw DomainError("T * gamma must equal the Hawking temperature of the spacetime");
  }
  const double l = params.ads_length();
  return l * std::asinh(tp.redshift * l / params.horizon_radius());
}

}  // namespace

double to_horizon_distance(const Placement& placement, const SpacetimeParams& params) {
  if (const auto* r = std::get_if<Radius>(&placement)) return distance_from_radius(*r, params);
  if (const auto* d = std::get_if<HorizonDistance>(&placement)) {
    if (!(d->value >= 0.0)) throw DomainError("horizon distance must be non-negative");
    return d->value;
  }
  return distance_from_thermal(std::get<ThermalPair>(placement), params);
}

StaticPoint resolve(const Placement& placement, const SpacetimeParams& params) {
  return point_at_distance(to_horizon_distance(placement, params), params);
}

Radius to_radius(const Placement& placement, const SpacetimeParams& params) {
  if (const auto* r = std::get_if<Radius>(&placement)) {
    distance_from_radius(*r, params);  // validates
    return *r;
  }
  const StaticPoint p = resolve(placement, params);
  return Radius::from_offset(p.radius_offset, params.horizon_radius());
}

ThermalPair to_thermal(const Placement& placement, const SpacetimeParams& params) {
  if (const auto* tp = std::get_if<ThermalPair>(&placement)) {
    distance_from_thermal(*tp, params);
    return *tp;
  }
  const double gamma = redshift_factor(placement, params);
  if (gamma == 0.0) throw DivergenceError("local temperature diverges on the horizon");
  return ThermalPair{params.hawking_temperature() / gamma, gamma};
}

double proper_distance(double r1, double r2, const SpacetimeParams& params) {
  const double rh = params.horizon_radius();
  return proper_distance(Radius::absolute(r1, rh), Radius::absolute(r2, rh), params);
}

double proper_distance(const Radius& r1, const Radius& r2, const SpacetimeParams& params) {
  if (r1.offset() < 0.0) throw DomainError("proper_distance: r1 lies inside the horizon");
  if (r2.value() < r1.value()) throw DomainError("proper_distance: requires r2 >= r1");
  const double rh = params.horizon_radius();
  const double s1 = std::sqrt(r1.offset() * (r1.offset() + 2.0 * rh));
  const double s2 = std::sqrt(r2.offset() * (r2.offset() + 2.0 * rh));
  return params.ads_length() * std::log((r2.value() + s2) / (r1.value() + s1));
}

double redshift_from_radius(const Radius& r, const SpacetimeParams& params) {
  if (r.offset() < 0.0) throw DomainError("redshift factor undefined below the horizon");
  const double rh = params.horizon_radius();
  return std::sqrt(r.offset() * (r.offset() + 2.0 * rh)) / params.ads_length();
}

double redshift_from_distance(double d, const SpacetimeParams& params) {
  if (!(d >= 0.0)) throw DomainError("redshift factor undefined below the horizon");
  return params.horizon_radius() / params.ads_length() * std::sinh(d / params.ads_length());
}

double redshift_factor(const Placement& placement, const SpacetimeParams& params) {
  if (const auto* r = std::get_if<Radius>(&placement)) return redshift_from_radius(*r, params);
  if (const auto* tp = std::get_if<ThermalPair>(&placement)) {
    distance_from_thermal(*tp, params);
    return tp->redshift;
  }
  return redshift_from_distance(std::get<HorizonDistance>(placement).value, params);
}

double local_temperature(const Placement& placement, const SpacetimeParams& params) {
  return to_thermal(placement, params).temperature;
}

ThermalPlacement placement_from_thermal(double temperature, double redshift, double ads_length) {
  if (!(temperature > 0.0) || !(redshift > 0.0) || !(ads_length > 0.0)) {
    throw DomainError("placement_from_thermal needs T > 0, gamma > 0, l > 0");
  }
  const double scaled = kTwoPi * ads_length * temperature;
  return ThermalPlacement{scaled * ads_length * redshift, ads_length * std::asinh(1.0 / scaled)};
}

}  // namespace harvest
