#pragma once

// Static-observer kinematics outside a nonrotating BTZ black hole.
//
// Lengths are in units of the switching width sigma. A detector position can be
// given as an areal radius, as a proper distance from the horizon, or as a
// (local temperature, redshift) pair. Internally everything is resolved through
// the horizon distance d, because r - r_h is not representable in a double when
// d/l is small while d itself always is.

#include <variant>

namespace harvest {

enum class Boundary : int { Neumann = -1, Transparent = 0, Dirichlet = 1 };

double zeta_of(Boundary bc);
Boundary boundary_from_zeta(int zeta);

class SpacetimeParams {
 public:
  SpacetimeParams(double ads_length, double mass, Boundary bc = Boundary::Dirichlet);

  static SpacetimeParams from_horizon_radius(double ads_length, double horizon_radius,
                                             Boundary bc = Boundary::Dirichlet);

  double ads_length() const { return ads_length_; }
  double mass() const { return mass_; }
  Boundary boundary() const { return bc_; }
  double zeta() const { return zeta_of(bc_); }

  double horizon_radius() const;
  double hawking_temperature() const;

 private:
  double ads_length_;
  double mass_;
  Boundary bc_;
};

double horizon_radius(const SpacetimeParams& params);

/// Areal radius, stored as its offset above the horizon it was measured against.
class Radius {
 public:
  static Radius absolute(double r, double horizon);
  static Radius from_offset(double offset, double horizon);

  double value() const { return horizon_ + offset_; }
  double offset() const { return offset_; }
  double horizon() const { return horizon_; }

 private:
  Radius(double horizon, double offset) : horizon_(horizon), offset_(offset) {}
  double horizon_;
  double offset_;
};

struct HorizonDistance {
  double value;
};

struct ThermalPair {
  double temperature;
  double redshift;
};

using Placement = std::variant<Radius, HorizonDistance, ThermalPair>;

/// A placement resolved against a spacetime. Hyperbolic functions are of d/l.
struct StaticPoint {
  double horizon_distance;
  double radius;
  double radius_offset;  // r - r_h
  double redshift;       // gamma
  double sinh_d;
  double cosh_d;
};

StaticPoint resolve(const Placement& placement, const SpacetimeParams& params);
StaticPoint point_at_distance(double d, const SpacetimeParams& params);

/// l ln[(r2 + sqrt(r2^2 - r_h^2)) / (r1 + sqrt(r1^2 - r_h^2))]; requires r_h <= r1 <= r2.
double proper_distance(double r1, double r2, const SpacetimeParams& params);
double proper_distance(const Radius& r1, const Radius& r2, const SpacetimeParams& params);

double redshift_factor(const Placement& placement, const SpacetimeParams& params);

/// sqrt(r^2 - r_h^2)/l evaluated from the radius (as opposed to (r_h/l) sinh(d/l)).
double redshift_from_radius(const Radius& r, const SpacetimeParams& params);
double redshift_from_distance(double d, const SpacetimeParams& params);

/// T_H / gamma. Throws DivergenceError on the horizon.
double local_temperature(const Placement& placement, const SpacetimeParams& params);

struct ThermalPlacement {
  double horizon_radius;
  double horizon_distance;
};

/// Horizon radius and horizon distance realising a given (T, gamma) at AdS length l.
ThermalPlacement placement_from_thermal(double temperature, double redshift, double ads_length);

Radius to_radius(const Placement& placement, const SpacetimeParams& params);
double to_horizon_distance(const Placement& placement, const SpacetimeParams& params);
ThermalPair to_thermal(const Placement& placement, const SpacetimeParams& params);

}  // namespace harvest
