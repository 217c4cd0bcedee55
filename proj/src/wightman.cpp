#include "harvest/wightman.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "harvest/errors.hpp"

namespace harvest {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double acosh1p(double u) { return std::log1p(u + std::sqrt(u * (u + 2.0))); }

double sinh_sq_half(double x) {
  const double s = std::sinh(0.5 * x);
  return s * s;
}

}  // namespace

PairGeometry pair_geometry(const StaticPoint& a, const StaticPoint& b, const SpacetimeParams& params,
                           double delta_phi) {
  if (!(a.sinh_d > 0.0) || !(b.sinh_d > 0.0)) {
    throw DomainError("image terms need both detectors strictly outside the horizon");
  }
  const double l = params.ads_length();
  return PairGeometry{a.sinh_d,
                      a.cosh_d,
                      b.sinh_d,
                      b.cosh_d,
                      (b.horizon_distance - a.horizon_distance) / l,
                      params.horizon_radius() / l,
                      delta_phi};
}

ImageTerm alpha_pm(int n, const PairGeometry& p) {
  const double c = p.rh_over_l * (p.delta_phi - kTwoPi * n);
  const double ss = p.sinh_a * p.sinh_b;
  const double cc = p.cosh_a * p.cosh_b;
  ImageTerm t{n, 0.0, 0.0, 0.0, 0.0};
  if (std::abs(c) > 600.0) {
    // cosh(c) overflows well before the term matters; only alpha is kept.
    t.alpha_minus = std::log(cc / ss) + std::abs(c);
    t.alpha_plus = t.alpha_minus;
    t.cosh_minus_m1 = kInf;
    t.cosh_plus_m1 = kInf;
    return t;
  }
  const double um = (2.0 * cc * sinh_sq_half(c) + 2.0 * sinh_sq_half(p.separation)) / ss;
  if (!(um >= 0.0)) throw DomainError("alpha^- argument below 1");
  t.cosh_minus_m1 = um;
  t.cosh_plus_m1 = um + 2.0 / ss;
  t.alpha_minus = acosh1p(t.cosh_minus_m1);
  t.alpha_plus = acosh1p(t.cosh_plus_m1);
  return t;
}

ImageTerm alpha_pm(int n, const StaticPoint& a, const StaticPoint& b, const SpacetimeParams& params) {
  return alpha_pm(n, pair_geometry(a, b, params));
}

double image_term_magnitude(const ImageTerm& t) {
  if (std::isinf(t.cosh_minus_m1)) return 0.0;
  return 1.0 / std::sqrt(t.cosh_minus_m1) + 1.0 / std::sqrt(t.cosh_plus_m1);
}

double image_term_magnitude(int n, const PairGeometry& pair) {
  return image_term_magnitude(alpha_pm(n, pair));
}

double magnitude_tail(int n, const PairGeometry& pair) {
  // Terms fall off like 1/k until 2 pi k r_h/l ~ 1, then geometrically.
  double sum = 0.0;
  for (int k = std::abs(n) + 1; k < 10'000'000; ++k) {
    const double m = image_term_magnitude(k, pair);
    sum += m;
    if (m <= 1e-17 * sum) break;
  }
  return sum;
}

std::complex<double> sigma_epsilon(const WightmanPoint& x, const WightmanPoint& xp, int n, double eps,
                                   const SpacetimeParams& params) {
  const double l = params.ads_length();
  const double rh = params.horizon_radius();
  const StaticPoint& a = x.position;
  const StaticPoint& b = xp.position;
  const double ss = a.sinh_d * b.sinh_d;
  const double c = rh / l * ((x.phi - xp.phi) - kTwoPi * n);
  const double separation = (b.horizon_distance - a.horizon_distance) / l;
  const double head = 2.0 * a.cosh_d * b.cosh_d * sinh_sq_half(c) + 2.0 * sinh_sq_half(separation);
  const std::complex<double> arg(rh / (l * l) * (x.t - xp.t), -eps);
  const std::complex<double> sh = std::sinh(0.5 * arg);
  // At d = 0 the sinh product vanishes; sigma is then just the angular part.
  return head - 2.0 * ss * sh * sh;
}

}  // namespace harvest
