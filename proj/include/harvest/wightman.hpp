#pragma once

// Image-sum structure of the BTZ Wightman function.
//
// W_BTZ = (1/(4 pi sqrt2 l)) sum_n [sigma_n^{-1/2} - zeta (sigma_n + 2)^{-1/2}], and for
// two static detectors on the same axis each image term depends on the pair only
// through cosh(alpha^-_n) and cosh(alpha^+_n). Those are kept as cosh(alpha) - 1 so
// that near-coincident images do not lose digits.

#include <complex>

#include "harvest/geometry.hpp"

namespace harvest {

/// Two static detectors, hyperbolic functions of d/l for each.
struct PairGeometry {
  double sinh_a, cosh_a;
  double sinh_b, cosh_b;
  double separation;  // (d_B - d_A)/l, signed
  double rh_over_l;
  double delta_phi = 0.0;
};

PairGeometry pair_geometry(const StaticPoint& a, const StaticPoint& b, const SpacetimeParams& params,
                           double delta_phi = 0.0);

struct ImageTerm {
  int n;
  double alpha_minus;
  double alpha_plus;
  double cosh_minus_m1;  // cosh(alpha^-) - 1, +inf once the image is numerically at infinity
  double cosh_plus_m1;
};

ImageTerm alpha_pm(int n, const PairGeometry& pair);
ImageTerm alpha_pm(int n, const StaticPoint& a, const StaticPoint& b, const SpacetimeParams& params);

/// Truncation proxy for image n: (cosh a^- - 1)^{-1/2} + (cosh a^+ - 1)^{-1/2}.
/// Independent of zeta, ~ 2 sqrt2 e^{-alpha/2} for distant images.
double image_term_magnitude(const ImageTerm& term);
double image_term_magnitude(int n, const PairGeometry& pair);

struct TruncationPolicy {
  double tail_tol = 1e-10;
  int n_min = 2;
  int n_max = 50;
};

/// Sum of image_term_magnitude over |n| > n (one side only), by direct summation.
double magnitude_tail(int n, const PairGeometry& pair);

struct WightmanPoint {
  double t;
  StaticPoint position;
  double phi = 0.0;
};

/// sigma_eps(x, Gamma^n x'), with the -i eps shift on the (r_h/l^2) dt argument.
/// Evaluated as s s' [(cosh alpha^- - 1) - 2 sinh^2((x - i eps)/2)], which is the same
/// expression rearranged so coincident points give an exact zero.
std::complex<double> sigma_epsilon(const WightmanPoint& x, const WightmanPoint& xp, int n, double eps,
                                   const SpacetimeParams& params);

}  // namespace harvest
