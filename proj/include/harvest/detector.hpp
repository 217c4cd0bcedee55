#pragma once

// Density-matrix elements L_AA, L_BB, L_AB for two static detectors with Gaussian
// switching of unit width, centred at coordinate time t = 0 and aligned (dphi = 0).
// Results are in units of the dimensionless coupling squared (lambda^2 sigma).

#include <vector>

#include "harvest/geometry.hpp"
#include "harvest/quadrature.hpp"
#include "harvest/wightman.hpp"

namespace harvest {

struct Tolerances {
  ContourSpec contour;
  TruncationPolicy truncation;
};

struct Element {
  double value = 0.0;
  double rindler = 0.0;  // n = 0 image (AdS-Rindler part)
  double btz = 0.0;      // n != 0 images
  double quadrature_error = 0.0;
  double tail = 0.0;     // estimate of the images beyond the last one summed
  int n_terms = 0;       // images summed, counting n and -n once (n = 0..N gives N + 1)
  bool truncated = false;
  double prefactor = 0.0;        // 2K; per-image contributions are prefactor * (minus - zeta plus)
  std::vector<ImagePart> images;  // folded real parts of each image

  double error() const { return quadrature_error + tail; }
};

struct DetectorPair {
  SpacetimeParams spacetime;
  Placement placement_a;
  Placement placement_b;
  double gap;
};

/// Gaussian coefficient a, phase coefficient beta and prefactor K for detectors at
/// sinh(d_A/l) = sa and sinh(d_B/l) = sb. None of them depends on r_h.
struct ReducedCoefficients {
  double a;
  double beta;
  double k;
};
ReducedCoefficients pair_coefficients(double sa, double sb, double ads_length, double gap);

/// Transition probability of one detector: Fermi-Dirac term plus branch integrals.
Element compute_L_DD(const StaticPoint& d, const SpacetimeParams& params, double gap,
                     const Tolerances& tol = {});

/// Correlation term; real because both switchings are centred at t = 0.
Element compute_L_AB(const StaticPoint& a, const StaticPoint& b, const SpacetimeParams& params,
                     double gap, const Tolerances& tol = {});

struct MatrixElements {
  Element aa;
  Element bb;
  Element ab;
};

/// Requires r_B > r_A > r_h.
MatrixElements compute_elements(const DetectorPair& pair, const Tolerances& tol = {});

}  // namespace harvest
