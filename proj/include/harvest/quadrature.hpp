#pragma once

// Branch-point integrals of the form
//
//   J(a, beta, X) = int_0^inf dx e^{-a x^2 - i beta x} / sqrt(X - cosh(x - i0)),
//
// evaluated on a deformed contour in the lower half plane, plus the real-line
// Fermi-Dirac convolution of the transition probability.

#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "harvest/wightman.hpp"

namespace harvest {

struct ContourSpec {
  double eta = -std::numbers::pi / 2;  // height of the final horizontal leg, in (-pi, 0)
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;  // bound on |value| error
  int evaluations = 0;
  int subdivisions = 0;
  double real_error = 0.0;  // for Re(value) alone; the imaginary-axis leg does not enter
};

/// J for a single branch with cosh(alpha) - 1 = cosh_alpha_m1. beta may have either
/// sign; beta < 0 picks up the discontinuity across the cut [alpha, inf).
QuadratureResult branch_integral(double a, double beta, double cosh_alpha_m1, const ContourSpec& spec);

struct BranchIntegrand {
  double a;
  double beta;
  ImageTerm term;
  double zeta;
};

/// J(alpha^-) - zeta J(alpha^+): the full complex value, caller takes Re.
QuadratureResult contour_integral(const BranchIntegrand& f, const ContourSpec& spec);

/// (1/2) int dx e^{-(x - gap)^2} / (e^{x/T} + 1), in units of the switching width.
double fermi_dirac_response(double gap, double temperature, double rel_tol = 1e-13);

/// One image term split into its alpha^- and alpha^+ parts (real parts only).
struct ImagePart {
  int n = 0;
  double minus = 0.0;
  double plus = 0.0;
  double error_minus = 0.0;
  double error_plus = 0.0;
  int evaluations = 0;
};

struct ImageSum {
  std::vector<ImagePart> terms;  // n = 0, 1, 2, ... ; n >= 1 already counts n and -n
  double minus = 0.0;
  double plus = 0.0;
  double quadrature_error = 0.0;  // for the combination minus - zeta plus, |zeta| <= 1
  double tail = 0.0;              // estimated magnitude of the omitted |n| > N terms
  int evaluations = 0;
  bool truncated = false;         // stopped at n_max before meeting tail_tol

  double combined(double zeta) const { return minus - zeta * plus; }
};

/// Sums image terms n = 0, 1, ... (folding -n onto n) until the estimated tail drops
/// below tail_tol times the accumulated magnitude. `term(n, abs_tol)` returns the
/// unfolded part for image n to absolute accuracy abs_tol (0: relative only);
/// `magnitude(n)` is the zeta-independent truncation proxy.
ImageSum integrate_image_sum(const std::function<ImagePart(int, double)>& term,
                             const std::function<double(int)>& magnitude,
                             const std::function<double(int)>& magnitude_tail,
                             const TruncationPolicy& policy, double extra_scale = 0.0);

}  // namespace harvest
