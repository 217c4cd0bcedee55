#include "harvest/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harvest/errors.hpp"

namespace harvest {
namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

ImagePart image_part(int n, const PairGeometry& geom, const ReducedCoefficients& c, ContourSpec spec,
                     double abs_tol, bool skip_minus) {
  const ImageTerm t = alpha_pm(n, geom);
  spec.abs_tol = std::max(spec.abs_tol, abs_tol);
  ImagePart part;
  part.n = n;
  if (!skip_minus) {
    const QuadratureResult m = branch_integral(c.a, c.beta, t.cosh_minus_m1, spec);
    part.minus = m.value.real();
    part.error_minus = m.real_error;
    part.evaluations += m.evaluations;
  }
  const QuadratureResult p = branch_integral(c.a, c.beta, t.cosh_plus_m1, spec);
  part.plus = p.value.real();
  part.error_plus = p.real_error;
  part.evaluations += p.evaluations;
  return part;
}

Element assemble(const ImageSum& sum, double prefactor, double zeta, double offset) {
  Element e;
  e.prefactor = prefactor;
  e.images = sum.terms;
  e.n_terms = static_cast<int>(sum.terms.size());
  e.truncated = sum.truncated;
  const ImagePart& zero = sum.terms.front();
  e.rindler = offset + prefactor * (zero.minus - zeta * zero.plus);
  double rest_minus = 0.0, rest_plus = 0.0;
  for (std::size_t i = 1; i < sum.terms.size(); ++i) {
    rest_minus += sum.terms[i].minus;
    rest_plus += sum.terms[i].plus;
  }
  e.btz = prefactor * (rest_minus - zeta * rest_plus);
  e.value = offset + prefactor * sum.combined(zeta);
  e.quadrature_error = prefactor * sum.quadrature_error;
  e.tail = prefactor * sum.tail;
  return e;
}

}  // namespace

ReducedCoefficients pair_coefficients(double sa, double sb, double l, double gap) {
  const double s2 = sa * sa + sb * sb;
  const double diff = sa - sb;
  return ReducedCoefficients{
      l * l * sa * sa * sb * sb / (2.0 * s2),
      l * sa * sb * (sa + sb) * gap / s2,
      std::sqrt(sa * sb) / (4.0 * kSqrtPi * std::sqrt(s2)) * std::exp(-gap * gap * diff * diff / (2.0 * s2)),
  };
}

Element compute_L_DD(const StaticPoint& d, const SpacetimeParams& params, double gap, const Tolerances& tol) {
  if (!(d.sinh_d > 0.0)) throw DivergenceError("detector on the horizon: local temperature diverges");
  const PairGeometry geom = pair_geometry(d, d, params);
  const ReducedCoefficients c = pair_coefficients(d.sinh_d, d.sinh_d, params.ads_length(), gap);
  const double temperature = 1.0 / (2.0 * std::numbers::pi * params.ads_length() * d.sinh_d);
  const double fd = fermi_dirac_response(gap, temperature);
  const double prefactor = 2.0 * c.k;

  // The n = 0, alpha^- image is the Fermi-Dirac term.
  auto term = [&](int n, double abs_tol) { return image_part(n, geom, c, tol.contour, abs_tol, n == 0); };
  auto magnitude = [&](int n) { return image_term_magnitude(n, geom); };
  auto tail = [&](int n) { return magnitude_tail(n, geom); };
  const ImageSum sum = integrate_image_sum(term, magnitude, tail, tol.truncation, fd / prefactor);
  Element e = assemble(sum, prefactor, params.zeta(), fd);
  e.quadrature_error += 1e-13 * fd;
  return e;
}

Element compute_L_AB(const StaticPoint& a, const StaticPoint& b, const SpacetimeParams& params, double gap,
                     const Tolerances& tol) {
  const PairGeometry geom = pair_geometry(a, b, params);
  const ReducedCoefficients c = pair_coefficients(a.sinh_d, b.sinh_d, params.ads_length(), gap);
  auto term = [&](int n, double abs_tol) { return image_part(n, geom, c, tol.contour, abs_tol, false); };
  auto magnitude = [&](int n) { return image_term_magnitude(n, geom); };
  auto tail = [&](int n) { return magnitude_tail(n, geom); };
  const ImageSum sum = integrate_image_sum(term, magnitude, tail, tol.truncation);
  return assemble(sum, 2.0 * c.k, params.zeta(), 0.0);
}

MatrixElements compute_elements(const DetectorPair& pair, const Tolerances& tol) {
  const StaticPoint a = resolve(pair.placement_a, pair.spacetime);
  const StaticPoint b = resolve(pair.placement_b, pair.spacetime);
  if (!(a.horizon_distance > 0.0)) throw DivergenceError("detector A sits on the horizon");
  if (!(b.horizon_distance > a.horizon_distance)) {
    throw DomainError("detector B must be farther from the horizon than detector A");
  }
  return MatrixElements{compute_L_DD(a, pair.spacetime, pair.gap, tol),
                        compute_L_DD(b, pair.spacetime, pair.gap, tol),
                        compute_L_AB(a, b, pair.spacetime, pair.gap, tol)};
}

}  // namespace harvest
