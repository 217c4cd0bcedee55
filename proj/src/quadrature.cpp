#include "harvest/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "harvest/errors.hpp"
#include "harvest/gauss_kronrod.hpp"

namespace harvest {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// Deepest apex we allow. The principal root of X - cosh z is continuous for
// -2 pi < Im z < 0, Re z > 0; the next branch points sit at +-alpha - 2 pi i.
constexpr double kDeepest = -1.75 * kPi;
// Highest point of the cut-discontinuity contour; Im z = pi carries a cut.
constexpr double kHighest = 0.75 * kPi;
// Decay (in e-folds below the apex) at which the contour turns towards eta.
constexpr double kTurnDecay = 8.0;
// Beyond this cosh(alpha) - 1 the image contributes below e^{-288}.
constexpr double kNegligibleU = 1e250;

// Consecutive nodes must not rotate by more than pi/2.
struct PhaseGuard {
  bool operator()(const std::array<double, 21>&, const std::array<cplx, 21>& v) const {
    for (int k = 0; k + 1 < 21; ++k) {
      if (v[k] == 0.0 || v[k + 1] == 0.0) continue;
      if (std::abs(std::arg(v[k + 1] / v[k])) > kPi / 2) return false;
    }
    return true;
  }
};

gk::Options options_of(const ContourSpec& s) {
  return gk::Options{s.rel_tol, s.abs_tol, s.max_subdivisions};
}

template <class R>
void require_converged(const R& r, const char* what) {
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + ": subdivision limit reached (estimated error " +
                           std::to_string(r.error) + ")");
  }
}

// Bound on int_x^inf |e^{-a t^2 + offset} / sqrt(h(t + i y))| dt, valid once
// sinh x >= 2 cosh(alpha), where |h| >= sinh(x)/2.
double tail_bound(double x, double a, double offset) {
  return std::exp(-a * x * x + offset - 0.5 * x) * 2.15 / (2.0 * a * x + 0.5);
}

// Smallest x >= x_start with tail_bound below thr; capped at 700 (cosh overflow).
double tail_end(double x_start, double a, double offset, double cosh_alpha, double thr) {
  const double x0 = std::max({x_start, std::asinh(2.0 * cosh_alpha), 1.0});
  constexpr double kCap = 700.0;
  if (x0 >= kCap) return kCap;
  if (tail_bound(x0, a, offset) <= thr) return x0;
  if (tail_bound(kCap, a, offset) > thr) return kCap;
  double lo = x0, hi = kCap;
  for (int it = 0; it < 200 && hi - lo > 1e-6 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail_bound(mid, a, offset) > thr ? lo : hi) = mid;
  }
  return hi;
}

struct Accumulator {
  cplx value{};
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;

  template <class T>
  void add(const gk::Result<T>& r, cplx weight) {
    value += weight * cplx(r.value);
    error += std::abs(weight) * r.error;
    evaluations += r.evaluations;
    subdivisions += r.subdivisions;
  }
};

// Break points for a horizontal leg [x0, x1], adding alpha when it falls inside.
std::vector<double> leg_points(double x0, double x1, double alpha) {
  std::vector<double> pts{x0};
  if (alpha > x0 && alpha < x1) pts.push_back(alpha);
  pts.push_back(x1);
  return pts;
}

// J for beta >= 0: apex on the imaginary axis at the Gaussian saddle, horizontal out,
// down (or up) to eta, then horizontal to the tail cut-off.
QuadratureResult lower_family(double a, double beta, double u, const ContourSpec& spec) {
  const double alpha = std::log1p(u + std::sqrt(u * (u + 2.0)));
  const double eta = spec.eta;
  const double saddle = -beta / (2.0 * a);
  double ys = std::min(saddle, -std::min(0.3, 1.0 / std::sqrt(a)));
  ys = std::max(ys, kDeepest);

  const double e0 = a * ys * ys + beta * ys;  // factored out of every leg
  auto integrand = [=](cplx z) {
    // X - cosh z = 2 sinh((alpha + z)/2) sinh((alpha - z)/2), exact near z = alpha.
    const cplx h = 2.0 * std::sinh(0.5 * (alpha + z)) * std::sinh(0.5 * (alpha - z));
    return std::exp(-a * z * z - kI * beta * z - e0) / std::sqrt(h);
  };

  gk::Options opt = options_of(spec);
  opt.abs_tol = spec.abs_tol * std::exp(-e0);
  Accumulator acc;

  const double apex_size = 1.0 / std::sqrt(u + 2.0 * std::pow(std::sin(0.5 * ys), 2));
  const double thr =
      std::max(1e-3 * spec.rel_tol * apex_size * std::min(1.0, 1.0 / std::sqrt(a)), 0.1 * opt.abs_tol);

  // Turn towards eta once the integrand is down ~e^{-8} from the apex (Gaussian or
  // cosh decay, whichever comes first). Staying on the steepest-descent line avoids
  // the Gaussian's oscillation; the legs at eta still carry enough weight for
  // eta-independence to be a real check. Never turn early enough that the vertical leg
  // climbs above the apex value (rise).
  const double rise = std::max(0.0, (eta - saddle) * (eta - saddle) - (ys - saddle) * (ys - saddle));
  const double end_at_ys = tail_end(0.0, a, a * ys * ys + beta * ys - e0, u + 1.0, thr);
  double xv = std::max(std::sqrt(rise), std::min(std::sqrt(rise + kTurnDecay / a), 0.5 * end_at_ys));
  xv = std::max(xv, 0.25);
  double tail = 0.0;
  const bool closing_legs = xv < end_at_ys;
  if (!closing_legs) {
    xv = end_at_ys;
    tail = tail_bound(end_at_ys, a, a * ys * ys + beta * ys - e0);
  }

  // Leg 1: i ys -> xv + i ys. Carries the bulk; the other legs only need absolute
  // accuracy relative to it.
  {
    auto g = [&](double x) { return integrand(cplx(x, ys)); };
    const auto pts = leg_points(0.0, xv, alpha);
    auto r = gk::integrate<cplx>(g, std::span<const double>(pts), opt, PhaseGuard{});
    require_converged(r, "contour leg 1");
    acc.add(r, 1.0);
  }
  gk::Options rest = opt;
  rest.abs_tol = std::max(opt.abs_tol, 0.1 * opt.rel_tol * std::abs(acc.value));
  double imag_only = 0.0;

  // Leg 0: 0 -> i ys. Real integrand; contributes only to Im.
  {
    auto g = [=](double y) {
      const double s = std::sin(0.5 * y);
      return std::exp(a * y * y + beta * y - e0) / std::sqrt(u + 2.0 * s * s);
    };
    auto r = gk::integrate<double>(g, ys, 0.0, opt);
    require_converged(r, "contour leg 0");
    imag_only = r.error;
    acc.add(r, -kI);
  }

  if (closing_legs) {
    // Leg 2: vertical to eta.
    if (ys != eta) {
      auto g = [&](double y) { return integrand(cplx(xv, y)); };
      auto r = gk::integrate<cplx>(g, std::span<const double>(std::array<double, 2>{ys, eta}), rest,
                                   PhaseGuard{});
      require_converged(r, "contour leg 2");
      acc.add(r, kI);
    }
    // Leg 3: horizontal at eta out to the tail cut-off.
    const double offset = a * eta * eta + beta * eta - e0;
    const double xe = std::max(xv, tail_end(xv, a, offset, u + 1.0, thr));
    tail = tail_bound(xe, a, offset);
    if (xe > xv) {
      auto g = [&](double x) { return integrand(cplx(x, eta)); };
      const auto pts = leg_points(xv, xe, alpha);
      auto r = gk::integrate<cplx>(g, std::span<const double>(pts), rest, PhaseGuard{});
      require_converged(r, "contour leg 3");
      acc.add(r, 1.0);
    }
  }

  const double scale = std::exp(e0);
  return QuadratureResult{acc.value * scale, (acc.error + tail) * scale, acc.evaluations, acc.subdivisions,
                          (acc.error - imag_only + tail) * scale};
}

// -2i int_alpha^inf e^{-a x^2 - i beta x} / sqrt(cosh x - X) dx for beta < 0, deformed
// into the upper half plane where e^{-i beta z} decays.
QuadratureResult cut_discontinuity(double a, double beta, double u, const ContourSpec& spec) {
  const double alpha = std::log1p(u + std::sqrt(u * (u + 2.0)));
  const double b = -beta;
  double c = std::max(b / (2.0 * a), std::min(0.3, 1.0 / std::sqrt(a)));
  c = std::min(c, kHighest);
  const double e0 = -a * alpha * alpha;
  // |integrand| <= e^{e0 + a c^2} / sqrt(...) on the whole path: nothing representable left.
  if (e0 + a * c * c < -700.0) return QuadratureResult{};
  const cplx dir = std::polar(1.0, kPi / 4);

  // cosh z - X with z = alpha + w.
  auto integrand_w = [=](cplx w) {
    const cplx z = alpha + w;
    const cplx h = 2.0 * std::sinh(alpha + 0.5 * w) * std::sinh(0.5 * w);
    return std::exp(-a * z * z - kI * beta * z - e0) / std::sqrt(h);
  };

  gk::Options opt = options_of(spec);
  opt.abs_tol = 0.5 * spec.abs_tol * std::exp(-e0);
  Accumulator acc;

  // Diagonal leg w = e^{i pi/4} v^2 absorbs the endpoint singularity.
  const double v1 = std::sqrt(c * std::numbers::sqrt2);
  {
    auto g = [&](double v) {
      const cplx w = dir * (v * v);
      return integrand_w(w) * (2.0 * v) * dir;
    };
    auto r = gk::integrate<cplx>(g, std::span<const double>(std::array<double, 2>{0.0, v1}), opt,
                                 PhaseGuard{});
    require_converged(r, "cut leg 1");
    acc.add(r, 1.0);
  }

  const double apex_size = 1.0 / std::sqrt(std::max(std::sinh(alpha) * c, 1e-300));
  const double thr =
      std::max(1e-3 * spec.rel_tol * apex_size * std::min(1.0, 1.0 / std::sqrt(a)), 0.1 * opt.abs_tol);
  const double offset = a * c * c - b * c - e0;
  const double x0 = alpha + c;
  const double xe = std::max(x0, tail_end(x0, a, offset, u + 1.0, thr));
  const double tail = tail_bound(xe, a, offset);
  if (xe > x0) {
    auto g = [&](double x) { return integrand_w(cplx(x - alpha, c)); };
    gk::Options rest = opt;
    rest.abs_tol = std::max(opt.abs_tol, 0.1 * opt.rel_tol * std::abs(acc.value));
    auto r = gk::integrate<cplx>(g, std::span<const double>(std::array<double, 2>{x0, xe}), rest,
                                 PhaseGuard{});
    require_converged(r, "cut leg 2");
    acc.add(r, 1.0);
  }

  const double scale = std::exp(e0);
  return QuadratureResult{-2.0 * kI * acc.value * scale, 2.0 * (acc.error + tail) * scale,
                          acc.evaluations, acc.subdivisions, 2.0 * (acc.error + tail) * scale};
}

}  // namespace

QuadratureResult branch_integral(double a, double beta, double cosh_alpha_m1, const ContourSpec& spec) {
  if (!(spec.eta > -kPi && spec.eta < 0.0)) {
    throw DomainError("contour height eta must lie in (-pi, 0)");
  }
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("Gaussian coefficient must be positive");
  if (!std::isfinite(beta)) throw DomainError("phase coefficient must be finite");
  const double u = cosh_alpha_m1;
  if (!(u >= 0.0)) throw DomainError("cosh(alpha) - 1 must be non-negative");
  if (u > kNegligibleU) return QuadratureResult{};
  if (u == 0.0) {
    throw DomainError("branch point at the origin: the integral diverges for alpha = 0");
  }
  if (beta >= 0.0) return lower_family(a, beta, u, spec);

  QuadratureResult low = lower_family(a, -beta, u, spec);
  QuadratureResult cut = cut_discontinuity(a, beta, u, spec);
  return QuadratureResult{std::conj(low.value) + cut.value, low.error + cut.error,
                          low.evaluations + cut.evaluations, low.subdivisions + cut.subdivisions,
                          low.real_error + cut.real_error};
}

QuadratureResult contour_integral(const BranchIntegrand& f, const ContourSpec& spec) {
  QuadratureResult m = branch_integral(f.a, f.beta, f.term.cosh_minus_m1, spec);
  if (f.zeta == 0.0) return m;
  QuadratureResult p = branch_integral(f.a, f.beta, f.term.cosh_plus_m1, spec);
  return QuadratureResult{m.value - f.zeta * p.value, m.error + std::abs(f.zeta) * p.error,
                          m.evaluations + p.evaluations, m.subdivisions + p.subdivisions,
                          m.real_error + std::abs(f.zeta) * p.real_error};
}

double fermi_dirac_response(double gap, double temperature, double rel_tol) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  const double beta = 1.0 / temperature;
  // log of the integrand; concave with curvature <= -2.
  auto log_f = [=](double x) {
    const double s = x * beta;
    const double softplus = s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
    return -(x - gap) * (x - gap) - softplus;
  };
  // Peak: -2(x - gap) - beta * logistic(beta x) = 0, bracketed in [gap - beta/2, gap].
  auto slope = [=](double x) {
    const double s = x * beta;
    const double logistic = s > 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
    return -2.0 * (x - gap) - beta * logistic;
  };
  double lo = gap - 0.5 * beta - 1.0, hi = gap;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  const double peak = 0.5 * (lo + hi);
  const double ref = log_f(peak);
  // The occupation changes over a width T around x = 0, which a coarse first pass
  // can step over entirely at low temperature, so pin it down with breakpoints.
  std::vector<double> marks{gap};
  for (double k : {0.0, 1.0, 4.0, 16.0, 64.0}) {
    marks.push_back(k * temperature);
    marks.push_back(-k * temperature);
  }
  std::sort(marks.begin(), marks.end());
  std::vector<double> pts{peak - 9.0};
  for (double p : marks) {
    if (p > pts.back() && p < peak + 9.0) pts.push_back(p);
  }
  pts.push_back(peak + 9.0);
  auto f = [&](double x) { return std::exp(log_f(x) - ref); };
  auto r = gk::integrate<double>(f, std::span<const double>(pts), gk::Options{rel_tol, 0.0, 2000});
  if (!r.converged) throw ConvergenceError("Fermi-Dirac integral did not converge");
  return 0.5 * r.value * std::exp(ref);
}

ImageSum integrate_image_sum(const std::function<ImagePart(int, double)>& term,
                             const std::function<double(int)>& magnitude,
                             const std::function<double(int)>& magnitude_tail,
                             const TruncationPolicy& policy, double extra_scale) {
  ImageSum sum;
  double last_ratio = 0.0;
  for (int n = 0; n <= policy.n_max; ++n) {
    const double m = magnitude(n);
    if (n > 0 && m == 0.0) {
      sum.tail = 0.0;
      return sum;  // every further image is numerically at infinity
    }
    // Images after the first only need to be accurate relative to the running sum.
    const double abs_tol =
        n == 0 ? 0.0 : 0.1 * policy.tail_tol * (std::abs(sum.minus) + std::abs(sum.plus) + extra_scale);
    ImagePart part = term(n, abs_tol);
    const double fold = n == 0 ? 1.0 : 2.0;
    part.minus *= fold;
    part.plus *= fold;
    part.error_minus *= fold;
    part.error_plus *= fold;
    sum.minus += part.minus;
    sum.plus += part.plus;
    sum.quadrature_error += part.error_minus + part.error_plus;
    sum.evaluations += part.evaluations;
    sum.terms.push_back(part);
    if (n == 0) continue;

    // Size of term n relative to its magnitude proxy, extrapolated over the tail.
    const double ratio = (std::abs(part.minus) + std::abs(part.plus)) / m;
    const double r = std::max(ratio, last_ratio);
    last_ratio = ratio;
    sum.tail = r * 2.0 * magnitude_tail(n);
    if (n < policy.n_min) continue;
    const double scale = std::abs(sum.minus) + std::abs(sum.plus) + extra_scale;
    if (sum.tail <= policy.tail_tol * scale) return sum;
  }
  sum.truncated = true;
  return sum;
}

}  // namespace harvest
