#include "harvest/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "harvest/errors.hpp"

namespace harvest {
namespace {

// (1 + x) ln(1 + x) - x, for x >= -1.
double phi(double x) {
  if (x == -1.0) return 1.0;
  if (std::abs(x) < 1e-2) {
    double sum = 0.0, p = x;
    for (int k = 2; k <= 14; ++k) {
      p *= x;  // x^k
      sum += ((k % 2 == 0) ? p : -p) / (k * (k - 1.0));
    }
    return sum;
  }
  return (1.0 + x) * std::log1p(x) - x;
}

// Shift of the eigenvalues away from (L_AA, L_BB): L_+ = A + delta, L_- = B - delta.
double eigen_shift(double big, double small, double c) {
  const double d = big - small;
  if (c == 0.0) return 0.0;
  return 2.0 * c * c / (std::hypot(d, 2.0 * c) + d);
}

}  // namespace

Eigenvalues l_pm(double laa, double lbb, double lab_abs) {
  const double big = std::max(laa, lbb), small = std::min(laa, lbb);
  const double delta = eigen_shift(big, small, std::abs(lab_abs));
  return Eigenvalues{big + delta, small - delta};
}

double mutual_information(double laa, double lbb, double lab_abs, double slack) {
  if (laa < 0.0 || lbb < 0.0) throw ConsistencyError("negative transition probability");
  const double big = std::max(laa, lbb), small = std::min(laa, lbb);
  const double c = std::abs(lab_abs);
  if (c == 0.0) return 0.0;
  double delta = eigen_shift(big, small, c);
  if (delta > small) {
    if (delta - small > slack) {
      throw ConsistencyError("L_AA L_BB < |L_AB|^2 beyond the error budget");
    }
    delta = small;  // L_- = 0 within error
  }
  if (small == 0.0) return 0.0;
  return delta * std::log(big / small) + big * phi(delta / big) + small * phi(-delta / small);
}

CorrelationResult correlate(const MatrixElements& m) {
  const double laa = m.aa.value, lbb = m.bb.value, c = std::abs(m.ab.value);
  const double slack = m.aa.error() + m.bb.error() + 2.0 * m.ab.error();
  CorrelationResult r;
  r.l = l_pm(laa, lbb, c);
  r.mutual_information = mutual_information(laa, lbb, c, slack);
  // Worst single-element perturbation, summed over elements.
  const double inf = std::numeric_limits<double>::infinity();
  auto shifted = [&](double da, double db, double dc) {
    return mutual_information(std::max(laa + da, 0.0), std::max(lbb + db, 0.0), std::max(c + dc, 0.0), inf);
  };
  double err = 0.0;
  for (auto [da, db, dc] : {std::tuple{m.aa.error(), 0.0, 0.0}, std::tuple{0.0, m.bb.error(), 0.0},
                            std::tuple{0.0, 0.0, m.ab.error()}}) {
    err += std::max(std::abs(shifted(da, db, dc) - r.mutual_information),
                    std::abs(shifted(-da, -db, -dc) - r.mutual_information));
  }
  r.error = err;
  return r;
}

namespace {

AntiHawkingResult negative_slope(std::span<const double> x, std::span<const double> f,
                                 std::span<const double> ferr) {
  const std::size_t n = x.size();
  if (f.size() != n || ferr.size() != n) throw DomainError("anti-Hawking: mismatched sample lengths");
  if (n < 4) throw DomainError("anti-Hawking: need at least 4 temperature samples");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x[i + 1] > x[i])) throw DomainError("anti-Hawking: temperature grid must be increasing");
  }
  AntiHawkingResult r;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
    const double c0 = -h2 / (h1 * (h1 + h2));
    const double c1 = (h2 - h1) / (h1 * h2);
    const double c2 = h1 / (h2 * (h1 + h2));
    const double d = c0 * f[i - 1] + c1 * f[i] + c2 * f[i + 1];
    const double e = std::abs(c0) * ferr[i - 1] + std::abs(c1) * ferr[i] + std::abs(c2) * ferr[i + 1];
    r.derivative.push_back(d);
    r.derivative_error.push_back(e);
    if (d + e < 0.0) {
      r.detected = true;
      if (!r.intervals.empty() && r.intervals.back().hi >= x[i - 1]) {
        r.intervals.back().hi = x[i + 1];
      } else {
        r.intervals.push_back(Interval{x[i - 1], x[i + 1]});
      }
    }
  }
  return r;
}

}  // namespace

AntiHawkingResult anti_hawking_weak(std::span<const double> temperature, std::span<const double> response,
                                    std::span<const double> response_error) {
  return negative_slope(temperature, response, response_error);
}

AntiHawkingResult anti_hawking_strong(std::span<const double> temperature, std::span<const double> t_edr,
                                      std::span<const double> t_edr_error) {
  return negative_slope(temperature, t_edr, t_edr_error);
}

double edr_temperature(double f_plus, double f_minus, double gap) {
  if (!(f_plus > 0.0) || !(f_minus > 0.0)) throw DomainError("EDR temperature needs positive responses");
  if (f_plus == f_minus) throw DomainError("EDR temperature diverges for equal responses");
  return -gap / std::log(f_plus / f_minus);
}

}  // namespace harvest
