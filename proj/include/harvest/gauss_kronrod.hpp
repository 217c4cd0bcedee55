#pragma once

// Adaptive 21-point Gauss-Kronrod integration over a real parameter.
//
// Works for real or complex integrands. Intervals are refined globally (largest
// error first). Error estimates follow QUADPACK's QK21 heuristics, including the
// 50 eps |f| roundoff floor; an interval whose error sits on that floor is not
// refined further.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace harvest::gk {

extern const std::array<double, 11> kKronrodNodes;    // x_k >= 0, x_10 = 0
extern const std::array<double, 11> kKronrodWeights;
extern const std::array<double, 5> kGaussWeights;     // on the odd Kronrod nodes x_1, x_3, ...

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
  bool converged = true;
};

template <class T>
struct Rule {
  T value{};
  double error = 0.0;
  double floor = 0.0;  // roundoff floor
  std::array<double, 21> abscissae{};
  std::array<T, 21> samples{};  // in increasing abscissa order
};

template <class T, class F>
Rule<T> apply_rule(F& f, double lo, double hi) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Rule<T> r;
  T kronrod{};
  T gauss{};
  double resabs = 0.0;
  for (int k = 0; k < 11; ++k) {
    const double dx = half * kKronrodNodes[k];
    if (k == 10) {
      const T fc = f(centre);
      r.abscissae[10] = centre;
      r.samples[10] = fc;
      kronrod += kKronrodWeights[10] * fc;
      resabs += kKronrodWeights[10] * std::abs(fc);
      continue;
    }
    const T f1 = f(centre - dx);
    const T f2 = f(centre + dx);
    r.abscissae[k] = centre - dx;
    r.samples[k] = f1;
    r.abscissae[20 - k] = centre + dx;
    r.samples[20 - k] = f2;
    kronrod += kKronrodWeights[k] * (f1 + f2);
    resabs += kKronrodWeights[k] * (std::abs(f1) + std::abs(f2));
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * (f1 + f2);
  }
  const T mean = kronrod * 0.5;
  double resasc = kKronrodWeights[10] * std::abs(r.samples[10] - mean);
  for (int k = 0; k < 10; ++k) {
    resasc += kKronrodWeights[k] * (std::abs(r.samples[k] - mean) + std::abs(r.samples[20 - k] - mean));
  }
  const double ah = std::abs(half);
  r.value = kronrod * half;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  r.floor = 50.0 * eps * resabs;
  r.error = std::max(err, r.floor);
  return r;
}

struct AlwaysSmooth {
  template <class T>
  bool operator()(const std::array<double, 21>&, const std::array<T, 21>&) const {
    return true;
  }
};

/// Integrates f over [points.front(), points.back()], never placing a node on an
/// interior break point. `smooth` may veto an interval (forcing bisection) based on
/// its node values.
template <class T, class F, class Guard = AlwaysSmooth>
Result<T> integrate(F&& f, std::span<const double> points, const Options& opt, Guard smooth = {}) {
  struct Piece {
    double lo, hi;
    T value;
    double error;
    double floor;
    bool vetoed;
  };
  // Vetoed pieces are refined before anything else.
  auto before = [](const Piece& a, const Piece& b) {
    if (a.vetoed != b.vetoed) return b.vetoed;
    return a.error < b.error;
  };
  std::vector<Piece> open;  // max-heap under `before`
  std::vector<Piece> done;

  Result<T> out;
  const double span_width = std::abs(points.back() - points.front());
  const double min_width = 1e-13 * std::max(span_width, 1e-300);

  auto add = [&](double lo, double hi) {
    Rule<T> r = apply_rule<T>(f, lo, hi);
    out.evaluations += 21;
    const bool narrow = std::abs(hi - lo) <= min_width;
    // Pieces too small to matter (int |f| far below abs_tol) are not vetoed.
    const bool negligible = r.floor / (50.0 * std::numeric_limits<double>::epsilon()) < 1e-2 * opt.abs_tol;
    Piece p{lo, hi, r.value, r.error, r.floor, !narrow && !negligible && !smooth(r.abscissae, r.samples)};
    if (!p.vetoed && (p.error <= p.floor * (1.0 + 1e-12) || narrow)) {
      done.push_back(p);
    } else {
      open.push_back(p);
      std::push_heap(open.begin(), open.end(), before);
    }
  };

  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] != points[i]) add(points[i], points[i + 1]);
  }

  auto tally = [&](T& value, double& error, int& vetoed) {
    value = T{};
    error = 0.0;
    vetoed = 0;
    for (const Piece& p : done) {
      value += p.value;
      error += p.error;
    }
    for (const Piece& p : open) {
      value += p.value;
      error += p.error;
      vetoed += p.vetoed ? 1 : 0;
    }
  };

  T total{};
  double total_error = 0.0;
  int vetoed = 0;
  tally(total, total_error, vetoed);
  while (!open.empty() &&
         (vetoed > 0 || total_error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)))) {
    if (out.subdivisions >= opt.max_subdivisions) {
      out.converged = false;
      break;
    }
    std::pop_heap(open.begin(), open.end(), before);
    const Piece worst = open.back();
    open.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    add(worst.lo, mid);
    add(mid, worst.hi);
    ++out.subdivisions;
    tally(total, total_error, vetoed);
  }

  // Sum in interval order so the result does not depend on refinement history.
  done.insert(done.end(), open.begin(), open.end());
  std::sort(done.begin(), done.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  out.value = T{};
  out.error = 0.0;
  bool floor_limited = true;
  for (const Piece& p : done) {
    out.value += p.value;
    out.error += p.error;
    if (p.vetoed || (p.error > p.floor * (1.0 + 1e-12) && std::abs(p.hi - p.lo) > min_width)) {
      floor_limited = false;
    }
  }
  // Missing the tolerance is acceptable only when every piece is roundoff-limited.
  if (out.error > std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value)) && !floor_limited) {
    out.converged = false;
  }
  return out;
}

template <class T, class F>
Result<T> integrate(F&& f, double lo, double hi, const Options& opt) {
  const std::array<double, 2> pts{lo, hi};
  return integrate<T>(std::forward<F>(f), std::span<const double>(pts), opt);
}

}  // namespace harvest::gk
