#pragma once

// Mutual information of the O(lambda^2) two-detector state and anti-Hawking
// diagnostics on sampled response curves.

#include <span>
#include <vector>

#include "harvest/detector.hpp"

namespace harvest {

struct Eigenvalues {
  double plus;
  double minus;
};

/// L_pm = (L_AA + L_BB +- sqrt((L_AA - L_BB)^2 + 4|L_AB|^2))/2, computed without
/// cancellation in L_-.
Eigenvalues l_pm(double laa, double lbb, double lab_abs);

/// I_AB / lambda~^2. Exact in lambda: the ln(lambda^2) pieces multiply
/// L_+ + L_- - L_AA - L_BB = 0. `slack` is how far L_- may dip below zero (from
/// upstream error bars) before ConsistencyError; such dips are clamped to L_- = 0.
double mutual_information(double laa, double lbb, double lab_abs, double slack = 0.0);

struct CorrelationResult {
  Eigenvalues l;
  double mutual_information;
  double error;  // propagated from the element error bars
};

CorrelationResult correlate(const MatrixElements& m);

struct Interval {
  double lo;
  double hi;
};

struct AntiHawkingResult {
  bool detected = false;
  std::vector<Interval> intervals;  // merged [T_{i-1}, T_{i+1}] around flagged nodes
  std::vector<double> derivative;   // interior nodes 1..N-2
  std::vector<double> derivative_error;
};

/// dF/dT_KMS < 0 beyond the propagated error at some interior node of an increasing
/// temperature grid (>= 4 nodes).
AntiHawkingResult anti_hawking_weak(std::span<const double> temperature, std::span<const double> response,
                                    std::span<const double> response_error);

/// Same test applied to T_EDR(T_KMS).
AntiHawkingResult anti_hawking_strong(std::span<const double> temperature, std::span<const double> t_edr,
                                      std::span<const double> t_edr_error);

/// -gap / ln(F(gap)/F(-gap)).
double edr_temperature(double f_plus, double f_minus, double gap);

}  // namespace harvest
