#pragma once

#include <stdexcept>
#include <string>

namespace harvest {

// Argument outside the physical domain (below the horizon, eta outside (-pi, 0), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quantity diverges at the requested point, e.g. the local temperature at r = r_h.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A derived quantity came out negative beyond its error budget.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace harvest
