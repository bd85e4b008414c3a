#pragma once

#include <stdexcept>
#include <string>

namespace geonharvest {

// Input outside the domain of an operation (nonpositive mass, detector inside
// the horizon, bad ordering, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure failed to reach its tolerance. Carries the best
// estimate available when it gave up.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_estimate = 0.0,
                 double err_estimate = 0.0)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        err_estimate_(err_estimate) {}

  double best_estimate() const { return best_estimate_; }
  double err_estimate() const { return err_estimate_; }

 private:
  double best_estimate_;
  double err_estimate_;
};

}  // namespace geonharvest
