#pragma once

#include <stdexcept>
#include <string>

namespace dppt {

// Bad input data: shapes, ranges, spectra outside the contraction band.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical budget could not be met (basis truncation, leakage,
// verification bound). Carries the achieved and required values so
// callers can report or retry with a finer discretization.
class tolerance_error : public std::runtime_error {
 public:
  tolerance_error(const std::string& what, double achieved, double required)
      : std::runtime_error(what + " (achieved " + std::to_string(achieved) +
                           ", required " + std::to_string(required) + ")"),
        achieved_(achieved),
        required_(required) {}

  double achieved() const { return achieved_; }
  double required() const { return required_; }

 private:
  double achieved_;
  double required_;
};

}  // namespace dppt
