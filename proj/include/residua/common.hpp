#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace residua {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Bad caller input: malformed data, violated preconditions.
class invalid_input : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A computation that cannot be carried to the requested accuracy.
class numeric_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Least-squares design too close to rank deficiency.
class ill_conditioned_error : public numeric_error {
public:
  ill_conditioned_error(const std::string& what, double condition)
      : numeric_error(what), condition(condition) {}
  double condition;
};

// A truncation-dependent quantity that failed its stabilization check.
class not_stabilized_error : public numeric_error {
public:
  using numeric_error::numeric_error;
};

}  // namespace residua
