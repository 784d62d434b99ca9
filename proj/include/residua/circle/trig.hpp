#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "residua/common.hpp"

namespace residua::circle {

// Finitely supported Fourier expansion u(t) = sum_{|n| <= d} c_n e^{int}.
class TrigPolynomial {
public:
  TrigPolynomial() : d_(0), c_(1, cplx(0.0)) {}
  explicit TrigPolynomial(int degree)
      : d_(degree), c_(static_cast<std::size_t>(2 * degree + 1), cplx(0.0)) {
    if (degree < 0) throw invalid_input("TrigPolynomial: negative degree");
  }
  static TrigPolynomial constant(cplx c) {
    TrigPolynomial u(0);
    u.set_coeff(0, c);
    return u;
  }
  static TrigPolynomial mode(int n, cplx c = 1.0) {
    TrigPolynomial u(std::abs(n));
    u.set_coeff(n, c);
    return u;
  }

  int degree() const { return d_; }
  cplx coeff(int n) const {
    return (std::abs(n) <= d_) ? c_[static_cast<std::size_t>(n + d_)] : cplx(0.0);
  }
  void set_coeff(int n, cplx v) {
    if (std::abs(n) > d_) throw invalid_input("TrigPolynomial::set_coeff: mode out of range");
    c_[static_cast<std::size_t>(n + d_)] = v;
  }

  cplx eval(double t) const {
    cplx s = 0.0;
    for (int n = -d_; n <= d_; ++n) s += coeff(n) * std::polar(1.0, n * t);
    return s;
  }
  cplx mean() const { return coeff(0); }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != cplx(0.0)) return false;
    return true;
  }
  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  friend TrigPolynomial operator+(const TrigPolynomial& x, const TrigPolynomial& y) {
    TrigPolynomial r(std::max(x.d_, y.d_));
    for (int n = -r.d_; n <= r.d_; ++n) r.set_coeff(n, x.coeff(n) + y.coeff(n));
    return r;
  }
  friend TrigPolynomial operator-(const TrigPolynomial& x, const TrigPolynomial& y) {
    TrigPolynomial r(std::max(x.d_, y.d_));
    for (int n = -r.d_; n <= r.d_; ++n) r.set_coeff(n, x.coeff(n) - y.coeff(n));
    return r;
  }
  friend TrigPolynomial operator*(cplx c, const TrigPolynomial& x) {
    TrigPolynomial r = x;
    for (auto& v : r.c_) v *= c;
    return r;
  }
  friend TrigPolynomial operator*(const TrigPolynomial& x, const TrigPolynomial& y) {
    TrigPolynomial r(x.d_ + y.d_);
    for (int a = -x.d_; a <= x.d_; ++a) {
      const cplx xa = x.coeff(a);
      if (xa == cplx(0.0)) continue;
      for (int b = -y.d_; b <= y.d_; ++b) r.set_coeff(a + b, r.coeff(a + b) + xa * y.coeff(b));
    }
    return r;
  }

  // d/dt: c_n -> i n c_n
  TrigPolynomial derivative() const {
    TrigPolynomial r = *this;
    for (int n = -d_; n <= d_; ++n) r.set_coeff(n, cplx(0.0, static_cast<double>(n)) * coeff(n));
    return r;
  }
  // D_t = (1/i) d/dt: c_n -> n c_n
  TrigPolynomial d_t() const {
    TrigPolynomial r = *this;
    for (int n = -d_; n <= d_; ++n) r.set_coeff(n, static_cast<double>(n) * coeff(n));
    return r;
  }
  // complex conjugate function: coefficients conj(c_{-n})
  TrigPolynomial conj_function() const {
    TrigPolynomial r(d_);
    for (int n = -d_; n <= d_; ++n) r.set_coeff(n, std::conj(coeff(-n)));
    return r;
  }

  // Drop trailing exact zeros so degrees stay honest after cancellations.
  TrigPolynomial trimmed() const {
    int d = d_;
    while (d > 0 && coeff(d) == cplx(0.0) && coeff(-d) == cplx(0.0)) --d;
    TrigPolynomial r(d);
    for (int n = -d; n <= d; ++n) r.set_coeff(n, coeff(n));
    return r;
  }

  double min_abs_sampled(int points = 4096) const {
    double m = 1.0 / 0.0;
    for (int k = 0; k < points; ++k)
      m = std::min(m, std::abs(eval(2.0 * pi * k / points)));
    return m;
  }

private:
  int d_;
  std::vector<cplx> c_;
};

// Sampled nowhere-vanishing check; the tolerance is relative to the size of
// the function so that grid-exact zeros are always caught.
inline bool nowhere_vanishing(const TrigPolynomial& u, int points = 4096) {
  const double floor = 1e-8 * std::max(1.0, u.max_abs_coeff());
  return u.min_abs_sampled(points) > floor;
}

// Fourier coefficients of 1/u up to `max_degree`, truncated where they fall
// below `coeff_cut` relative to the largest one.  Trapezoid sums on a
// power-of-two grid are spectrally accurate for these trig-analytic
// functions; the cut must stay above the accumulated quadrature noise,
// which is why it defaults to 1e-12.
inline TrigPolynomial inverse_fourier_truncation(const TrigPolynomial& u,
                                                 double coeff_cut = 1e-12,
                                                 int grid = 8192,
                                                 int max_degree = 512) {
  if (!nowhere_vanishing(u, grid))
    throw invalid_input("inverse_fourier_truncation: function vanishes on the circle");
  if (max_degree < 0) throw invalid_input("inverse_fourier_truncation: negative degree cap");
  std::vector<cplx> inv_vals(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k)
    inv_vals[static_cast<std::size_t>(k)] = 1.0 / u.eval(2.0 * pi * k / grid);
  const int max_deg = std::min(max_degree, grid / 4);
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * max_deg + 1));
  double biggest = 0.0;
  for (int n = -max_deg; n <= max_deg; ++n) {
    cplx s = 0.0;
    for (int k = 0; k < grid; ++k)
      s += inv_vals[static_cast<std::size_t>(k)] * std::polar(1.0, -n * (2.0 * pi * k / grid));
    coeffs[static_cast<std::size_t>(n + max_deg)] = s / static_cast<double>(grid);
    biggest = std::max(biggest, std::abs(coeffs[static_cast<std::size_t>(n + max_deg)]));
  }
  int d = max_deg;
  const double cut = coeff_cut * biggest;
  while (d > 0 && std::abs(coeffs[static_cast<std::size_t>(d + max_deg)]) < cut &&
         std::abs(coeffs[static_cast<std::size_t>(-d + max_deg)]) < cut)
    --d;
  TrigPolynomial out(d);
  for (int n = -d; n <= d; ++n) out.set_coeff(n, coeffs[static_cast<std::size_t>(n + max_deg)]);
  return out;
}

}  // namespace residua::circle
