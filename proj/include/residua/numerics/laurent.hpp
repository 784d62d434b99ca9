#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "residua/common.hpp"

namespace residua::numerics {

// Truncated Taylor germ at 0: a_0 + a_1 h + ... + a_K h^K.
class PowerSeries {
public:
  PowerSeries() : a_(1, cplx(0.0)) {}
  explicit PowerSeries(std::vector<cplx> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty()) a_.assign(1, cplx(0.0));
    if (!std::isfinite(a_[0].real()) || !std::isfinite(a_[0].imag()))
      throw invalid_input("PowerSeries: non-finite constant term");
  }
  static PowerSeries zero(int degree) {
    return PowerSeries(std::vector<cplx>(static_cast<std::size_t>(degree) + 1, cplx(0.0)));
  }
  static PowerSeries constant(cplx c, int degree) {
    PowerSeries p = zero(degree);
    p.a_[0] = c;
    return p;
  }
  // h itself, truncated at `degree`.
  static PowerSeries identity(int degree) {
    PowerSeries p = zero(degree);
    if (degree >= 1) p.a_[1] = 1.0;
    return p;
  }

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  cplx coeff(int k) const {
    return (k >= 0 && k <= degree()) ? a_[static_cast<std::size_t>(k)] : cplx(0.0);
  }
  void set_coeff(int k, cplx v) {
    if (k < 0 || k > degree()) throw invalid_input("PowerSeries::set_coeff: index out of range");
    a_[static_cast<std::size_t>(k)] = v;
  }

  PowerSeries truncated(int degree) const {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, cplx(0.0));
    for (int k = 0; k <= degree; ++k) c[static_cast<std::size_t>(k)] = coeff(k);
    return PowerSeries(std::move(c));
  }

  friend PowerSeries operator+(const PowerSeries& x, const PowerSeries& y) {
    int d = std::max(x.degree(), y.degree());
    PowerSeries r = zero(d);
    for (int k = 0; k <= d; ++k) r.a_[static_cast<std::size_t>(k)] = x.coeff(k) + y.coeff(k);
    return r;
  }
  friend PowerSeries operator-(const PowerSeries& x, const PowerSeries& y) {
    int d = std::max(x.degree(), y.degree());
    PowerSeries r = zero(d);
    for (int k = 0; k <= d; ++k) r.a_[static_cast<std::size_t>(k)] = x.coeff(k) - y.coeff(k);
    return r;
  }
  friend PowerSeries operator*(cplx c, const PowerSeries& x) {
    PowerSeries r = x;
    for (auto& v : r.a_) v *= c;
    return r;
  }
  // Cauchy product truncated at min of the two degrees (beyond that the
  // result would depend on discarded coefficients).
  friend PowerSeries operator*(const PowerSeries& x, const PowerSeries& y) {
    int d = std::min(x.degree(), y.degree());
    PowerSeries r = zero(d);
    for (int k = 0; k <= d; ++k) {
      cplx s = 0.0;
      for (int i = 0; i <= k; ++i) s += x.coeff(i) * y.coeff(k - i);
      r.a_[static_cast<std::size_t>(k)] = s;
    }
    return r;
  }

  // Substitute h -> c*h.
  PowerSeries scaled_argument(cplx c) const {
    PowerSeries r = *this;
    cplx p = 1.0;
    for (int k = 0; k <= degree(); ++k) {
      r.a_[static_cast<std::size_t>(k)] *= p;
      p *= c;
    }
    return r;
  }

  // exp of the series; uses b' = a' b.
  PowerSeries exp() const {
    const int d = degree();
    PowerSeries b = zero(d);
    b.a_[0] = std::exp(a_[0]);
    for (int k = 1; k <= d; ++k) {
      cplx s = 0.0;
      for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * coeff(j) * b.coeff(k - j);
      b.a_[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
    }
    return b;
  }

  // 1/series; requires a nonzero constant term.
  PowerSeries reciprocal() const {
    if (std::abs(a_[0]) == 0.0) throw numeric_error("PowerSeries::reciprocal: zero constant term");
    const int d = degree();
    PowerSeries b = zero(d);
    b.a_[0] = 1.0 / a_[0];
    for (int k = 1; k <= d; ++k) {
      cplx s = 0.0;
      for (int j = 1; j <= k; ++j) s += coeff(j) * b.coeff(k - j);
      b.a_[static_cast<std::size_t>(k)] = -s / a_[0];
    }
    return b;
  }

  cplx eval(cplx h) const {
    cplx s = 0.0;
    for (int k = degree(); k >= 0; --k) s = s * h + a_[static_cast<std::size_t>(k)];
    return s;
  }

private:
  std::vector<cplx> a_;  // a_[k] multiplies h^k
};

// Finite window of Laurent coefficients of a meromorphic function about a
// point: sum over k in [lowest, highest] of c_k (z - center)^k.  Arithmetic
// is closed on the retained window; products truncate to the offsets whose
// Cauchy sums are complete given the two input windows.
class LaurentSeries {
public:
  static constexpr int default_pole_depth = 4;

  LaurentSeries(cplx center, int lowest, int highest)
      : center_(center), lo_(lowest), hi_(highest),
        c_(static_cast<std::size_t>(highest - lowest + 1), cplx(0.0)) {
    if (highest < lowest) throw invalid_input("LaurentSeries: empty window");
  }
  static LaurentSeries zero(cplx center) {
    return LaurentSeries(center, -default_pole_depth, default_pole_depth);
  }

  cplx center() const { return center_; }
  int lowest() const { return lo_; }
  int highest() const { return hi_; }

  // Offsets below the window floor are structural zeros; offsets above the
  // ceiling were never computed and reading them is an error.
  cplx coeff(int k) const {
    if (k < lo_) return 0.0;
    if (k > hi_) throw invalid_input("LaurentSeries::coeff: offset above retained window");
    return c_[static_cast<std::size_t>(k - lo_)];
  }
  void set_coeff(int k, cplx v) {
    if (k < lo_ || k > hi_) throw invalid_input("LaurentSeries::set_coeff: offset outside window");
    c_[static_cast<std::size_t>(k - lo_)] = v;
  }
  void add_coeff(int k, cplx v) { set_coeff(k, coeff(k) + v); }

  int pole_order(double tol = 0.0) const {
    for (int k = lo_; k < 0; ++k)
      if (std::abs(coeff(k)) > tol) return -k;
    return 0;
  }

  friend LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y) {
    x.check_same_center(y);
    LaurentSeries r(x.center_, std::min(x.lo_, y.lo_), std::min(x.hi_, y.hi_));
    for (int k = r.lo_; k <= r.hi_; ++k) r.set_coeff(k, x.coeff(k) + y.coeff(k));
    return r;
  }
  friend LaurentSeries operator-(const LaurentSeries& x, const LaurentSeries& y) {
    x.check_same_center(y);
    LaurentSeries r(x.center_, std::min(x.lo_, y.lo_), std::min(x.hi_, y.hi_));
    for (int k = r.lo_; k <= r.hi_; ++k) r.set_coeff(k, x.coeff(k) - y.coeff(k));
    return r;
  }
  friend LaurentSeries operator*(cplx c, const LaurentSeries& x) {
    LaurentSeries r = x;
    for (auto& v : r.c_) v *= c;
    return r;
  }
  friend LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y) {
    x.check_same_center(y);
    const int lo = x.lo_ + y.lo_;
    const int hi = std::min(x.hi_ + y.lo_, y.hi_ + x.lo_);
    if (hi < lo) throw invalid_input("LaurentSeries::operator*: windows too narrow");
    LaurentSeries r(x.center_, lo, hi);
    for (int i = x.lo_; i <= x.hi_; ++i) {
      const cplx xi = x.coeff(i);
      if (xi == cplx(0.0)) continue;
      for (int j = y.lo_; j <= y.hi_; ++j) {
        const int k = i + j;
        if (k < lo || k > hi) continue;
        r.add_coeff(k, xi * y.coeff(j));
      }
    }
    return r;
  }

  // Value of the retained window at z (no analytic tail).
  cplx eval(cplx z) const {
    const cplx h = z - center_;
    cplx s = 0.0;
    for (int k = hi_; k >= lo_; --k) s = s * h + coeff(k);
    for (int k = 0; k > lo_; --k) s /= h;
    return s;
  }

  PowerSeries regular_part(int degree) const {
    PowerSeries p = PowerSeries::zero(degree);
    for (int k = 0; k <= std::min(degree, hi_); ++k) p.set_coeff(k, coeff(k));
    return p;
  }

  static LaurentSeries from_power_series(const PowerSeries& p, cplx center, int lo, int hi) {
    LaurentSeries r(center, lo, hi);
    for (int k = std::max(lo, 0); k <= hi; ++k) r.set_coeff(k, p.coeff(k));
    return r;
  }

private:
  void check_same_center(const LaurentSeries& y) const {
    if (std::abs(center_ - y.center_) > 1e-12)
      throw invalid_input("LaurentSeries: mixing windows at different centers");
  }

  cplx center_;
  int lo_, hi_;
  std::vector<cplx> c_;
};

}  // namespace residua::numerics
