#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "residua/circle/trig.hpp"
#include "residua/common.hpp"
#include "residua/numerics/laurent.hpp"

namespace residua::cone {

// Smooth part of a b-density sampled on a grid of the collar, vanishing to
// the declared order at r = 0.
struct RemainderGrid {
  std::vector<double> r_nodes;             // ascending, in (0, 1]
  int x_points = 0;                        // uniform circle grid
  std::vector<std::vector<cplx>> values;   // values[i][j] at (r_i, 2 pi j / x_points)
  int vanishing_order = 0;

  void validate() const {
    if (r_nodes.size() < 3 || x_points < 1)
      throw invalid_input("RemainderGrid: need at least three radial nodes and one angle");
    if (values.size() != r_nodes.size())
      throw invalid_input("RemainderGrid: node/value mismatch");
    double prev = 0.0;
    for (double r : r_nodes) {
      if (!(r > prev) || r > 1.0) throw invalid_input("RemainderGrid: nodes must ascend in (0,1]");
      prev = r;
    }
    for (const auto& row : values)
      if (static_cast<int>(row.size()) != x_points)
        throw invalid_input("RemainderGrid: ragged value rows");
  }
};

// b-density on the collar [0,1) x S^1:
//   u = r^{-p} [ sum_k w_k(x) r^k + remainder(r,x) ] (dr/r) dx
// with trig-polynomial coefficients and a remainder vanishing to order K+1.
class BDensity {
public:
  BDensity(int leading_order, std::vector<circle::TrigPolynomial> coefficients,
           std::optional<RemainderGrid> remainder = std::nullopt)
      : p_(leading_order), w_(std::move(coefficients)), remainder_(std::move(remainder)) {
    if (p_ < 0) throw invalid_input("BDensity: leading order must be >= 0");
    if (w_.empty()) w_.emplace_back();  // the zero density of depth 0
    if (remainder_) remainder_->validate();
  }

  int leading_order() const { return p_; }
  int depth() const { return static_cast<int>(w_.size()) - 1; }  // K
  const circle::TrigPolynomial& coefficient(int k) const {
    if (k < 0 || k > depth()) throw invalid_input("BDensity: coefficient index out of range");
    return w_[static_cast<std::size_t>(k)];
  }
  const std::optional<RemainderGrid>& remainder() const { return remainder_; }

  friend BDensity operator+(const BDensity& a, const BDensity& b) {
    if (a.p_ != b.p_) throw invalid_input("BDensity: mixing different leading orders");
    if (a.remainder_ && b.remainder_)
      throw invalid_input("BDensity: adding two sampled remainders is not supported");
    std::vector<circle::TrigPolynomial> w(std::max(a.w_.size(), b.w_.size()));
    for (std::size_t k = 0; k < w.size(); ++k) {
      circle::TrigPolynomial wa = (k < a.w_.size()) ? a.w_[k] : circle::TrigPolynomial();
      circle::TrigPolynomial wb = (k < b.w_.size()) ? b.w_[k] : circle::TrigPolynomial();
      w[k] = (wa + wb).trimmed();
    }
    return BDensity(a.p_, std::move(w), a.remainder_ ? a.remainder_ : b.remainder_);
  }

private:
  int p_;
  std::vector<circle::TrigPolynomial> w_;
  std::optional<RemainderGrid> remainder_;
};

enum class BRegularizeMode { laurent_window, residue_only };

namespace detail {

// integral over S^1 of a trig polynomial
inline cplx circle_integral(const circle::TrigPolynomial& w) { return 2.0 * pi * w.mean(); }

// x-averaged remainder integral against r^{z-p-1}, composite Simpson with a
// trapezoid fallback on the last panel for even node counts.
inline cplx remainder_integral(const RemainderGrid& grid, int p, cplx z) {
  std::vector<cplx> radial(grid.r_nodes.size());
  for (std::size_t i = 0; i < grid.r_nodes.size(); ++i) {
    cplx xsum = 0.0;
    for (const auto& v : grid.values[i]) xsum += v;
    const cplx xint = 2.0 * pi * xsum / static_cast<double>(grid.x_points);
    radial[i] = xint * std::pow(grid.r_nodes[i], z - static_cast<double>(p) - 1.0);
  }
  // the integrand vanishes to order K - p >= 0 at r = 0: extend with zero
  std::vector<double> nodes = grid.r_nodes;
  nodes.insert(nodes.begin(), 0.0);
  radial.insert(radial.begin(), cplx(0.0));
  cplx total = 0.0;
  std::size_t i = 0;
  while (i + 2 < nodes.size() &&
         std::abs((nodes[i + 1] - nodes[i]) - (nodes[i + 2] - nodes[i + 1])) < 1e-12) {
    const double h = nodes[i + 1] - nodes[i];
    total += h / 3.0 * (radial[i] + 4.0 * radial[i + 1] + radial[i + 2]);
    i += 2;
  }
  for (; i + 1 < nodes.size(); ++i)
    total += 0.5 * (nodes[i + 1] - nodes[i]) * (radial[i] + radial[i + 1]);
  return total;
}

}  // namespace detail

// The b-regularized integral z -> int_M r^z u as a Laurent window at z = 0.
//
// residue_only: the boundary-derivative formula
//   Res_{z=0} = (1/p!) int_{S^1} d_r^p (r^p u)|_{r=0} dx = int w_p dx.
// laurent_window: numerical contour extraction from the term-by-term partial
//   fractions sum_k (int w_k dx)/(z - p + k) plus the quadrature of the
//   remainder; an independent path against the boundary formula.
inline numerics::LaurentSeries b_regularize(const BDensity& u, BRegularizeMode mode) {
  if (u.depth() < u.leading_order())
    throw invalid_input("b_regularize: expansion depth K must reach the leading order p");
  const int p = u.leading_order();
  numerics::LaurentSeries out = numerics::LaurentSeries::zero(cplx(0.0));

  if (mode == BRegularizeMode::residue_only) {
    out.set_coeff(-1, detail::circle_integral(u.coefficient(p)));
    return out;
  }

  const auto f = [&](cplx z) {
    cplx s = 0.0;
    for (int k = 0; k <= u.depth(); ++k)
      s += detail::circle_integral(u.coefficient(k)) / (z - static_cast<double>(p - k));
    if (u.remainder()) s += detail::remainder_integral(*u.remainder(), p, z);
    return s;
  };
  // trapezoid contour rule on |z| = 1/2: the nearest other poles sit at the
  // nonzero integers, so the rule converges geometrically
  const int points = 64;
  const double radius = 0.5;
  for (int k = out.lowest(); k <= out.highest(); ++k) {
    cplx c = 0.0;
    for (int j = 0; j < points; ++j) {
      const double theta = 2.0 * pi * j / points;
      const cplx z = std::polar(radius, theta);
      c += f(z) * std::exp(cplx(0.0, -theta * k)) / std::pow(radius, k);
    }
    out.set_coeff(k, c / static_cast<double>(points));
  }
  return out;
}

// A b-density read as the Wodzicki residue density omega(P)(r,x) (dr/r) dx.
struct WodzickiDensitySpec {
  BDensity density;
};

// Tr_{d,s}(P) = Res_{z=0} int r^z omega(P): the boundary residue trace.
inline cplx tr_partial_sigma(const WodzickiDensitySpec& omega) {
  return b_regularize(omega.density, BRegularizeMode::residue_only).coeff(-1);
}

// Tr_s(P) = Pf_{z=0} int r^z omega(P): the finite-part trace.  Depends on
// the boundary defining function through the k != p terms.
inline cplx tr_sigma(const WodzickiDensitySpec& omega) {
  return b_regularize(omega.density, BRegularizeMode::laurent_window).coeff(0);
}

// Tr_d(P): the boundary-derivative formula applied to the finite-part layer
// of the diagonal restriction, which the caller supplies (the meromorphic
// family convention behind it is recorded by the caller, not fixed here).
// A non-integer weight makes the functional vanish identically.
inline cplx tr_partial(const BDensity& pf_layer, double weight) {
  if (std::abs(weight - std::round(weight)) > 1e-9) return 0.0;
  if (pf_layer.depth() < pf_layer.leading_order())
    throw invalid_input("tr_partial: expansion depth K must reach the leading order p");
  return detail::circle_integral(pf_layer.coefficient(pf_layer.leading_order()));
}

}  // namespace residua::cone
