#pragma once

#include <vector>

#include "residua/circle/trig.hpp"
#include "residua/common.hpp"

namespace residua::circle {

// One homogeneous component on the two sheets of the cosphere.
struct SheetFunctions {
  TrigPolynomial plus;
  TrigPolynomial minus;
  bool is_zero() const { return plus.is_zero() && minus.is_zero(); }
  const TrigPolynomial& sheet(int s) const { return s >= 0 ? plus : minus; }
  TrigPolynomial& sheet(int s) { return s >= 0 ? plus : minus; }
};

// Classical symbol on S^1: components a_{m-j}(t, s), each exactly
// homogeneous of degree m-j in |xi| on sheet s of S*S^1.
class CircleSymbol {
public:
  CircleSymbol() : order_(0) {}
  CircleSymbol(int top_order, std::vector<SheetFunctions> components)
      : order_(top_order), comps_(std::move(components)) {}

  static CircleSymbol zero() { return CircleSymbol(); }
  static CircleSymbol constant(cplx c, int order) {
    return CircleSymbol(order, {{TrigPolynomial::constant(c), TrigPolynomial::constant(c)}});
  }
  // Multiplication operator by u: the symbol is u on both sheets.
  static CircleSymbol multiplication(const TrigPolynomial& u) {
    return CircleSymbol(0, {{u, u}});
  }
  // Toeplitz-type symbol: u on the positive sheet, v on the negative one.
  static CircleSymbol two_sheet(const TrigPolynomial& u, const TrigPolynomial& v, int order = 0) {
    return CircleSymbol(order, {{u, v}});
  }
  // The symbol of D: xi, signed across the sheets.
  static CircleSymbol xi() {
    return CircleSymbol(
        1, {{TrigPolynomial::constant(1.0), TrigPolynomial::constant(-1.0)}});
  }
  // |xi|^q, any integer q.
  static CircleSymbol abs_xi_power(int q) { return constant(1.0, q); }

  int order() const { return order_; }
  int component_count() const { return static_cast<int>(comps_.size()); }
  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }
  const SheetFunctions& component(int j) const {
    if (j < 0 || j >= component_count()) throw invalid_input("CircleSymbol: component out of range");
    return comps_[static_cast<std::size_t>(j)];
  }
  // Component of absolute homogeneity q (zero if not retained).
  SheetFunctions component_of_order(int q) const {
    const int j = order_ - q;
    if (j < 0 || j >= component_count()) return SheetFunctions{};
    return comps_[static_cast<std::size_t>(j)];
  }
  int max_component_degree() const {
    int d = 0;
    for (const auto& c : comps_) d = std::max({d, c.plus.degree(), c.minus.degree()});
    return d;
  }

  // Strip exactly-zero leading components so the declared order is honest.
  CircleSymbol normalized() const {
    std::size_t lead = 0;
    while (lead < comps_.size() && comps_[lead].is_zero()) ++lead;
    if (lead == comps_.size()) return CircleSymbol::zero();
    std::vector<SheetFunctions> rest(comps_.begin() + static_cast<std::ptrdiff_t>(lead),
                                     comps_.end());
    return CircleSymbol(order_ - static_cast<int>(lead), std::move(rest));
  }

  CircleSymbol truncated(int max_components) const {
    std::vector<SheetFunctions> rest(
        comps_.begin(),
        comps_.begin() + std::min<std::ptrdiff_t>(max_components, static_cast<std::ptrdiff_t>(comps_.size())));
    return CircleSymbol(order_, std::move(rest));
  }

  friend CircleSymbol operator*(cplx c, const CircleSymbol& a) {
    CircleSymbol r = a;
    for (auto& comp : r.comps_) {
      comp.plus = c * comp.plus;
      comp.minus = c * comp.minus;
    }
    return r;
  }
  // Alignment by absolute homogeneity; the retained depth is what both
  // operands can vouch for.
  friend CircleSymbol operator+(const CircleSymbol& a, const CircleSymbol& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int top = std::max(a.order_, b.order_);
    const int bottom = std::max(a.order_ - a.component_count() + 1,
                                b.order_ - b.component_count() + 1);
    if (bottom > top) return CircleSymbol::zero();
    std::vector<SheetFunctions> comps;
    for (int q = top; q >= bottom; --q) {
      SheetFunctions ca = a.component_of_order(q);
      SheetFunctions cb = b.component_of_order(q);
      comps.push_back({(ca.plus + cb.plus).trimmed(), (ca.minus + cb.minus).trimmed()});
    }
    return CircleSymbol(top, std::move(comps));
  }
  friend CircleSymbol operator-(const CircleSymbol& a, const CircleSymbol& b) {
    return a + cplx(-1.0) * b;
  }

private:
  int order_;
  std::vector<SheetFunctions> comps_;  // comps_[j] is homogeneous of degree order_ - j
};

namespace detail {

inline double falling_factorial(int q, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= static_cast<double>(q - i);
  return p;
}

}  // namespace detail

// Composition expansion sum_k (1/k!) d_xi^k a . D_t^k b, carried through
// `depth` lowering steps.  On the negative sheet d_xi picks up a sign per
// derivative because |xi| = -xi there.
inline CircleSymbol star_compose(const CircleSymbol& a, const CircleSymbol& b, int depth) {
  if (depth < 0) throw invalid_input("star_compose: negative depth");
  if (a.is_zero() || b.is_zero()) return CircleSymbol::zero();
  const int top = a.order() + b.order();
  std::vector<SheetFunctions> comps(static_cast<std::size_t>(depth) + 1);
  for (int ja = 0; ja < a.component_count(); ++ja) {
    const int qa = a.order() - ja;
    for (int jb = 0; jb < b.component_count(); ++jb) {
      double k_factorial = 1.0;
      for (int k = 0; k + ja + jb <= depth; ++k) {
        if (k > 0) k_factorial *= k;
        const int target = ja + jb + k;
        const double fall = detail::falling_factorial(qa, k);
        if (fall == 0.0) continue;
        for (int s : {+1, -1}) {
          const double sheet_sign = (s > 0) ? 1.0 : ((k % 2 == 0) ? 1.0 : -1.0);
          TrigPolynomial term = a.component(ja).sheet(s);
          TrigPolynomial db = b.component(jb).sheet(s);
          for (int i = 0; i < k; ++i) db = db.d_t();
          term = (cplx(sheet_sign * fall / k_factorial)) * (term * db);
          auto& slot = comps[static_cast<std::size_t>(target)].sheet(s);
          slot = (slot + term).trimmed();
        }
      }
    }
  }
  return CircleSymbol(top, std::move(comps)).normalized();
}

inline CircleSymbol star_commutator(const CircleSymbol& a, const CircleSymbol& b, int depth) {
  return (star_compose(a, b, depth) - star_compose(b, a, depth)).normalized();
}

// delta(a) = [log Delta^{1/r}, a] realized through the expansion
// sum_{k>=1} (-1)^{k-1}/k a^{[k]} |xi|^{-k}, a^{[k]} the iterated bracket
// with |xi|.  The result has order (order a) - 1 and carries components
// through the requested depth.
inline CircleSymbol log_commutator_symbol(const CircleSymbol& a, int depth) {
  if (depth < 1) throw invalid_input("log_commutator_symbol: depth must be >= 1");
  if (a.is_zero()) return CircleSymbol::zero();
  const int work = depth + 2;
  const CircleSymbol xi_abs = CircleSymbol::abs_xi_power(1);
  CircleSymbol bracket = a;
  CircleSymbol sum = CircleSymbol::zero();
  double sign = 1.0;
  for (int k = 1; k <= depth + 1; ++k) {
    bracket = star_commutator(xi_abs, bracket, work);
    if (bracket.is_zero()) break;
    const CircleSymbol term =
        star_compose(bracket, CircleSymbol::abs_xi_power(-k), work);
    sum = sum + (cplx(sign / k)) * term;
    sign = -sign;
  }
  sum = sum.normalized();
  if (sum.is_zero()) return sum;
  // retain components down to order (order a) - 1 - depth
  const int keep = sum.order() - (a.order() - 1 - depth) + 1;
  return sum.truncated(std::max(keep, 1));
}

// (1/2pi) integral over both sheets of the order -1 component.
inline cplx wodzicki_residue(const CircleSymbol& a) {
  const SheetFunctions c = a.component_of_order(-1);
  return c.plus.mean() + c.minus.mean();
}

}  // namespace residua::circle
