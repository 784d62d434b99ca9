#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "residua/common.hpp"
#include "residua/zeta/structure.hpp"

namespace residua::cone {

// Inputs for the conic heat-trace expansion
//   Tr(P e^{-t Delta}) ~ sum_k a_k t^{(k-p)/2} + (b_k + beta_k log t) t^k
//                        + (c_k + gamma_k log t + delta_k (log t)^2) t^{(k-m-n)/2}
// with beta_k = C_k (Tr_s + Tr_d)(P Delta^k) and gamma_k, delta_k carrying
// Tr_{d,s}(P Delta^{k-m-n}).  The trace values are supplied per k; the
// constants default to -1/2, -1/4, -1/4, which pins the displayed t^0
// combinations: coefficient of log t equal to
// -(1/2)Tr_s - (1/2)Tr_d - (1/4)Tr_{d,s} and of (log t)^2 to -(1/4)Tr_{d,s}.
struct ConeHeatSpec {
  int m = 2;  // differential order
  int p = 0;  // weight
  int n = 1;  // dimension

  std::map<int, cplx> tr_sigma;          // Tr_s(P Delta^k)
  std::map<int, cplx> tr_partial;        // Tr_d(P Delta^k)
  std::map<int, cplx> tr_partial_sigma;  // Tr_{d,s}(P Delta^{k-m-n}), keyed by k

  std::map<int, cplx> smooth_a, smooth_b, smooth_c;  // non-log coefficients

  std::map<int, double> c_const, cp_const, cpp_const;  // overrides per k

  static constexpr double default_c = -0.5;
  static constexpr double default_cp = -0.25;
  static constexpr double default_cpp = -0.25;

  double c_at(int k) const { return lookup(c_const, k, default_c); }
  double cp_at(int k) const { return lookup(cp_const, k, default_cp); }
  double cpp_at(int k) const { return lookup(cpp_const, k, default_cpp); }

private:
  static double lookup(const std::map<int, double>& m_, int k, double dflt) {
    auto it = m_.find(k);
    return it == m_.end() ? dflt : it->second;
  }
};

inline zeta::HeatExpansion heat_expansion_model(const ConeHeatSpec& spec) {
  if (spec.n < 1) throw invalid_input("heat_expansion_model: dimension must be >= 1");
  zeta::HeatExpansion h;
  for (const auto& [k, a] : spec.smooth_a)
    h.add({(k - spec.p) / 2.0, 0, a});
  for (const auto& [k, b] : spec.smooth_b)
    h.add({static_cast<double>(k), 0, b});
  for (const auto& [k, c] : spec.smooth_c)
    h.add({(k - spec.m - spec.n) / 2.0, 0, c});

  // beta_k log t at t^k
  std::map<int, cplx> beta_inputs;
  for (const auto& [k, v] : spec.tr_sigma) beta_inputs[k] += v;
  for (const auto& [k, v] : spec.tr_partial) beta_inputs[k] += v;
  for (const auto& [k, v] : beta_inputs)
    h.add({static_cast<double>(k), 1, spec.c_at(k) * v});

  // gamma_k log t and delta_k (log t)^2 at t^{(k-m-n)/2}
  for (const auto& [k, v] : spec.tr_partial_sigma) {
    const double alpha = (k - spec.m - spec.n) / 2.0;
    h.add({alpha, 1, spec.cp_at(k) * v});
    h.add({alpha, 2, spec.cpp_at(k) * v});
  }
  return h;
}

struct ConicPoleReport {
  std::vector<zeta::PoleInfo> poles;
  int order_at_zero = 0;
  bool zero_bound_ok = false;
};

// Mellin the expansion and check the pole bookkeeping: order at most three
// everywhere and at most two at z = 0.  Violations indicate malformed input
// and are structural errors.
inline ConicPoleReport conic_zeta_poles(const zeta::HeatExpansion& h) {
  const auto zs = zeta::mellin_map(h, 2.0);
  ConicPoleReport report;
  report.poles = zs.pole_report();  // throws above order three
  double scale = 0.0;
  for (const auto& term : h.terms()) scale = std::max(scale, std::abs(term.coeff));
  report.order_at_zero = zs.laurent_at(0.0).pole_order(1e-10 * std::max(scale, 1.0));
  report.zero_bound_ok = report.order_at_zero <= 2;
  if (!report.zero_bound_ok)
    throw numeric_error("conic_zeta_poles: pole order above two at z = 0 (malformed input)");
  return report;
}

// Half-plane of holomorphy of z -> Tr(b^{(k)} Delta^{-k-z}) for b in
// r^p C^inf: Re z > max{(n-k)/2, -p/2}.  Exact dyadic arithmetic.
inline double holomorphy_halfplane(int p, int k, int n) {
  return std::max((static_cast<double>(n) - k) / 2.0, -static_cast<double>(p) / 2.0);
}

struct RegularityReport {
  double limit = 0.0;            // lim_k of the bound: -p/2
  int handover_k = 0;            // first k where the -p/2 branch rules
  bool eventually_negative = false;
  bool obstructed = false;       // the bound never drops below zero
};

// The obstruction diagnostic: the bound stagnates at -p/2 instead of
// falling to -infinity, and for p <= 0 (the smooth-function case p = 0 in
// particular) it never clears zero, so the expansion is not summable under
// the residue and the triple cannot be regular.
inline RegularityReport regularity_diagnostic(int p, int n) {
  RegularityReport rep;
  rep.limit = -static_cast<double>(p) / 2.0;
  rep.handover_k = n + p;
  rep.eventually_negative = p > 0;
  rep.obstructed = p <= 0;
  return rep;
}

}  // namespace residua::cone
