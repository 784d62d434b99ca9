#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "residua/common.hpp"

namespace residua::numerics {

// One basis function t^alpha (log t)^j of a small-time expansion.
struct FitTerm {
  double exponent = 0.0;
  int log_power = 0;
  friend bool operator==(const FitTerm& a, const FitTerm& b) {
    return a.exponent == b.exponent && a.log_power == b.log_power;
  }
};

class FitTermSpec {
public:
  FitTermSpec() = default;
  explicit FitTermSpec(std::vector<FitTerm> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].log_power < 0 || terms_[i].log_power > 2)
        throw invalid_input("FitTermSpec: log power must be in 0..2");
      for (std::size_t j = 0; j < i; ++j)
        if (terms_[i] == terms_[j]) throw invalid_input("FitTermSpec: duplicate term");
    }
  }
  const std::vector<FitTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

private:
  std::vector<FitTerm> terms_;
};

struct FitResult {
  std::vector<cplx> coefficients;  // aligned with the spec's terms
  double residual_norm = 0.0;
  double condition_estimate = 1.0;
};

namespace detail {

// Singular values of a small real matrix by one-sided Jacobi.
inline std::vector<double> small_singular_values(std::vector<std::vector<double>> cols) {
  const std::size_t k = cols.size();
  bool active = true;
  for (int sweep = 0; sweep < 60 && active; ++sweep) {
    active = false;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < cols[p].size(); ++i) {
          app += cols[p][i] * cols[p][i];
          aqq += cols[q][i] * cols[q][i];
          apq += cols[p][i] * cols[q][i];
        }
        if (std::abs(apq) <= 1e-30 + 1e-15 * std::sqrt(app * aqq)) continue;
        active = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        for (std::size_t i = 0; i < cols[p].size(); ++i) {
          const double xp = cols[p][i], xq = cols[q][i];
          cols[p][i] = c * xp - s * xq;
          cols[q][i] = s * xp + c * xq;
        }
      }
    }
  }
  std::vector<double> sv(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (double v : cols[j]) s += v * v;
    sv[j] = std::sqrt(s);
  }
  return sv;
}

}  // namespace detail

// Least squares in the basis t^alpha (log t)^j on positive sample points,
// QR with column scaling.  Throws ill_conditioned_error when the scaled
// design exceeds `condition_limit` (exponents too close for the grid).
inline FitResult fit_log_expansion(const std::vector<std::pair<double, cplx>>& samples,
                                   const FitTermSpec& spec,
                                   double condition_limit = 1e8) {
  const int n = static_cast<int>(samples.size());
  const int k = static_cast<int>(spec.size());
  for (const auto& [t, v] : samples) {
    (void)v;
    if (!(t > 0.0)) throw invalid_input("fit_log_expansion: sample points must be positive");
  }
  FitResult out;
  if (k == 0) {
    double s = 0.0;
    for (const auto& [t, v] : samples) {
      (void)t;
      s += std::norm(v);
    }
    out.residual_norm = std::sqrt(s);
    return out;
  }
  if (n < 2 * k)
    throw invalid_input("fit_log_expansion: need at least two samples per basis term");

  // design matrix, column scaled to unit norm
  std::vector<std::vector<double>> col(static_cast<std::size_t>(k),
                                       std::vector<double>(static_cast<std::size_t>(n)));
  std::vector<double> scale(static_cast<std::size_t>(k), 1.0);
  for (int j = 0; j < k; ++j) {
    const FitTerm& term = spec.terms()[static_cast<std::size_t>(j)];
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = samples[static_cast<std::size_t>(i)].first;
      const double v = std::pow(t, term.exponent) * std::pow(std::log(t), term.log_power);
      col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
      nrm += v * v;
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0)
      throw ill_conditioned_error("fit_log_expansion: zero design column", 1.0 / 0.0);
    scale[static_cast<std::size_t>(j)] = nrm;
    for (auto& v : col[static_cast<std::size_t>(j)]) v /= nrm;
  }

  // Householder QR; carry the complex right-hand side along.
  std::vector<cplx> rhs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] = samples[static_cast<std::size_t>(i)].second;
  std::vector<std::vector<double>> a = col;  // a[j][i]

  for (int j = 0; j < k; ++j) {
    double nrm = 0.0;
    for (int i = j; i < n; ++i) nrm += a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                                       a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    const double ajj = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
    const double alpha = (ajj >= 0.0) ? -nrm : nrm;
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    w[static_cast<std::size_t>(j)] = ajj - alpha;
    for (int i = j + 1; i < n; ++i) w[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    double wnorm2 = 0.0;
    for (int i = j; i < n; ++i) wnorm2 += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    if (wnorm2 == 0.0) continue;
    for (int jc = j; jc < k; ++jc) {
      double dot = 0.0;
      for (int i = j; i < n; ++i) dot += w[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(jc)][static_cast<std::size_t>(i)];
      const double f = 2.0 * dot / wnorm2;
      for (int i = j; i < n; ++i) a[static_cast<std::size_t>(jc)][static_cast<std::size_t>(i)] -= f * w[static_cast<std::size_t>(i)];
    }
    cplx dot = 0.0;
    for (int i = j; i < n; ++i) dot += w[static_cast<std::size_t>(i)] * rhs[static_cast<std::size_t>(i)];
    const cplx f = 2.0 * dot / wnorm2;
    for (int i = j; i < n; ++i) rhs[static_cast<std::size_t>(i)] -= f * w[static_cast<std::size_t>(i)];
  }

  // condition estimate from the R factor
  std::vector<std::vector<double>> rcols(static_cast<std::size_t>(k),
                                         std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i <= j; ++i)
      rcols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  const std::vector<double> sv = detail::small_singular_values(rcols);
  double smax = 0.0, smin = 1.0 / 0.0;
  for (double s : sv) {
    smax = std::max(smax, s);
    smin = std::min(smin, s);
  }
  out.condition_estimate = (smin > 0.0) ? smax / smin : 1.0 / 0.0;
  if (!(out.condition_estimate <= condition_limit))
    throw ill_conditioned_error(
        "fit_log_expansion: design is ill conditioned (estimate " +
            std::to_string(out.condition_estimate) + ")",
        out.condition_estimate);

  // back substitution
  std::vector<cplx> x(static_cast<std::size_t>(k), cplx(0.0));
  for (int i = k - 1; i >= 0; --i) {
    cplx s = rhs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s -= a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  }
  out.coefficients.resize(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j)
    out.coefficients[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] / scale[static_cast<std::size_t>(j)];
  double res = 0.0;
  for (int i = k; i < n; ++i) res += std::norm(rhs[static_cast<std::size_t>(i)]);
  out.residual_norm = std::sqrt(res);
  return out;
}

}  // namespace residua::numerics
