#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "residua/common.hpp"
#include "residua/numerics/linalg.hpp"

namespace residua::zeta {

// Discrete positive spectrum with the order r of Delta.  Eigenvalues are
// stored in the order of the working basis so that operator matrices align;
// for the circle model the working basis is the Fourier modes and equals the
// eigenbasis.
class SpectralModel {
public:
  enum class Kind { circle, generic };

  SpectralModel(std::vector<double> eigenvalues, double r, Kind kind = Kind::generic)
      : eigs_(std::move(eigenvalues)), r_(r), kind_(kind) {
    if (!(r_ > 0.0)) throw invalid_input("SpectralModel: order r must be positive");
    if (eigs_.empty()) throw invalid_input("SpectralModel: empty spectrum");
    for (double l : eigs_)
      if (!(l > 0.0)) throw invalid_input("SpectralModel: eigenvalues must be positive");
  }

  // Delta = D^2 + Pi_0 on Fourier modes -N..N: lambda_n = n^2 for n != 0 and
  // lambda_0 = 1, a rank-one boost that makes Delta invertible without
  // touching any asymptotics.
  static SpectralModel circle(int N) {
    if (N < 1) throw invalid_input("SpectralModel::circle: N must be >= 1");
    std::vector<double> eigs(static_cast<std::size_t>(2 * N + 1));
    for (int n = -N; n <= N; ++n)
      eigs[static_cast<std::size_t>(n + N)] = (n == 0) ? 1.0 : static_cast<double>(n) * n;
    SpectralModel m(std::move(eigs), 2.0, Kind::circle);
    m.circle_truncation_ = N;
    return m;
  }

  const std::vector<double>& eigenvalues() const { return eigs_; }
  std::vector<double> eigenvalues_ascending() const {
    std::vector<double> s = eigs_;
    std::sort(s.begin(), s.end());
    return s;
  }
  double order() const { return r_; }
  Kind kind() const { return kind_; }
  int size() const { return static_cast<int>(eigs_.size()); }
  int circle_truncation() const {
    if (kind_ != Kind::circle) throw invalid_input("SpectralModel: not a circle model");
    return circle_truncation_;
  }
  double max_eigenvalue() const { return *std::max_element(eigs_.begin(), eigs_.end()); }

private:
  std::vector<double> eigs_;
  double r_;
  Kind kind_;
  int circle_truncation_ = 0;
};

struct HeatSample {
  double t = 0.0;
  cplx value;
  double tail_bound = 0.0;  // bound on the spectrum truncated away
};

// Tr(A e^{-t Delta}) over the model spectrum.  The truncation must reach
// lambda <= 50/t_min, which pushes the truncated tail far below 1e-12 of
// the retained sum.
inline std::vector<HeatSample> heat_trace(const SpectralModel& model,
                                          const std::optional<numerics::Matrix>& a,
                                          const std::vector<double>& t_grid) {
  if (t_grid.empty()) return {};
  double t_min = 1.0 / 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw invalid_input("heat_trace: times must be positive");
    t_min = std::min(t_min, t);
  }
  const double lmax = model.max_eigenvalue();
  if (lmax < 50.0 / t_min)
    throw numeric_error("heat_trace: insufficient truncation for the requested times");
  const int n = model.size();
  if (a && (a->rows() != n || a->cols() != n))
    throw invalid_input("heat_trace: operator does not match the model dimension");

  double diag_scale = 1.0;
  if (a) {
    diag_scale = 0.0;
    for (int i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs((*a)(i, i)));
  }

  std::vector<HeatSample> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    cplx sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = std::exp(-t * model.eigenvalues()[static_cast<std::size_t>(i)]);
      sum += (a ? (*a)(i, i) : cplx(1.0)) * w;
    }
    // integral comparison for the truncated tail of the circle spectrum
    const double tail =
        diag_scale * std::exp(-t * lmax) * (1.0 / (t * std::sqrt(lmax)) + 1.0);
    if (!(tail <= 1e-12 * std::max(std::abs(sum), 1e-300)))
      throw numeric_error("heat_trace: declared tail bound exceeds 1e-12 of the sum");
    out.push_back({t, sum, tail});
  }
  return out;
}

}  // namespace residua::zeta
