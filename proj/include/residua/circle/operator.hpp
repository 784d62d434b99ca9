#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "residua/circle/symbol.hpp"
#include "residua/common.hpp"
#include "residua/numerics/linalg.hpp"

namespace residua::circle {

// Truncated Fourier-mode quantization: a dense matrix on modes -N..N.
struct CircleOperator {
  int truncation = 0;  // N
  numerics::Matrix matrix;
  std::optional<double> declared_order;

  int dim() const { return 2 * truncation + 1; }
  int index(int mode) const { return mode + truncation; }
  cplx entry(int row_mode, int col_mode) const {
    return matrix(index(row_mode), index(col_mode));
  }
};

// Matrix entries M_{m',n} = ahat(m'-n; n), the Fourier coefficients in t of
// the symbol evaluated at integer modes.  The n = 0 column uses the positive
// sheet at |n| = 1; any such finite-rank convention differs from another by
// a smoothing operator.
inline CircleOperator quantize(const CircleSymbol& a, int N) {
  if (N <= a.max_component_degree())
    throw invalid_input("quantize: truncation too small for the symbol's Fourier content");
  CircleOperator op;
  op.truncation = N;
  op.matrix = numerics::Matrix(2 * N + 1, 2 * N + 1);
  op.declared_order = a.is_zero() ? 0.0 : static_cast<double>(a.order());
  for (int n = -N; n <= N; ++n) {
    const int sheet = (n >= 0) ? +1 : -1;
    const double scale = (n == 0) ? 1.0 : std::abs(static_cast<double>(n));
    TrigPolynomial column;
    for (int j = 0; j < a.component_count(); ++j) {
      const double hom = std::pow(scale, a.order() - j);
      column = column + cplx(hom) * a.component(j).sheet(sheet);
    }
    for (int k = -column.degree(); k <= column.degree(); ++k) {
      const int row = n + k;
      if (row < -N || row > N) continue;
      op.matrix(op.index(row), op.index(n)) = column.coeff(k);
    }
  }
  return op;
}

// P = (1+F)/2 on Fourier modes, with sign(0) := +1.
inline CircleOperator hardy_projection(int N) {
  if (N < 1) throw invalid_input("hardy_projection: N must be >= 1");
  CircleOperator op;
  op.truncation = N;
  op.matrix = numerics::Matrix(2 * N + 1, 2 * N + 1);
  op.declared_order = 0.0;
  for (int n = 0; n <= N; ++n) op.matrix(op.index(n), op.index(n)) = 1.0;
  return op;
}

// T_u = P u P - (1 - P).
inline CircleOperator toeplitz(const TrigPolynomial& u, int N) {
  if (!nowhere_vanishing(u))
    throw invalid_input("toeplitz: the function vanishes somewhere on the circle");
  if (N <= 4 * u.degree())
    throw invalid_input("toeplitz: truncation must exceed four times the degree");
  CircleOperator op;
  op.truncation = N;
  op.matrix = numerics::Matrix(2 * N + 1, 2 * N + 1);
  op.declared_order = 0.0;
  for (int n = -N; n <= N; ++n) {
    if (n < 0) {
      op.matrix(op.index(n), op.index(n)) = -1.0;
      continue;
    }
    for (int k = -u.degree(); k <= u.degree(); ++k) {
      const int row = n + k;
      if (row < 0 || row > N) continue;
      op.matrix(op.index(row), op.index(n)) = u.coeff(k);
    }
  }
  return op;
}

// (1/2pi i) contour integral of u'/u by the periodic trapezoid rule, rounded
// to the nearest integer; ambiguity triggers one x4 grid refinement.
inline int winding_number(const TrigPolynomial& u) {
  if (!nowhere_vanishing(u))
    throw invalid_input("winding_number: the function vanishes somewhere on the circle");
  const TrigPolynomial du = u.derivative();
  int points = 4096;
  for (int attempt = 0; attempt < 2; ++attempt) {
    cplx s = 0.0;
    for (int k = 0; k < points; ++k) {
      const double t = 2.0 * pi * k / points;
      s += du.eval(t) / u.eval(t);
    }
    const cplx w = s / cplx(0.0, static_cast<double>(points));
    const double rounded = std::round(w.real());
    if (std::abs(w - cplx(rounded)) <= 0.1) return static_cast<int>(rounded);
    points *= 4;
  }
  throw numeric_error("winding_number: quadrature did not settle near an integer");
}

// Sobolev-growth regression: slope of log ||M e_n|| against log(1 + |n|)
// over the interior band |n| in [N/4, 3N/4].  Zero columns are skipped;
// if every sampled column is zero the -infinity marker is returned.
inline double estimate_order(const CircleOperator& op) {
  const int N = op.truncation;
  if (N < 32) throw invalid_input("estimate_order: truncation must be >= 32");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int n = -N; n <= N; ++n) {
    const int an = std::abs(n);
    if (an < N / 4 || an > (3 * N) / 4) continue;
    const double cn = op.matrix.column_norm(op.index(n));
    if (cn == 0.0) continue;
    const double x = std::log(1.0 + static_cast<double>(an));
    const double y = std::log(cn);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count == 0) return -std::numeric_limits<double>::infinity();
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

namespace detail {

// dim ker of the operator restricted to interior columns |n| <= cut, with
// kernel vectors detected among singular values below the threshold.
inline int interior_kernel_count(const numerics::Matrix& m, int N, int cut, double threshold) {
  const int col0 = N - cut, col1 = N + cut + 1;
  const numerics::Matrix rect = m.submatrix(0, 2 * N + 1, col0, col1);
  return numerics::kernel_count(rect, threshold);
}

}  // namespace detail

// dim ker - dim ker(adjoint) from SVD kernel counts on the interior block,
// required to be stable when the interior cut grows by 8.
inline int fredholm_index(const CircleOperator& op, int interior_margin) {
  if (interior_margin < 0) throw invalid_input("fredholm_index: negative margin");
  const int N = op.truncation;
  const int cut_small = N - interior_margin - 8;
  const int cut_large = N - interior_margin;
  if (cut_small < 1)
    throw invalid_input("fredholm_index: truncation too small for the requested margin");
  constexpr double threshold = 1e-8;
  const numerics::Matrix adj = op.matrix.adjoint();
  const auto index_at = [&](int cut) {
    return detail::interior_kernel_count(op.matrix, N, cut, threshold) -
           detail::interior_kernel_count(adj, N, cut, threshold);
  };
  const int large = index_at(cut_large);
  const int small = index_at(cut_small);
  if (large != small)
    throw not_stabilized_error("fredholm_index: kernel counts did not stabilize across truncations");
  return large;
}

}  // namespace residua::circle
