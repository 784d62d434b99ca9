#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "residua/common.hpp"

namespace residua::numerics {

// Dense complex matrix, row-major.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cplx(0.0)) {
    if (rows < 0 || cols < 0) throw invalid_input("Matrix: negative dimension");
  }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return a_[idx(i, j)]; }
  const cplx& operator()(int i, int j) const { return a_[idx(i, j)]; }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    x.check_same_shape(y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    x.check_same_shape(y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }
  friend Matrix operator*(cplx c, const Matrix& x) {
    Matrix r = x;
    for (auto& v : r.a_) v *= c;
    return r;
  }
  // ikj product with zero skipping; banded operands cost what their bands do.
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw invalid_input("Matrix::operator*: shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i) {
      cplx* ri = &r.a_[r.idx(i, 0)];
      for (int k = 0; k < x.cols_; ++k) {
        const cplx a = x(i, k);
        if (a == cplx(0.0)) continue;
        const cplx* yk = &y.a_[y.idx(k, 0)];
        for (int j = 0; j < y.cols_; ++j) ri[j] += a * yk[j];
      }
    }
    return r;
  }

  cplx trace() const {
    cplx s = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }
  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }
  double max_abs() const {
    double s = 0.0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
  }
  double column_norm(int j) const {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i) s += std::norm((*this)(i, j));
    return std::sqrt(s);
  }

  // Half-open index ranges.
  Matrix submatrix(int row0, int row1, int col0, int col1) const {
    if (row0 < 0 || col0 < 0 || row1 > rows_ || col1 > cols_ || row0 > row1 || col0 > col1)
      throw invalid_input("Matrix::submatrix: bad range");
    Matrix m(row1 - row0, col1 - col0);
    for (int i = row0; i < row1; ++i)
      for (int j = col0; j < col1; ++j) m(i - row0, j - col0) = (*this)(i, j);
    return m;
  }

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }
  void check_same_shape(const Matrix& y) const {
    if (rows_ != y.rows_ || cols_ != y.cols_) throw invalid_input("Matrix: shape mismatch");
  }

  int rows_, cols_;
  std::vector<cplx> a_;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, orthonormal
};

// Cyclic Jacobi for a complex Hermitian matrix.  Deterministic and accurate
// at the matrix sizes this library works with.
inline EigenResult hermitian_spectrum(const Matrix& input, double hermiticity_tol = 1e-12) {
  const int n = input.rows();
  if (input.cols() != n) throw invalid_input("hermitian_spectrum: matrix not square");
  const double scale = std::max(1.0, input.max_abs());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (std::abs(input(i, j) - std::conj(input(j, i))) > hermiticity_tol * scale)
        throw invalid_input("hermitian_spectrum: matrix is not Hermitian");

  Matrix a = input;
  Matrix v = Matrix::identity(n);
  const double total = a.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 60 && off_norm() > 1e-13 * std::max(total, 1e-300); ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const cplx phase = apq / r;  // a(p,q) = r * phase
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        // Unitary U: u_pp = c, u_pq = s, u_qp = -s conj(phase), u_qq = c conj(phase)
        const cplx uqp = -s * std::conj(phase);
        const cplx uqq = c * std::conj(phase);
        for (int i = 0; i < n; ++i) {  // A <- A U, V <- V U
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * c + aiq * uqp;
          a(i, q) = aip * s + aiq * uqq;
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * c + viq * uqp;
          v(i, q) = vip * s + viq * uqq;
        }
        for (int j = 0; j < n; ++j) {  // A <- U* A
          const cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + std::conj(uqp) * aqj;
          a(q, j) = s * apj + std::conj(uqq) * aqj;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenResult out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = a(order[static_cast<std::size_t>(k)],
                                                order[static_cast<std::size_t>(k)]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[static_cast<std::size_t>(k)]);
  }
  return out;
}

// Upper-triangular factor of A (n x m, n >= m) by Givens rotations.  Zero
// entries are skipped, so banded inputs stay cheap.
inline Matrix givens_qr_r(const Matrix& a_in) {
  Matrix a = a_in;
  const int n = a.rows(), m = a.cols();
  if (n < m) throw invalid_input("givens_qr_r: fewer rows than columns");
  for (int j = 0; j < m; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const cplx beta = a(i, j);
      if (beta == cplx(0.0)) continue;
      const cplx alpha = a(j, j);
      const double r = std::hypot(std::abs(alpha), std::abs(beta));
      cplx c, s;
      if (std::abs(alpha) == 0.0) {
        c = 0.0;
        s = std::conj(beta) / r;
      } else {
        c = std::abs(alpha) / r;
        s = (alpha / std::abs(alpha)) * std::conj(beta) / r;
      }
      for (int k = j; k < m; ++k) {
        const cplx ajk = a(j, k), aik = a(i, k);
        a(j, k) = c * ajk + s * aik;
        a(i, k) = -std::conj(s) * ajk + std::conj(c) * aik;
      }
      a(i, j) = 0.0;  // eliminated exactly; keeps zero skipping effective
    }
  }
  return a.submatrix(0, m, 0, m);
}

namespace detail {

// x <- R^{-1} R^{-*} x, normalized.  R comes from the Tikhonov-augmented
// factorization, so its diagonal is bounded below and the solves cannot
// overflow.
inline void inverse_normal_solve(const Matrix& r, std::vector<cplx>& x) {
  const int m = r.rows();
  // forward solve R* y = x  (R* is lower triangular)
  for (int i = 0; i < m; ++i) {
    cplx s = x[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) s -= std::conj(r(k, i)) * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = s / std::conj(r(i, i));
  }
  // back solve R z = y
  for (int i = m - 1; i >= 0; --i) {
    cplx s = x[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < m; ++k) s -= r(i, k) * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] = s / r(i, i);
  }
  double nrm = 0.0;
  for (const auto& v : x) nrm += std::norm(v);
  nrm = std::sqrt(nrm);
  if (nrm > 0.0)
    for (auto& v : x) v /= nrm;
}

}  // namespace detail

// Number of singular values of A below tau.  Intended for matrices whose
// singular spectrum has a wide gap around tau (near-kernels vs. the bulk).
// Inverse subspace iteration on the Tikhonov-regularized normal equations
// (A*A + mu^2, mu two decades under tau) isolates the small end; the shift
// makes every direction under mu amplify equally, so an exact kernel cannot
// starve a merely tiny singular direction out of the block.  The counted
// values are direct residual norms ||A q||, so no accuracy is lost to
// forming A*A.
inline int kernel_count(const Matrix& a, double tau, int block = 8, unsigned seed = 0x5eed) {
  const int n = a.rows(), m = a.cols();
  if (m == 0) return 0;
  block = std::min(block, m);
  if (!(tau > 0.0)) throw invalid_input("kernel_count: threshold must be positive");
  double scale = a.max_abs();
  if (scale == 0.0) scale = 1.0;
  const double mu = 0.01 * tau * scale;
  Matrix augmented(n + m, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) augmented(i, j) = a(i, j);
  for (int j = 0; j < m; ++j) augmented(n + j, j) = mu;
  const Matrix r = givens_qr_r(augmented);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<cplx>> basis(static_cast<std::size_t>(block),
                                       std::vector<cplx>(static_cast<std::size_t>(m)));
  for (auto& v : basis)
    for (auto& x : v) x = cplx(gauss(rng), gauss(rng));

  const auto orthonormalize = [&] {
    const auto norm_of = [&](const std::vector<cplx>& v) {
      double s = 0.0;
      for (const auto& x : v) s += std::norm(x);
      return std::sqrt(s);
    };
    const auto project_out_previous = [&](std::vector<cplx>& v, std::size_t j) {
      for (std::size_t i = 0; i < j; ++i) {
        cplx dot = 0.0;
        for (int k = 0; k < m; ++k)
          dot += std::conj(basis[i][static_cast<std::size_t>(k)]) * v[static_cast<std::size_t>(k)];
        for (int k = 0; k < m; ++k)
          v[static_cast<std::size_t>(k)] -= dot * basis[i][static_cast<std::size_t>(k)];
      }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto& v = basis[j];
      double nrm = 0.0;
      for (int attempt = 0; attempt < 8; ++attempt) {
        const double before = norm_of(v);
        project_out_previous(v, j);
        nrm = norm_of(v);
        if (nrm > 0.5 * before) break;
        // Heavy cancellation: either reorthogonalize or, if the direction
        // collapsed entirely, reseed it.
        if (nrm < 1e-14 * before || nrm == 0.0) {
          for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
        }
      }
      for (auto& x : v) x /= nrm;
    }
  };

  orthonormalize();
  for (int iter = 0; iter < 5; ++iter) {
    for (auto& v : basis) detail::inverse_normal_solve(r, v);
    orthonormalize();
  }

  // Residual norms on the converged block.  The amplification in the
  // inverse iteration orders the basis kernel-first, so each near-kernel
  // direction shows up as its own orthonormal vector.
  int count = 0;
  for (int j = 0; j < block; ++j) {
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (int k = 0; k < m; ++k)
        s += a(i, k) * basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      res += std::norm(s);
    }
    if (std::sqrt(res) < tau) ++count;
  }
  if (count == block && block < m)
    return kernel_count(a, tau, std::min(2 * block, m), seed + 1);
  return count;
}

}  // namespace residua::numerics
