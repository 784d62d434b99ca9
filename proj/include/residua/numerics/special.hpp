#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "residua/common.hpp"
#include "residua/numerics/laurent.hpp"

namespace residua::numerics {

// B_2, B_4, ..., B_20.
inline constexpr std::array<double, 10> bernoulli_even = {
    1.0 / 6.0,      -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,      5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,      -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

// sin(pi x) with exact zeros at the integers.
inline double sin_pi(double x) {
  const double r = x - std::round(x);
  const double s = std::sin(pi * r);
  return (static_cast<long long>(std::llround(x - r)) % 2 == 0) ? s : -s;
}

inline cplx sin_pi(cplx z) {
  if (z.imag() == 0.0) return cplx(sin_pi(z.real()), 0.0);
  return std::sin(pi * z);
}

// log Gamma via the Lanczos approximation (g = 7, 9 terms), principal branch
// for Re z > 0; callers reflect as needed.
inline cplx log_gamma_positive(cplx z) {
  static constexpr std::array<double, 9> g = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  const cplx zm1 = z - 1.0;
  cplx x = g[0];
  for (std::size_t i = 1; i < g.size(); ++i) x += g[i] / (zm1 + static_cast<double>(i));
  const cplx t = zm1 + 7.5;
  return 0.5 * std::log(2.0 * pi) + (zm1 + 0.5) * std::log(t) - t + std::log(x);
}

inline cplx gamma_fn(cplx z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const cplx s = sin_pi(z);
    if (std::abs(s) == 0.0) throw invalid_input("gamma_fn: pole at a nonpositive integer");
    return pi / (s * std::exp(log_gamma_positive(1.0 - z)));
  }
  return std::exp(log_gamma_positive(z));
}

// 1/Gamma(z); entire, vanishes at the nonpositive integers.
inline cplx recip_gamma(cplx z) {
  if (z.real() < 0.5) return std::exp(log_gamma_positive(1.0 - z)) * sin_pi(z) / pi;
  return std::exp(-log_gamma_positive(z));
}

// binom(z, k) = z (z-1) ... (z-k+1) / k!
inline cplx generalized_binomial(cplx z, int k) {
  if (k < 0) throw invalid_input("generalized_binomial: negative k");
  cplx p = 1.0;
  for (int i = 0; i < k; ++i) p *= (z - static_cast<double>(i)) / static_cast<double>(i + 1);
  return p;
}

namespace detail {

// Euler-Maclaurin cutoff and correction depth for the zeta evaluations.
// N = 50 with corrections through B_12 reaches ~1e-13 relative accuracy on
// |z| <= 20 once Re z >= -3; more negative arguments go through the
// functional equation, where the direct sum would cancel catastrophically.
inline constexpr int zeta_em_cutoff = 50;
inline constexpr int zeta_em_terms = 6;
inline constexpr double zeta_reflect_below = 0.0;

inline cplx zeta_euler_maclaurin(cplx s) {
  const int N = zeta_em_cutoff;
  cplx sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double logN = std::log(static_cast<double>(N));
  const cplx NmS = std::exp(-s * logN);
  sum += NmS * static_cast<double>(N) / (s - 1.0);
  sum += 0.5 * NmS;
  // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  cplx rising = s;               // (s)_1
  double fact = 2.0;             // (2k)!
  double Npow = 1.0 / static_cast<double>(N);  // N^{-2k+1}
  for (int k = 1; k <= zeta_em_terms; ++k) {
    sum += bernoulli_even[static_cast<std::size_t>(k - 1)] / fact * rising * NmS * Npow;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    fact *= static_cast<double>(2 * k + 1) * static_cast<double>(2 * k + 2);
    Npow /= static_cast<double>(N) * static_cast<double>(N);
  }
  return sum;
}

}  // namespace detail

// Analytically continued Riemann zeta.  Rejects the pole at z = 1.
inline cplx riemann_zeta(cplx z) {
  if (std::abs(z - 1.0) < 1e-12) throw invalid_input("riemann_zeta: pole at z = 1");
  if (z.real() < detail::zeta_reflect_below) {
    // zeta(z) = 2^z pi^(z-1) sin(pi z / 2) Gamma(1-z) zeta(1-z)
    const cplx w = 1.0 - z;
    return std::exp(z * std::log(2.0) + (z - 1.0) * std::log(pi)) * sin_pi(0.5 * z) *
           std::exp(log_gamma_positive(w)) * detail::zeta_euler_maclaurin(w);
  }
  return detail::zeta_euler_maclaurin(z);
}

// Laurent window of zeta about s0.  At s0 = 1 the pole part is exactly
// 1/(s-1); elsewhere the window is a Taylor germ.  Valid for Re s0 >= -3
// (the Euler-Maclaurin region); the pole-bearing blocks this library builds
// never need windows below that.
inline LaurentSeries riemann_zeta_laurent(cplx s0, int depth) {
  if (depth < 1) throw invalid_input("riemann_zeta_laurent: depth must be >= 1");
  const int hi = depth;
  const int N = detail::zeta_em_cutoff;
  const double logN = std::log(static_cast<double>(N));
  const bool at_pole = std::abs(s0 - 1.0) < 1e-9;

  // exp(-(s0+h) log n) as a series in h, shared helper
  const auto power_term = [&](double n, int deg) {
    PowerSeries e = PowerSeries::zero(deg);
    const double ln = std::log(n);
    for (int k = 0; k <= deg; ++k) e.set_coeff(k, std::pow(-ln, k) / std::tgamma(k + 1.0));
    return std::exp(-s0 * ln) * e;
  };

  PowerSeries regular = PowerSeries::zero(hi);
  for (int n = 1; n < N; ++n) regular = regular + power_term(static_cast<double>(n), hi);
  regular = regular + 0.5 * power_term(static_cast<double>(N), hi);

  // Bernoulli corrections: B_{2k}/(2k)! * prod_{j=0}^{2k-2}(s0+j+h) * N^{1-s0-2k} e^{-h logN}
  for (int k = 1; k <= detail::zeta_em_terms; ++k) {
    PowerSeries rising = PowerSeries::constant(1.0, hi);
    for (int j = 0; j <= 2 * k - 2; ++j) {
      PowerSeries lin = PowerSeries::identity(hi);
      lin.set_coeff(0, s0 + static_cast<double>(j));
      rising = rising * lin;
    }
    double fact = 1.0;
    for (int j = 2; j <= 2 * k; ++j) fact *= j;
    const double scale = bernoulli_even[static_cast<std::size_t>(k - 1)] / fact *
                         std::pow(static_cast<double>(N), 1.0 - 2.0 * k);
    regular = regular + (scale * power_term(static_cast<double>(N), hi)) * rising;
  }

  LaurentSeries out(s0, -1, hi);
  for (int k = 0; k <= hi; ++k) out.set_coeff(k, regular.coeff(k));

  // Pole block N^{1-s0-h} / (s0 - 1 + h)
  PowerSeries emh = PowerSeries::zero(hi + 1);
  for (int k = 0; k <= hi + 1; ++k) emh.set_coeff(k, std::pow(-logN, k) / std::tgamma(k + 1.0));
  if (at_pole) {
    // N^{1-s0} = 1; the block is exp(-h logN)/h.
    for (int k = -1; k <= hi; ++k) out.add_coeff(k, emh.coeff(k + 1));
  } else {
    const cplx a = s0 - 1.0;
    PowerSeries geo = PowerSeries::zero(hi);  // 1/(a+h) = (1/a) sum (-h/a)^j
    for (int j = 0; j <= hi; ++j) geo.set_coeff(j, std::pow(-1.0, j) / std::pow(a, j + 1));
    PowerSeries block = std::exp((1.0 - s0) * logN) * (emh.truncated(hi) * geo);
    for (int k = 0; k <= hi; ++k) out.add_coeff(k, block.coeff(k));
  }
  return out;
}

// Taylor coefficients of 1/Gamma(s) at s = 0: (0, 1, gamma, ...), computed
// from log Gamma(1+s) = -gamma s + sum_{k>=2} (-1)^k zeta(k) s^k / k.
inline PowerSeries recip_gamma_series(int depth) {
  if (depth < 2) throw invalid_input("recip_gamma_series: depth must be >= 2");
  PowerSeries logg = PowerSeries::zero(depth);
  logg.set_coeff(1, euler_gamma);
  for (int k = 2; k <= depth; ++k) {
    const double zk = riemann_zeta(cplx(static_cast<double>(k), 0.0)).real();
    logg.set_coeff(k, -std::pow(-1.0, k) * zk / static_cast<double>(k));
  }
  PowerSeries inv_gamma_1p = logg.exp();  // 1/Gamma(1+s)
  // 1/Gamma(s) = s / Gamma(1+s)
  PowerSeries out = PowerSeries::zero(depth);
  for (int k = 1; k <= depth; ++k) out.set_coeff(k, inv_gamma_1p.coeff(k - 1));
  return out;
}

namespace detail {

// Polygamma psi^(m)(x) for real x >= 8 via the asymptotic series.
inline double polygamma_asymptotic(int m, double x) {
  double fact_m1 = 1.0;  // (m-1)!
  for (int j = 2; j < m; ++j) fact_m1 *= j;
  if (m == 0) {
    double s = std::log(x) - 0.5 / x;
    double x2k = x * x;
    for (std::size_t k = 0; k < bernoulli_even.size(); ++k) {
      s -= bernoulli_even[k] / (2.0 * static_cast<double>(k + 1) * x2k);
      x2k *= x * x;
    }
    return s;
  }
  double s = fact_m1 / std::pow(x, m) + fact_m1 * m / (2.0 * std::pow(x, m + 1));
  for (std::size_t k = 0; k < bernoulli_even.size(); ++k) {
    const int twok = 2 * static_cast<int>(k) + 2;
    double ratio = 1.0;  // (2k+m-1)! / (2k)!
    for (int j = twok + 1; j <= twok + m - 1; ++j) ratio *= j;
    s += bernoulli_even[k] * ratio / std::pow(x, twok + m);
  }
  return ((m % 2 == 0) ? -1.0 : 1.0) * s;
}

}  // namespace detail

// Taylor series of 1/Gamma(w0 + h) about a real center w0, window depth
// `depth`.  Built by shifting to a large argument where Stirling-type
// expansions converge, then multiplying the recurrence polynomial back in;
// this stays finite across the zeros of 1/Gamma at the nonpositive integers.
inline PowerSeries recip_gamma_series_at(double w0, int depth) {
  const double base = 30.0;
  const int shift = (w0 >= base) ? 0 : static_cast<int>(std::ceil(base - w0));
  const double wb = w0 + shift;

  PowerSeries neg_loggamma = PowerSeries::zero(depth);
  neg_loggamma.set_coeff(0, -std::lgamma(wb));
  double factk = 1.0;
  for (int k = 1; k <= depth; ++k) {
    factk *= k;
    neg_loggamma.set_coeff(k, -detail::polygamma_asymptotic(k - 1, wb) / factk);
  }
  PowerSeries inv = neg_loggamma.exp();  // 1/Gamma(wb + h)

  // 1/Gamma(w0+h) = [prod_{i=0}^{shift-1} (w0 + i + h)] / Gamma(w0 + shift + h)
  PowerSeries prod = PowerSeries::constant(1.0, depth);
  for (int i = 0; i < shift; ++i) {
    PowerSeries lin = PowerSeries::identity(depth);
    lin.set_coeff(0, cplx(w0 + i, 0.0));
    prod = prod * lin;
  }
  return prod * inv;
}

}  // namespace residua::numerics
