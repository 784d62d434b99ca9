#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "residua/circle/trig.hpp"

using residua::cplx;
using residua::pi;
namespace circ = residua::circle;

TEST_CASE("coefficients, products and derivatives") {
  auto u = circ::TrigPolynomial::mode(1) + circ::TrigPolynomial::constant(2.0);
  CHECK(u.degree() == 1);
  CHECK(u.coeff(0) == cplx(2.0));
  CHECK(u.coeff(1) == cplx(1.0));
  CHECK(u.coeff(5) == cplx(0.0));

  auto v = circ::TrigPolynomial::mode(-2, cplx(0.0, 1.0));
  auto p = u * v;
  CHECK(p.degree() == 3);
  CHECK(p.coeff(-1) == cplx(0.0, 1.0));
  CHECK(p.coeff(-2) == cplx(0.0, 2.0));

  // derivative of e^{3it} is 3i e^{3it}; D_t multiplies by the mode
  auto du = circ::TrigPolynomial::mode(3).derivative();
  CHECK(du.coeff(3) == cplx(0.0, 3.0));
  CHECK(circ::TrigPolynomial::mode(3).d_t().coeff(3) == cplx(3.0));

  // pointwise evaluation agrees with the defining sum
  const double t = 0.7;
  CHECK(std::abs(u.eval(t) - (2.0 + std::polar(1.0, t))) < 1e-14);

  auto w = u.conj_function();
  CHECK(std::abs(w.eval(t) - std::conj(u.eval(t))) < 1e-14);
}

TEST_CASE("nowhere vanishing sampled check") {
  // cos t hits zero exactly on the power-of-two grid
  auto cos_t = circ::TrigPolynomial::mode(1, 0.5) + circ::TrigPolynomial::mode(-1, 0.5);
  CHECK_FALSE(circ::nowhere_vanishing(cos_t));
  auto shifted = cos_t + circ::TrigPolynomial::constant(2.0);
  CHECK(circ::nowhere_vanishing(shifted));
  CHECK(circ::nowhere_vanishing(circ::TrigPolynomial::mode(3)));
}

TEST_CASE("fourier truncation of the reciprocal") {
  // 1/(2 + e^{it}) has coefficients (-1)^k / 2^{k+1} on the nonnegative modes
  auto u = circ::TrigPolynomial::constant(2.0) + circ::TrigPolynomial::mode(1);
  auto inv = circ::inverse_fourier_truncation(u);
  for (int k = 0; k <= 6; ++k) {
    const double expect = std::pow(-1.0, k) / std::pow(2.0, k + 1);
    CHECK(std::abs(inv.coeff(k) - cplx(expect)) < 1e-13);
  }
  CHECK(std::abs(inv.coeff(-1)) < 1e-13);
  // the truncation really inverts u on the circle
  for (double t : {0.0, 1.1, 2.9, 4.4}) CHECK(std::abs(inv.eval(t) * u.eval(t) - 1.0) < 1e-12);

  auto cos_t = circ::TrigPolynomial::mode(1, 0.5) + circ::TrigPolynomial::mode(-1, 0.5);
  CHECK_THROWS_AS(circ::inverse_fourier_truncation(cos_t), residua::invalid_input);
}

TEST_CASE("trimming removes exact zeros only") {
  auto u = circ::TrigPolynomial::mode(2) - circ::TrigPolynomial::mode(2);
  CHECK(u.trimmed().degree() == 0);
  CHECK(u.is_zero());
  auto v = circ::TrigPolynomial::mode(2, 1e-40);
  CHECK(v.trimmed().degree() == 2);  // tiny but nonzero stays
}
