#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "residua/numerics/special.hpp"

using residua::cplx;
using residua::euler_gamma;
using residua::pi;
namespace num = residua::numerics;

namespace {

// Independent oracle for zeta on Re s > 1: partial sum plus the integral
// tail with a midpoint correction and one Bernoulli term.  Different cutoff
// and depth than the library path.
cplx zeta_tail_oracle(cplx s, int cutoff = 10000) {
  cplx sum = 0.0;
  for (int n = 1; n < cutoff; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double N = cutoff;
  const cplx NmS = std::exp(-s * std::log(N));
  return sum + NmS * N / (s - 1.0) + 0.5 * NmS + (1.0 / 12.0) * s * NmS / N;
}

}  // namespace

TEST_CASE("riemann zeta point values") {
  // pi^2/6, continued values at 0 and -1
  CHECK(std::abs(num::riemann_zeta(cplx(2.0)) - zeta_tail_oracle(cplx(2.0))) < 1e-12);
  CHECK(std::abs(num::riemann_zeta(cplx(2.0)) - cplx(1.6449340668482264)) < 1e-12);
  CHECK(std::abs(num::riemann_zeta(cplx(0.0)) - cplx(-0.5)) < 1e-12);
  CHECK(std::abs(num::riemann_zeta(cplx(-1.0)) - cplx(-1.0 / 12.0)) < 1e-12);
  CHECK(std::abs(num::riemann_zeta(cplx(3.0)) - zeta_tail_oracle(cplx(3.0))) < 1e-12);
  CHECK_THROWS_AS(num::riemann_zeta(cplx(1.0)), residua::invalid_input);
}

TEST_CASE("riemann zeta functional equation on a left strip grid") {
  // zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s); the right-hand
  // side is evaluated with the independent tail oracle.
  int checked = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 5; ++j) {
      const cplx s(-5.0 + 0.5 * i, -2.0 + 1.0 * j);
      const cplx lhs = num::riemann_zeta(s);
      const cplx rhs = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(pi)) *
                       num::sin_pi(0.5 * s) * num::gamma_fn(1.0 - s) *
                       zeta_tail_oracle(1.0 - s);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
      ++checked;
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("zeta laurent window at the pole") {
  const auto w = num::riemann_zeta_laurent(cplx(1.0), 2);
  CHECK(std::abs(w.coeff(-1) - cplx(1.0)) < 1e-13);
  // limit oracle for the constant term: lim_{s->1} (zeta(s) - 1/(s-1))
  const double h = 1e-4;
  const cplx limit = 0.5 * (num::riemann_zeta(cplx(1.0 + h)) - 1.0 / cplx(h) +
                            num::riemann_zeta(cplx(1.0 - h)) + 1.0 / cplx(h));
  CHECK(std::abs(w.coeff(0) - limit) < 1e-7);
  CHECK(std::abs(w.coeff(0) - cplx(euler_gamma)) < 1e-12);
}

TEST_CASE("zeta laurent windows at regular points") {
  const auto w2 = num::riemann_zeta_laurent(cplx(2.0), 3);
  CHECK(std::abs(w2.coeff(-1)) < 1e-13);
  CHECK(std::abs(w2.coeff(0) - num::riemann_zeta(cplx(2.0))) < 1e-12);

  const auto w0 = num::riemann_zeta_laurent(cplx(0.0), 3);
  CHECK(std::abs(w0.coeff(0) - cplx(-0.5)) < 1e-12);

  // Taylor data reproduces nearby values
  const auto w3 = num::riemann_zeta_laurent(cplx(3.0), 10);
  const cplx approx = w3.eval(cplx(3.1));
  CHECK(std::abs(approx - num::riemann_zeta(cplx(3.1))) < 1e-9);

  CHECK_THROWS_AS(num::riemann_zeta_laurent(cplx(2.0), 0), residua::invalid_input);
}

TEST_CASE("reciprocal gamma series at the origin") {
  const auto s2 = num::recip_gamma_series(2);
  CHECK(std::abs(s2.coeff(0)) < 1e-15);
  CHECK(std::abs(s2.coeff(1) - cplx(1.0)) < 1e-13);
  CHECK(std::abs(s2.coeff(2) - cplx(euler_gamma)) < 1e-12);

  const auto s20 = num::recip_gamma_series(20);
  CHECK(std::abs(s20.eval(cplx(1.0)) - cplx(1.0)) < 1e-8);  // Gamma(1) = 1
  CHECK(std::abs(s20.eval(cplx(0.5)) - cplx(0.5641895835477563)) < 1e-8);  // 1/sqrt(pi)
  CHECK_THROWS_AS(num::recip_gamma_series(1), residua::invalid_input);
}

TEST_CASE("reciprocal gamma point values and zeros") {
  CHECK(std::abs(num::recip_gamma(cplx(0.5)) - cplx(0.5641895835477563)) < 1e-12);
  CHECK(std::abs(num::recip_gamma(cplx(4.0)) - cplx(1.0 / 6.0)) < 1e-13);
  CHECK(std::abs(num::recip_gamma(cplx(0.0))) < 1e-14);
  CHECK(std::abs(num::recip_gamma(cplx(-3.0))) < 1e-14);
}

TEST_CASE("reciprocal gamma series at shifted centers") {
  // regular center: compare against direct values
  const auto at1 = num::recip_gamma_series_at(1.0, 14);
  CHECK(std::abs(at1.eval(cplx(0.2)) - num::recip_gamma(cplx(1.2))) < 1e-10);
  // center at a zero of 1/Gamma: value 0, slope (-1)^k k!
  const auto at_m2 = num::recip_gamma_series_at(-2.0, 6);
  CHECK(std::abs(at_m2.coeff(0)) < 1e-10);
  CHECK(std::abs(at_m2.coeff(1) - cplx(2.0)) < 1e-9);
  const auto at_m3 = num::recip_gamma_series_at(-3.0, 6);
  CHECK(std::abs(at_m3.coeff(1) - cplx(-6.0)) < 1e-8);
}

TEST_CASE("generalized binomial coefficients") {
  const cplx z(0.7, -0.3);
  CHECK(std::abs(num::generalized_binomial(-z, 1) + z) < 1e-15);
  CHECK(std::abs(num::generalized_binomial(-z, 2) - z * (z + 1.0) * 0.5) < 1e-15);
  CHECK(std::abs(num::generalized_binomial(cplx(3.0), 2) - cplx(3.0)) < 1e-15);
  CHECK(std::abs(num::generalized_binomial(cplx(0.0), 3)) < 1e-15);
  CHECK_THROWS_AS(num::generalized_binomial(cplx(1.0), -1), residua::invalid_input);
}
