#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "residua/circle/symbol.hpp"
#include "residua/numerics/fit.hpp"
#include "residua/zeta/structure.hpp"

using residua::cplx;
using residua::euler_gamma;
namespace circ = residua::circle;
namespace num = residua::numerics;
namespace zt = residua::zeta;

namespace {

circ::TrigPolynomial random_trig(int degree, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  circ::TrigPolynomial p(degree);
  for (int n = -degree; n <= degree; ++n) p.set_coeff(n, scale * cplx(u(rng), u(rng)));
  return p;
}

circ::CircleSymbol random_symbol(int order, int components, int degree, std::mt19937_64& rng) {
  std::vector<circ::SheetFunctions> comps;
  for (int j = 0; j < components; ++j)
    comps.push_back({random_trig(degree, rng), random_trig(degree, rng)});
  return circ::CircleSymbol(order, std::move(comps));
}

// Independent evaluation: partial Dirichlet sum with the integral tail and
// midpoint correction, for any block built from symbol diagonals.
cplx dirichlet_sum_oracle(const circ::CircleSymbol& a, cplx z, long cutoff) {
  cplx sum = 0.0;  // zero mode first: symbol on the plus sheet at |n| = 1
  for (int j = 0; j < a.component_count(); ++j) sum += a.component(j).plus.mean();
  for (int j = 0; j < a.component_count(); ++j) {
    const cplx c = a.component(j).plus.mean() + a.component(j).minus.mean();
    const cplx s = z - static_cast<double>(a.order() - j);  // sum n^{-s}
    cplx partial = 0.0;
    for (long n = 1; n < cutoff; ++n) partial += std::exp(-s * std::log(static_cast<double>(n)));
    const double N = static_cast<double>(cutoff);
    const cplx NmS = std::exp(-s * std::log(N));
    partial += NmS * N / (s - 1.0) + 0.5 * NmS;
    sum += c * partial;
  }
  return sum;
}

}  // namespace

TEST_CASE("constant symbol gives a shifted zeta block") {
  auto model = zt::SpectralModel::circle(8);
  const cplx c(0.8, -0.1);
  for (int m : {-1, 0, 2}) {
    auto zs = zt::zeta_from_symbol(circ::CircleSymbol::constant(c, m), model);
    auto poles = zs.pole_report();
    REQUIRE(poles.size() == 1);
    CHECK(poles[0].location == Catch::Approx(m + 1.0));
    CHECK(poles[0].order == 1);
    CHECK(std::abs(poles[0].leading - 2.0 * c) < 1e-10);
    // evaluation in the convergence half-plane matches direct sums
    const cplx z(m + 3.0, 0.4);
    CHECK(std::abs(zs.eval(z) - dirichlet_sum_oracle(circ::CircleSymbol::constant(c, m), z,
                                                     20000)) < 1e-9);
  }
}

TEST_CASE("residue at zero equals the wodzicki residue") {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_symbol(1, 4, 2, rng);  // orders 1..-2, includes a -1 part
    auto model = zt::SpectralModel::circle(8);
    auto zs = zt::zeta_from_symbol(a, model);
    CHECK(std::abs(zt::higher_residue(zs, 1) - circ::wodzicki_residue(a)) < 1e-10);
  }
}

TEST_CASE("order zero symbol is regular at zero") {
  std::mt19937_64 rng(51);
  auto a = random_symbol(0, 1, 3, rng);
  auto model = zt::SpectralModel::circle(8);
  auto zs = zt::zeta_from_symbol(a, model);
  const auto w = zs.laurent_at(0.0);
  CHECK(w.pole_order(1e-12) == 0);
  // Partie Finie is the continued value at zero
  CHECK(std::abs(zt::partie_finie(zs) - w.coeff(0)) < 1e-14);
  // direct-sum comparison at Re z = 3
  const cplx z(3.0, 0.0);
  CHECK(std::abs(zs.eval(z) - dirichlet_sum_oracle(a, z, 20000)) < 1e-8);
}

TEST_CASE("zero symbol gives the zero structure") {
  auto model = zt::SpectralModel::circle(8);
  auto zs = zt::zeta_from_symbol(circ::CircleSymbol::zero(), model);
  CHECK(zs.empty());
  CHECK(zs.eval(cplx(2.5, 0.3)) == cplx(0.0));
  CHECK(zs.pole_report().empty());
}

TEST_CASE("mellin image of a double log term") {
  // c t^0 (log t)^2 -> 2! / (z/2)^3 * (1/Gamma(z/2)): the Gamma zero knocks
  // the triple pole down to a double one with c_{-2} = 8, c_{-1} = 4 gamma
  zt::HeatExpansion h({{0.0, 2, cplx(1.0)}});
  auto zs = zt::mellin_map(h, 2.0);
  const auto w = zs.laurent_at(0.0);
  CHECK(w.pole_order(1e-12) == 2);
  CHECK(std::abs(w.coeff(-2) - cplx(8.0)) < 1e-10);
  CHECK(std::abs(w.coeff(-1) - cplx(4.0 * euler_gamma)) < 1e-10);
  CHECK(std::abs(zt::higher_residue(zs, 2) - cplx(8.0)) < 1e-10);
}

TEST_CASE("mellin image of a t^{-1} term") {
  zt::HeatExpansion h({{-1.0, 0, cplx(1.0)}});
  auto zs = zt::mellin_map(h, 2.0);
  auto poles = zs.pole_report();
  REQUIRE(poles.size() == 1);
  CHECK(poles[0].location == Catch::Approx(2.0));
  CHECK(poles[0].order == 1);
  CHECK(std::abs(poles[0].leading - cplx(2.0)) < 1e-10);
  // away from the pole the evaluation matches the closed form
  const cplx z(3.0, 0.0);
  const cplx expect = 1.0 / (z / 2.0 - 1.0) * num::recip_gamma(z / 2.0);
  CHECK(std::abs(zs.eval(z) - expect) < 1e-12);
}

TEST_CASE("empty expansion maps to an entire function") {
  auto zs = zt::mellin_map(zt::HeatExpansion{}, 2.0);
  CHECK(zs.pole_report().empty());
  CHECK(zs.eval(cplx(0.0)) == cplx(0.0));
  CHECK_THROWS_AS(zt::mellin_map(zt::HeatExpansion{}, -1.0), residua::invalid_input);
}

TEST_CASE("higher residue basics") {
  auto model = zt::SpectralModel::circle(8);
  // 2c zeta(z+1): residue at zero is 2c
  const cplx c(0.3, 0.7);
  auto zs = zt::zeta_from_symbol(circ::CircleSymbol::constant(c, -1), model);
  CHECK(std::abs(zt::higher_residue(zs, 1) - 2.0 * c) < 1e-10);
  // regular structure: first residue vanishes
  auto reg = zt::zeta_from_symbol(circ::CircleSymbol::constant(c, 0), model);
  CHECK(std::abs(zt::higher_residue(reg, 1)) < 1e-10);
  CHECK_THROWS_AS(zt::higher_residue(zs, 0), residua::invalid_input);
  CHECK_THROWS_AS(zt::higher_residue(zs, 7), residua::invalid_input);
}

TEST_CASE("partie finie reads the constant term") {
  // zeta(z+1) block: constant term is the Euler-Mascheroni constant
  zt::ZetaStructure zs;
  zs.add(zt::RiemannZetaBlock{cplx(1.0), -1.0});
  CHECK(std::abs(zt::partie_finie(zs) - cplx(euler_gamma)) < 1e-12);
  // shifting by a constant block shifts the constant term
  const cplx kappa(0.25, -1.5);
  zs.add(zt::SpectralTailBlock{{{kappa, 1.0}}, 2.0});
  CHECK(std::abs(zt::partie_finie(zs) - cplx(euler_gamma) - kappa) < 1e-12);
}

TEST_CASE("first residue is a trace on circle symbols") {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<int> ord(-1, 1);
  auto model = zt::SpectralModel::circle(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_symbol(ord(rng), 2, 2, rng);
    auto b = random_symbol(ord(rng), 2, 2, rng);
    auto comm = circ::star_commutator(a, b, 4);
    auto zs = zt::zeta_from_symbol(comm, model);
    CHECK(std::abs(zt::higher_residue(zs, 1)) < 1e-9);
  }
}

TEST_CASE("second residue kills commutator-derived double poles") {
  // the (log t)^2 coefficient of a commutator-derived expansion carries a
  // residue-trace value, which vanishes; other terms only move poles away
  // from zero
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_symbol(0, 2, 2, rng);
    auto b = random_symbol(0, 2, 2, rng);
    const cplx comm_value =
        circ::wodzicki_residue(circ::star_commutator(a, b, 4));
    zt::HeatExpansion h;
    h.add({0.0, 2, comm_value});
    h.add({-1.0, 1, cplx(u(rng), u(rng))});
    h.add({1.0, 2, cplx(u(rng), u(rng))});
    auto zs = zt::mellin_map(h, 2.0);
    CHECK(std::abs(zt::higher_residue(zs, 2)) < 1e-9);
  }
}

TEST_CASE("convergent trace sums match the partie finie for low orders") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_symbol(-2, 2, 2, rng);  // orders -2, -3
    auto model = zt::SpectralModel::circle(8);
    auto zs = zt::zeta_from_symbol(a, model);
    CHECK(zs.laurent_at(0.0).pole_order(1e-12) == 0);
    const cplx direct = dirichlet_sum_oracle(a, cplx(0.0), 2000000);
    CHECK(std::abs(zt::partie_finie(zs) - direct) < 1e-8);
  }
}

TEST_CASE("mellin poles reproduce fitted heat coefficients") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // terms whose poles sit away from the Gamma zeros: alpha = -1 and -0.5
  const cplx c1(1.0 + 0.5 * u(rng), 0.0), c2(0.5 + 0.3 * u(rng), 0.0);
  zt::HeatExpansion truth({{-1.0, 0, c1}, {-0.5, 0, c2}});
  std::vector<std::pair<double, cplx>> samples;
  for (int i = 0; i < 60; ++i) {
    const double t = 1e-4 * std::pow(1e4, i / 59.0);
    samples.emplace_back(t, truth.eval(t));
  }
  num::FitTermSpec spec({{-1.0, 0}, {-0.5, 0}});
  const auto fit = num::fit_log_expansion(samples, spec);
  zt::HeatExpansion fitted({{-1.0, 0, fit.coefficients[0]}, {-0.5, 0, fit.coefficients[1]}});
  auto zs = zt::mellin_map(fitted, 2.0);
  auto poles = zs.pole_report();
  REQUIRE(poles.size() == 2);
  // invert the block residue formula: leading = 2 c / Gamma(-alpha)
  const cplx rec1 = poles[0].leading / (2.0 * num::recip_gamma(cplx(0.5)));  // alpha=-0.5 at z=1
  const cplx rec2 = poles[1].leading / (2.0 * num::recip_gamma(cplx(1.0)));  // alpha=-1 at z=2
  CHECK(std::abs(rec1 - c2) <= 1e-4 * std::abs(c2));
  CHECK(std::abs(rec2 - c1) <= 1e-4 * std::abs(c1));
}
