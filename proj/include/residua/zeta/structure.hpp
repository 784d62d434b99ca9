#pragma once

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "residua/circle/symbol.hpp"
#include "residua/common.hpp"
#include "residua/numerics/laurent.hpp"
#include "residua/numerics/special.hpp"
#include "residua/zeta/model.hpp"

namespace residua::zeta {

// Small-time expansion terms c t^alpha (log t)^j.
struct HeatTerm {
  double alpha = 0.0;
  int log_power = 0;
  cplx coeff;
};

class HeatExpansion {
public:
  HeatExpansion() = default;
  explicit HeatExpansion(std::vector<HeatTerm> terms) {
    for (const auto& t : terms) {
      if (t.log_power < 0 || t.log_power > 2)
        throw invalid_input("HeatExpansion: log power must be in 0..2");
      add(t);
    }
  }
  void add(const HeatTerm& t) {
    if (t.log_power < 0 || t.log_power > 2)
      throw invalid_input("HeatExpansion: log power must be in 0..2");
    if (t.coeff == cplx(0.0)) return;
    for (auto& have : terms_) {
      if (have.alpha == t.alpha && have.log_power == t.log_power) {
        have.coeff += t.coeff;
        return;
      }
    }
    terms_.push_back(t);
    std::sort(terms_.begin(), terms_.end(), [](const HeatTerm& a, const HeatTerm& b) {
      return a.alpha != b.alpha ? a.alpha < b.alpha : a.log_power < b.log_power;
    });
  }
  const std::vector<HeatTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx eval(double t) const {
    if (!(t > 0.0)) throw invalid_input("HeatExpansion::eval: t must be positive");
    cplx s = 0.0;
    for (const auto& term : terms_)
      s += term.coeff * std::pow(t, term.alpha) * std::pow(std::log(t), term.log_power);
    return s;
  }

private:
  std::vector<HeatTerm> terms_;
};

// ---- meromorphic building blocks -----------------------------------------

// coeff * zeta(z - shift): simple pole at z = shift + 1.
struct RiemannZetaBlock {
  cplx coeff;
  double shift = 0.0;
};

// coeff * (-1)^j j! / (z/r + alpha)^{j+1} * (1/Gamma(z/r)): the Mellin image
// of coeff * t^alpha (log t)^j over (0,1].  Pole candidate at z = -r*alpha of
// order j+1, reduced by the zeros of 1/Gamma at z/r = 0, -1, -2, ...
struct MellinPoleBlock {
  cplx coeff;
  double alpha = 0.0;
  int log_power = 0;
  double r = 2.0;
};

// sum_i w_i lambda_i^{-z/r}: entire.
struct SpectralTailBlock {
  std::vector<std::pair<cplx, double>> terms;
  double r = 2.0;
};

using ZetaBlock = std::variant<RiemannZetaBlock, MellinPoleBlock, SpectralTailBlock>;

struct PoleInfo {
  double location = 0.0;
  int order = 0;
  cplx leading;
};

namespace detail {

inline void add_riemann_window(numerics::LaurentSeries& acc, const RiemannZetaBlock& b) {
  const cplx z0 = acc.center();
  const auto w = numerics::riemann_zeta_laurent(z0 - b.shift, acc.highest() + 1);
  for (int k = std::max(acc.lowest(), -1); k <= acc.highest(); ++k)
    acc.add_coeff(k, b.coeff * w.coeff(k));
}

inline void add_mellin_window(numerics::LaurentSeries& acc, const MellinPoleBlock& b) {
  const double z0 = acc.center().real();
  if (std::abs(acc.center().imag()) > 1e-12)
    throw invalid_input("ZetaStructure: windows are taken at real centers");
  const int hi = acc.highest();
  const int j1 = b.log_power + 1;
  const double w0 = z0 / b.r;

  // 1/Gamma(z/r) as a Laurent window with offsets 0..hi+j1
  numerics::PowerSeries gamma_series =
      (std::abs(w0) < 1e-12) ? numerics::recip_gamma_series(hi + j1 + 1)
                             : numerics::recip_gamma_series_at(w0, hi + j1 + 1);
  gamma_series = gamma_series.scaled_argument(cplx(1.0 / b.r));
  numerics::LaurentSeries gamma_win =
      numerics::LaurentSeries::from_power_series(gamma_series, acc.center(), 0, hi + j1);

  // (z/r + alpha)^{-j1} about z0
  numerics::LaurentSeries rational(acc.center(), -j1, hi);
  const double beta = w0 + b.alpha;
  if (std::abs(beta) < 1e-9) {
    rational.set_coeff(-j1, std::pow(b.r, j1));
  } else {
    for (int k = 0; k <= hi; ++k)
      rational.set_coeff(
          k, numerics::generalized_binomial(cplx(-j1), k).real() *
                 std::pow(beta, -j1 - k) * std::pow(1.0 / b.r, k));
  }

  double jfact = 1.0;
  for (int i = 2; i <= b.log_power; ++i) jfact *= i;
  const cplx front = b.coeff * ((b.log_power % 2 == 0) ? 1.0 : -1.0) * jfact;
  const auto prod = rational * gamma_win;
  for (int k = std::max(acc.lowest(), prod.lowest()); k <= std::min(acc.highest(), prod.highest()); ++k)
    acc.add_coeff(k, front * prod.coeff(k));
}

inline void add_tail_window(numerics::LaurentSeries& acc, const SpectralTailBlock& b) {
  const cplx z0 = acc.center();
  for (const auto& [w, lambda] : b.terms) {
    const double L = std::log(lambda) / b.r;
    const cplx base = w * std::exp(-z0 * L);
    double fact = 1.0;
    for (int k = 0; k <= acc.highest(); ++k) {
      if (k > 0) fact *= k;
      acc.add_coeff(k, base * std::pow(-L, k) / fact);
    }
  }
}

}  // namespace detail

// Meromorphic description of z -> Tr(A Delta^{-z/r}) as a finite sum of
// pole-bearing blocks plus entire tails.  Pole orders never exceed 3.
class ZetaStructure {
public:
  ZetaStructure() = default;

  void add(RiemannZetaBlock b) {
    if (b.coeff != cplx(0.0)) blocks_.emplace_back(b);
  }
  void add(MellinPoleBlock b) {
    if (b.log_power < 0 || b.log_power > 2)
      throw invalid_input("ZetaStructure: pole order above the cap of three");
    if (!(b.r > 0.0)) throw invalid_input("ZetaStructure: r must be positive");
    if (b.coeff != cplx(0.0)) blocks_.emplace_back(b);
  }
  void add(SpectralTailBlock b) {
    for (const auto& [w, lambda] : b.terms) {
      (void)w;
      if (!(lambda > 0.0)) throw invalid_input("ZetaStructure: tail eigenvalues must be positive");
    }
    if (!b.terms.empty()) blocks_.emplace_back(std::move(b));
  }

  const std::vector<ZetaBlock>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }

  cplx eval(cplx z) const {
    cplx s = 0.0;
    for (const auto& blk : blocks_) {
      if (const auto* rb = std::get_if<RiemannZetaBlock>(&blk)) {
        s += rb->coeff * numerics::riemann_zeta(z - rb->shift);
      } else if (const auto* mb = std::get_if<MellinPoleBlock>(&blk)) {
        double jfact = 1.0;
        for (int i = 2; i <= mb->log_power; ++i) jfact *= i;
        const cplx w = z / mb->r;
        s += mb->coeff * ((mb->log_power % 2 == 0) ? 1.0 : -1.0) * jfact *
             std::pow(w + mb->alpha, -(mb->log_power + 1)) * numerics::recip_gamma(w);
      } else {
        const auto& tb = std::get<SpectralTailBlock>(blk);
        for (const auto& [wgt, lambda] : tb.terms)
          s += wgt * std::exp(-z / tb.r * std::log(lambda));
      }
    }
    return s;
  }

  numerics::LaurentSeries laurent_at(double z0, int lo = -4, int hi = 4) const {
    numerics::LaurentSeries acc(cplx(z0), lo, hi);
    for (const auto& blk : blocks_) {
      if (const auto* rb = std::get_if<RiemannZetaBlock>(&blk))
        detail::add_riemann_window(acc, *rb);
      else if (const auto* mb = std::get_if<MellinPoleBlock>(&blk))
        detail::add_mellin_window(acc, *mb);
      else
        detail::add_tail_window(acc, std::get<SpectralTailBlock>(blk));
    }
    return acc;
  }

  // Candidate pole locations, their realized orders and leading
  // coefficients.  Orders above three indicate malformed input and are
  // rejected loudly.
  std::vector<PoleInfo> pole_report(double coeff_tol = 1e-10) const {
    std::vector<double> locations;
    double scale = 0.0;
    for (const auto& blk : blocks_) {
      if (const auto* rb = std::get_if<RiemannZetaBlock>(&blk)) {
        locations.push_back(rb->shift + 1.0);
        scale = std::max(scale, std::abs(rb->coeff));
      } else if (const auto* mb = std::get_if<MellinPoleBlock>(&blk)) {
        locations.push_back(-mb->r * mb->alpha);
        scale = std::max(scale, std::abs(mb->coeff));
      }
    }
    std::sort(locations.begin(), locations.end());
    locations.erase(std::unique(locations.begin(), locations.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                    locations.end());
    std::vector<PoleInfo> out;
    for (double loc : locations) {
      const auto w = laurent_at(loc, -4, 0);
      const int order = w.pole_order(coeff_tol * std::max(scale, 1.0));
      if (order > 3)
        throw numeric_error("ZetaStructure: pole of order above three (malformed input)");
      if (order == 0) continue;
      out.push_back({loc, order, w.coeff(-order)});
    }
    return out;
  }

private:
  std::vector<ZetaBlock> blocks_;
};

// Zeta structure of a quantized circle symbol: the diagonal symbol averages
// turn each homogeneous component into a shifted Riemann zeta block, and the
// regularized zero mode contributes a constant entire tail.
inline ZetaStructure zeta_from_symbol(const circle::CircleSymbol& a, const SpectralModel& model) {
  if (model.kind() != SpectralModel::Kind::circle)
    throw invalid_input("zeta_from_symbol: only the circle model is supported");
  ZetaStructure zs;
  if (a.is_zero()) return zs;
  cplx zero_mode = 0.0;
  for (int j = 0; j < a.component_count(); ++j) {
    const auto& comp = a.component(j);
    zs.add(RiemannZetaBlock{comp.plus.mean() + comp.minus.mean(),
                            static_cast<double>(a.order() - j)});
    zero_mode += comp.plus.mean();
  }
  if (zero_mode != cplx(0.0))
    zs.add(SpectralTailBlock{{{zero_mode, 1.0}}, model.order()});
  return zs;
}

// Exact Mellin algebra of a small-time expansion: each term c t^alpha
// (log t)^j integrated over (0,1] against t^{z/r-1}/Gamma(z/r).  The t >= 1
// part of the integral is entire and carries no pole data, so it has no
// block here.
inline ZetaStructure mellin_map(const HeatExpansion& h, double r) {
  if (!(r > 0.0)) throw invalid_input("mellin_map: r must be positive");
  ZetaStructure zs;
  for (const auto& term : h.terms())
    zs.add(MellinPoleBlock{term.coeff, term.alpha, term.log_power, r});
  return zs;
}

// Higher residue: the coefficient c_{-p} of the Laurent window at z = 0,
// equivalently Res_{z=0} z^{p-1} zeta(z).
inline cplx higher_residue(const ZetaStructure& zs, int p) {
  if (p < 1) throw invalid_input("higher_residue: p must be >= 1");
  if (p > 6) throw invalid_input("higher_residue: window too narrow (pole order cap is 3)");
  const auto w = zs.laurent_at(0.0, -std::max(4, p), 1);
  if (w.pole_order(1e-9) > 3)
    throw numeric_error("higher_residue: pole order at zero exceeds three");
  return w.coeff(-p);
}

// Constant term of the Laurent window at z = 0.
inline cplx partie_finie(const ZetaStructure& zs) { return zs.laurent_at(0.0).coeff(0); }

}  // namespace residua::zeta
