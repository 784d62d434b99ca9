#pragma once

#include <cmath>

#include "residua/common.hpp"
#include "residua/numerics/linalg.hpp"
#include "residua/numerics/special.hpp"
#include "residua/zeta/model.hpp"

namespace residua::zeta {

// Remainder of the finite commutator identity
//   Delta^{-z} Q - Q Delta^{-z} = sum_{k=1}^{N} binom(-z,k) Q^{(k)} Delta^{-z-k} + R_N,
// Q^{(k)} = ad(Delta)^k Q, evaluated exactly in the eigenbasis of the model.
// Entrywise this is the Taylor remainder of lambda_i^{-z} expanded about
// lambda_j, so the estimated order of R_N drops by one per increment of N.
inline numerics::Matrix cm_remainder(const numerics::Matrix& q, const SpectralModel& model,
                                     cplx z, int n_terms) {
  if (n_terms < 0) throw invalid_input("cm_remainder: negative expansion length");
  const int n = model.size();
  if (q.rows() != n || q.cols() != n)
    throw invalid_input("cm_remainder: operator does not match the model dimension");
  const auto& eigs = model.eigenvalues();
  numerics::Matrix out(n, n);
  std::vector<cplx> binom(static_cast<std::size_t>(n_terms) + 1);
  for (int k = 1; k <= n_terms; ++k)
    binom[static_cast<std::size_t>(k)] = numerics::generalized_binomial(-z, k);
  for (int i = 0; i < n; ++i) {
    const double li = eigs[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const cplx qij = q(i, j);
      if (qij == cplx(0.0)) continue;
      const double lj = eigs[static_cast<std::size_t>(j)];
      cplx bracket = std::exp(-z * std::log(li)) - std::exp(-z * std::log(lj));
      const double dl = li - lj;
      double dlk = 1.0;
      for (int k = 1; k <= n_terms; ++k) {
        dlk *= dl;
        bracket -= binom[static_cast<std::size_t>(k)] * dlk *
                   std::exp(-(z + static_cast<double>(k)) * std::log(lj));
      }
      out(i, j) = qij * bracket;
    }
  }
  return out;
}

}  // namespace residua::zeta
