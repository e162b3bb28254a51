#pragma once

#include <cstddef>
#include <vector>

#include "latdiv/measure.hpp"

namespace latdiv {

// Per-atom density values X_1..X_n along a refinement, nonnegative and
// satisfying the martingale property under the base probability Q: on every
// block of level j, the Q-conditional average of X_{j+1} equals X_j.
struct MartingalePath {
  RefinementSequence refinement;
  DiscreteMeasure base;                     // Q, total mass 1
  std::vector<std::vector<double>> levels;  // X_j per atom, one row per level
};

// Largest deviation from the block-conditional-average property.
double martingale_residual(const MartingalePath& path);

// Validating constructor; throws ValidationError when shapes disagree or the
// martingale property fails beyond `tol`.
MartingalePath make_martingale(RefinementSequence refinement, DiscreteMeasure base,
                               std::vector<std::vector<double>> levels, double tol = 1e-9);

// The normalized projection densities X_j = dP_j/dQ with P_j = mu_j/|mu| and
// Q = nu/|nu|; a martingale by construction (asserted).
MartingalePath density_martingale(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                  const RefinementSequence& refinement);

// Both maximal inequalities for one threshold.  The minimal inequality is
// evaluated twice: with the event {X^min <= lambda}, which is the form the
// optional-stopping proof gives, and with the event {X^min >= lambda} as
// printed in some statements; the latter is reported, not gated.
struct DoobRow {
  double lambda = 0.0;
  double max_lhs = 0.0, max_rhs = 0.0;  // lambda Q(X^max >= l)  <=  E[X_n 1]
  double min_lhs = 0.0, min_rhs = 0.0;  // lambda Q(X^min <= l)  >=  E[X_n 1]
  double printed_min_lhs = 0.0, printed_min_rhs = 0.0;  // lambda Q(X^min >= l) vs E[X_n 1]
  double max_residual = 0.0;     // max_lhs - max_rhs, positive = violation
  double min_residual = 0.0;     // min_rhs - min_lhs, positive = violation
  double printed_min_residual = 0.0;  // printed_min_rhs - printed_min_lhs
  bool max_ok = false, min_ok = false, printed_min_ok = false;
};

std::vector<DoobRow> doob_check(const MartingalePath& path, const std::vector<double>& lambdas,
                                double tol = 1e-12);

// gamma(E[X^max_{m,n}]) <= D(P_n || P_m) and the X^min analogue, for levels
// m <= n (1-based).  Requires E_Q[X_n] = 1 (NotNormalized otherwise).
struct GammaBoundResult {
  std::size_t m = 0, n = 0;
  double e_max = 0.0, e_min = 0.0;
  double d_pn_pm = 0.0;
  double max_residual = 0.0;  // gamma(e_max) - d, positive = violation
  double min_residual = 0.0;
  bool ok = false;
};

GammaBoundResult gamma_bound_check(const MartingalePath& path, std::size_t m, std::size_t n,
                                   double tol = 1e-12);

}  // namespace latdiv
