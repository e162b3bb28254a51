#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "latdiv/divergence_math.hpp"
#include "latdiv/errors.hpp"

namespace latdiv {

// A finite measure on {0, ..., n-1}.  When the ground set discretizes
// [0,1], `cells` carries the interval endpoints of each atom.
struct DiscreteMeasure {
  std::size_t n = 0;
  std::vector<double> weights;
  std::optional<std::vector<std::pair<double, double>>> cells;

  static DiscreteMeasure build(std::vector<double> weights,
                               std::optional<std::vector<std::pair<double, double>>> cells =
                                   std::nullopt);

  double total() const;
  double mass(const std::vector<std::size_t>& block) const;
};

// Disjoint blocks covering the ground set.
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of;  // atom -> block index

  static Partition build(std::size_t n, std::vector<std::vector<std::size_t>> blocks);
  static Partition singletons(std::size_t n);
  std::size_t n() const { return block_of.size(); }
};

// Partitions ordered coarse to fine; every block of level i+1 lies inside a
// single block of level i.
struct RefinementSequence {
  std::vector<Partition> levels;

  static RefinementSequence build(std::vector<Partition> levels);
  // Dyadic partitions of 2^max_level atoms, levels 1..max_level.
  static RefinementSequence dyadic(std::size_t max_level);
};

// Unnormalized Kullback-Leibler divergence over atoms:
// sum_i mu_i ln(mu_i/nu_i) - mu_i + nu_i.
double kl_divergence(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Block-sum coarsening of a measure.
DiscreteMeasure restrict_measure(const DiscreteMeasure& mu, const Partition& p);

struct ProjectionResult {
  std::vector<double> density;          // f_n, constant on blocks
  DiscreteMeasure projected;            // mu_n with mu_n(A) = int_A f_n dnu
  double restricted_divergence = 0.0;   // D(mu_|P || nu_|P) = D(mu_n || nu)
};

// Information projection of nu onto the measures agreeing with mu on the
// blocks of P.  The density is mu(B)/nu(B) per block and 1 where both
// vanish.  Throws DominationFailure when nu(B) = 0 < mu(B).
ProjectionResult projection_density(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                    const Partition& p);

// D(theta||nu) - D(theta||mu_n) - D(mu_n||nu); zero by the Pythagorean
// identity whenever theta matches mu on the blocks of P.
double pythagorean_gap(const DiscreteMeasure& theta, const DiscreteMeasure& mu,
                       const DiscreteMeasure& nu, const Partition& p);

// Join and meet of finitely many measures: over atomic ground sets the
// optimal disjoint decomposition picks, per atom, a maximizing
// (resp. minimizing) measure.
std::pair<DiscreteMeasure, DiscreteMeasure> measure_join_meet(
    const std::vector<DiscreteMeasure>& measures);

struct LevelDiagnostics {
  std::size_t level = 0;        // 1-based
  double d_restricted = 0.0;    // D(mu_|P_level || nu_|P_level)
  double gap = 0.0;             // D(mu||nu) - d_restricted
  double l1_to_final = 0.0;     // ||f_level - f_final||_L1(nu)
};

// Diagnostics for a level pair m < n.  All residuals are (bound violation)
// amounts: a positive value means the corresponding inequality failed.
struct PairDiagnostics {
  std::size_t m = 0, n = 0;  // 1-based
  double l1 = 0.0;           // ||f_n - f_m||_L1(nu) = |mu_n - mu_m|
  double d_pair = 0.0;       // D(mu_n || mu_m)
  double pinsker_residual = 0.0;     // |mu_n-mu_m|^2/(2|mu|) - d_pair
  double ymax_integral = 0.0;        // int max_{m<=j<=n} f_j dnu
  double ymin_integral = 0.0;
  double env_max_residual = 0.0;     // D(|mu| || ymax_integral) - d_pair
  double env_min_residual = 0.0;
  double block_join_residual = 0.0;  // D(mu_n|Fm || (join_j mu_j)|Fm) - d_pair
  double block_meet_residual = 0.0;
  double blended_seminorm = 0.0;     // sum_i 2^-i t_i/(1+t_i), t_i = L1 through level i
};

struct SetTrace {
  std::vector<std::size_t> set;
  double mu_exact = 0.0;            // mu(A) from the atoms
  std::vector<double> per_level;    // mu_n(A) = int_A f_n dnu
  std::vector<double> augmented;    // same with P_n refined by {A, complement}
};

struct ConvergenceReport {
  double d_full = 0.0;    // D(mu || nu) over atoms
  double mu_total = 0.0;  // |mu|
  std::vector<LevelDiagnostics> levels;
  std::vector<PairDiagnostics> pairs;  // all m < n
  std::vector<SetTrace> set_traces;
  std::vector<std::vector<double>> densities;  // f per level
  bool gaps_monotone = true;
  std::size_t inequality_violations = 0;  // positive residuals beyond 1e-9
};

// Runs the information projection at every level of the refinement and
// collects every convergence diagnostic: divergence gaps, pairwise L1
// distances, the Pinsker-type bound, min/max envelope bounds, blockwise
// join/meet bounds, and setwise traces for the given test sets.
ConvergenceReport rn_approximate(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                 const RefinementSequence& refinement,
                                 const std::vector<std::vector<std::size_t>>& test_sets = {});

}  // namespace latdiv
