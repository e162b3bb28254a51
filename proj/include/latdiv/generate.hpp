#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "latdiv/entropy.hpp"
#include "latdiv/fca.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/martingale.hpp"
#include "latdiv/measure.hpp"
#include "latdiv/valuation.hpp"

// Deterministic random instance generators.  Everything is seeded
// explicitly; the same engine state always yields the same instance.
namespace latdiv::gen {

using Rng = std::mt19937_64;

// A strict partial order on {0..n-1} as a leq matrix (reflexive closure).
std::vector<std::vector<bool>> random_poset(Rng& rng, std::size_t n, double edge_prob = 0.4);

// Downset lattice of a poset; distributive by construction.  Elements are
// named by their member lists.
Lattice downset_lattice(const std::vector<std::vector<bool>>& poset_leq);

Lattice random_distributive_lattice(Rng& rng, std::size_t max_points = 6);

// Valuation on a distributive lattice from nonnegative per-irreducible
// increments: value(m) = sum of increments of irreducibles below m.
Valuation valuation_from_increments(const Lattice& lat, const std::vector<double>& incr);

Valuation random_valuation(Rng& rng, const Lattice& lat, bool strictly_positive = false);

// A lattice carrying a pair of valuations, for divergence experiments.
struct ValuatedLattice {
  Lattice lattice;
  Valuation mu;
  Valuation nu;
};

// Random valuated lattice composed from chain, B2, N5 and M3 blocks via
// ordinal sums and direct products.  Non-distributive whenever an N5 or M3
// block enters.  Increments of nu vanish only where the lattice structure
// forces those of mu to vanish too, so divergences stay finite.  At most
// max_irreducibles join-irreducibles.
ValuatedLattice random_valuated_lattice(Rng& rng, std::size_t max_irreducibles = 6,
                                        bool allow_nondistributive = true);

FormalContext random_context(Rng& rng, std::size_t max_objects = 6,
                             std::size_t max_attributes = 6);

// Context representing an arbitrary finite lattice via l1 I l2 <=> l1 <= l2;
// its concept lattice is isomorphic to the input.
FormalContext context_of_lattice(const Lattice& lat);

// Joint distribution of `vars` binary variables with Dirichlet(1) weights.
JointDistribution random_joint(Rng& rng, std::size_t vars);

DiscreteMeasure random_measure(Rng& rng, std::size_t atoms, bool strictly_positive);

// Random nested partitions, coarse to fine, ending in a partition that may
// or may not separate every atom.
RefinementSequence random_refinement(Rng& rng, std::size_t atoms, std::size_t levels);

// Random martingale: a nonnegative terminal density with E_Q = 1,
// conditionally averaged down the refinement.
MartingalePath random_martingale(Rng& rng, std::size_t atoms, std::size_t levels);

}  // namespace latdiv::gen
