#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "latdiv/divergence_math.hpp"
#include "latdiv/errors.hpp"
#include "latdiv/lattice.hpp"

namespace latdiv {

// A valuation assigns a value in [0, inf] to every lattice element subject
// to strictness (0 at bottom), monotonicity and the modular law.  Values are
// stored aligned with the lattice's element indexing; the owning lattice is
// passed alongside.
struct Valuation {
  std::vector<double> values;

  double operator()(std::size_t i) const { return values[i]; }
};

enum class ValuationLaw { none, strictness, monotonicity, modularity };

struct ValuationViolation {
  ValuationLaw law = ValuationLaw::none;
  std::size_t a = 0, b = 0;  // witnessing elements
  std::string message;

  bool ok() const { return law == ValuationLaw::none; }
};

// Checks the three laws; returns the first violation found, or ok().
// Equalities involving +inf hold when both sides are infinite.
ValuationViolation check_valuation(const Lattice& lat, const std::vector<double>& values,
                                   double tol = 1e-9);

// Validating constructor; throws InvalidValuation with the violation message.
Valuation make_valuation(const Lattice& lat, std::vector<double> values, double tol = 1e-9);

// Increments dmu(j) = mu(j) - mu(j^-), aligned with join_irreducibles(lat).
// An infinite mu(j) gives an infinite increment.
std::vector<double> increments(const Lattice& lat, const Valuation& mu);

struct DivergenceResult {
  double value = 0.0;
  bool domination_ok = true;  // no irreducible with dnu = 0 < dmu
  std::vector<double> contributions;  // aligned with join_irreducibles
};

// D(mu || nu) = sum over join-irreducibles of f(dmu/dnu) dnu on a finite
// distributive lattice.  Throws NotDistributive otherwise.
DivergenceResult lattice_divergence(const Lattice& lat, const Valuation& mu,
                                    const Valuation& nu);

// Divergence accumulated along one maximal chain; for any two valuations
// on a finite lattice all maximal chains give the same value.
double chain_divergence(const Lattice& lat, const Valuation& mu, const Valuation& nu,
                        const std::vector<std::size_t>& chain);

// sup over sublattices containing the bottom of the restricted divergence.
// With no explicit list, all such sublattices are enumerated, which is only
// allowed up to max_size elements (default 10; TooLarge beyond).
double divergence_via_sublattice_sup(
    const Lattice& lat, const Valuation& mu, const Valuation& nu,
    const std::optional<std::vector<std::vector<std::size_t>>>& sublattices = std::nullopt,
    std::size_t max_size = 10);

// Checks that `values` is strict, monotone and super-modular on the lattice.
ValuationViolation check_supermodular(const Lattice& lat, const std::vector<double>& values,
                                      double tol = 1e-9);

// cocl(x): the smallest y <= x with mu(y) = mu(x).  Requires mu strict,
// monotone and super-modular (throws NotSuperModular otherwise); these laws
// make the equal-value lower bounds closed under meet.
std::size_t cocl(const Lattice& lat, const std::vector<double>& values, std::size_t x,
                 double tol = 1e-12);

struct CoClosedLattice {
  Lattice lattice;
  std::vector<std::size_t> original_index;  // co-closed lattice element -> source element
};

// Sublattice of fixed points of cocl under the induced order.  When the
// function is a valuation the result is checked against the modular law.
CoClosedLattice co_closed_lattice(const Lattice& lat, const std::vector<double>& values,
                                  double tol = 1e-12);

}  // namespace latdiv
