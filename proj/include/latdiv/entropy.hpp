#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "latdiv/errors.hpp"
#include "latdiv/lattice.hpp"

namespace latdiv {

// A finite joint distribution.  Outcome values are opaque strings; only
// equality matters for marginalization.  Probabilities must be nonnegative
// and sum to 1 within 1e-12.
class JointDistribution {
 public:
  static JointDistribution build(std::vector<std::string> variables,
                                 std::vector<std::pair<std::vector<std::string>, double>> outcomes);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::pair<std::vector<std::string>, double>>& outcomes() const {
    return outcomes_;
  }
  std::size_t variable_index(const std::string& name) const;
  std::uint64_t full_set() const { return variables_.empty() ? 0 : (~std::uint64_t{0} >> (64 - variables_.size())); }

 private:
  std::vector<std::string> variables_;
  std::vector<std::pair<std::vector<std::string>, double>> outcomes_;
};

// Entropy (in nats) of the marginal on the variable subset given as a
// bitmask.  subset_entropy(joint, 0) = 0.
double subset_entropy(const JointDistribution& joint, std::uint64_t subset);

// All 2^n subset entropies, indexed by bitmask.  Throws TooManyVariables
// beyond 12 variables.
std::vector<double> entropy_table(const JointDistribution& joint);

struct ShannonReport {
  bool ok = false;
  // Smallest slack seen for each inequality; negative means a violation.
  double strictness_slack = 0.0;    // -|H(empty)|
  double monotonicity_slack = 0.0;  // min over S subset T of H(T) - H(S)
  double submodularity_slack = 0.0; // min over S,T of H(S)+H(T)-H(S^T)-H(SvT)
  std::uint64_t worst_mono_s = 0, worst_mono_t = 0;
  std::uint64_t worst_sub_s = 0, worst_sub_t = 0;
};

// Checks the three Shannon inequalities over every subset pair.
ShannonReport shannon_check(const JointDistribution& joint, double tol = 1e-9);

// Functional dependency closure: all variables Z with H(S + {Z}) = H(S),
// iterated to a fixed point.  Equality within `tol` nats.
std::uint64_t functional_closure(const JointDistribution& joint, std::uint64_t subset,
                                 double tol = 1e-9);

struct DependencyLattice {
  Lattice lattice;                       // closed variable sets ordered by inclusion
  std::vector<std::uint64_t> closed_sets;  // aligned with lattice elements
  std::vector<double> entropies;           // aligned with lattice elements
};

// Lattice of closed variable sets with meet = intersection and join =
// closure of the union.  The restricted entropy is checked to be strict,
// monotone and submodular on the result.
DependencyLattice dependency_lattice(const JointDistribution& joint, double tol = 1e-9);

std::string render_variable_set(const JointDistribution& joint, std::uint64_t subset);

}  // namespace latdiv
