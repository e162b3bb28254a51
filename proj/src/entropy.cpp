#include "latdiv/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "latdiv/divergence_math.hpp"

namespace latdiv {

JointDistribution JointDistribution::build(
    std::vector<std::string> variables,
    std::vector<std::pair<std::vector<std::string>, double>> outcomes) {
  if (variables.size() > 62) throw TooManyVariables("more than 62 variables");
  JointDistribution j;
  for (const auto& v : variables)
    if (std::count(variables.begin(), variables.end(), v) != 1)
      throw ValidationError("duplicate variable: " + v);
  double total = 0.0;
  for (const auto& [values, p] : outcomes) {
    if (values.size() != variables.size())
      throw ValidationError("outcome arity does not match the variable list");
    if (!(p >= 0.0)) throw ValidationError("negative or non-numeric probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("probabilities do not sum to 1");
  j.variables_ = std::move(variables);
  j.outcomes_ = std::move(outcomes);
  return j;
}

std::size_t JointDistribution::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  throw UnknownIdentifier("unknown variable: " + name);
}

double subset_entropy(const JointDistribution& joint, std::uint64_t subset) {
  std::map<std::vector<std::string>, double> marginal;
  std::vector<std::string> key;
  for (const auto& [values, p] : joint.outcomes()) {
    if (p == 0.0) continue;
    key.clear();
    for (std::size_t i = 0; i < values.size(); ++i)
      if (subset >> i & 1) key.push_back(values[i]);
    marginal[key] += p;
  }
  double h = 0.0;
  for (const auto& [k, p] : marginal)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

std::vector<double> entropy_table(const JointDistribution& joint) {
  const std::size_t n = joint.variables().size();
  if (n > 12) throw TooManyVariables("subset enumeration limited to 12 variables");
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < table.size(); ++s) table[s] = subset_entropy(joint, s);
  return table;
}

ShannonReport shannon_check(const JointDistribution& joint, double tol) {
  auto h = entropy_table(joint);
  const std::uint64_t full = h.size() - 1;
  ShannonReport rep;
  rep.strictness_slack = -std::abs(h[0]);
  rep.monotonicity_slack = kInf;
  rep.submodularity_slack = kInf;
  for (std::uint64_t s = 0; s <= full; ++s) {
    // Subsets T of the complement give all supersets s|t of s.
    std::uint64_t comp = full & ~s;
    for (std::uint64_t t = comp;; t = (t - 1) & comp) {
      double slack = h[s | t] - h[s];
      if (slack < rep.monotonicity_slack) {
        rep.monotonicity_slack = slack;
        rep.worst_mono_s = s;
        rep.worst_mono_t = s | t;
      }
      if (t == 0) break;
    }
    for (std::uint64_t t = s; t <= full; ++t) {
      double slack = h[s] + h[t] - h[s & t] - h[s | t];
      if (slack < rep.submodularity_slack) {
        rep.submodularity_slack = slack;
        rep.worst_sub_s = s;
        rep.worst_sub_t = t;
      }
    }
  }
  rep.ok = rep.strictness_slack >= -tol && rep.monotonicity_slack >= -tol &&
           rep.submodularity_slack >= -tol;
  return rep;
}

std::uint64_t functional_closure(const JointDistribution& joint, std::uint64_t subset,
                                 double tol) {
  const std::size_t n = joint.variables().size();
  if (n > 12) throw TooManyVariables("closure limited to 12 variables");
  std::uint64_t cl = subset;
  double h = subset_entropy(joint, cl);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t z = 0; z < n; ++z) {
      if (cl >> z & 1) continue;
      std::uint64_t with = cl | (std::uint64_t{1} << z);
      if (subset_entropy(joint, with) <= h + tol) {
        cl = with;
        grew = true;
      }
    }
  }
  return cl;
}

std::string render_variable_set(const JointDistribution& joint, std::uint64_t subset) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < joint.variables().size(); ++i)
    if (subset >> i & 1) {
      if (!first) s += ",";
      s += joint.variables()[i];
      first = false;
    }
  return s + "}";
}

DependencyLattice dependency_lattice(const JointDistribution& joint, double tol) {
  const std::size_t n = joint.variables().size();
  if (n > 12) throw TooManyVariables("dependency lattice limited to 12 variables");

  DependencyLattice out;
  std::vector<std::uint64_t> closed;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
    if (functional_closure(joint, s, tol) == s) closed.push_back(s);

  std::vector<std::string> names;
  for (std::uint64_t s : closed) names.push_back(render_variable_set(joint, s));
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < closed.size(); ++i)
    for (std::size_t j = 0; j < closed.size(); ++j) {
      if (i == j) continue;
      std::uint64_t lo = closed[i], hi = closed[j];
      if ((lo & hi) != lo || lo == hi) continue;
      bool covering = true;
      for (std::uint64_t mid : closed)
        if (mid != lo && mid != hi && (lo & mid) == lo && (mid & hi) == mid) {
          covering = false;
          break;
        }
      if (covering) covers.emplace_back(names[i], names[j]);
    }
  out.lattice = Lattice::build(names, covers);
  out.closed_sets.resize(closed.size());
  out.entropies.resize(closed.size());
  for (std::size_t i = 0; i < closed.size(); ++i) {
    std::size_t pos = out.lattice.index_of(names[i]);
    out.closed_sets[pos] = closed[i];
    out.entropies[pos] = subset_entropy(joint, closed[i]);
  }

  // The restricted entropy must satisfy the three inequalities with the
  // lattice operations (meet = intersection, join = closure of union).
  const Lattice& lat = out.lattice;
  if (std::abs(out.entropies[lat.bottom()]) > tol)
    throw AssertionFailure("restricted entropy is not strict at the bottom closed set");
  for (const auto& [lo, hi] : lat.covers())
    if (out.entropies[lo] > out.entropies[hi] + tol)
      throw AssertionFailure("restricted entropy is not monotone");
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (std::size_t b = a + 1; b < lat.size(); ++b) {
      double lhs = out.entropies[a] + out.entropies[b];
      double rhs = out.entropies[lat.meet(a, b)] + out.entropies[lat.join(a, b)];
      if (lhs + tol < rhs)
        throw AssertionFailure("restricted entropy is not submodular");
    }
  return out;
}

}  // namespace latdiv
