#include "latdiv/valuation.hpp"

#include <algorithm>
#include <cmath>

namespace latdiv {

namespace {

bool close(double lhs, double rhs, double tol) {
  if (std::isinf(lhs) || std::isinf(rhs)) return std::isinf(lhs) && std::isinf(rhs);
  return std::abs(lhs - rhs) <= tol * (1.0 + std::abs(lhs) + std::abs(rhs));
}

void require_shape(const Lattice& lat, const std::vector<double>& values) {
  if (values.size() != lat.size())
    throw MissingValue("expected one value per lattice element");
  for (double v : values)
    if (std::isnan(v) || v < 0.0)
      throw MissingValue("values must be nonnegative reals or +inf");
}

}  // namespace

ValuationViolation check_valuation(const Lattice& lat, const std::vector<double>& values,
                                   double tol) {
  require_shape(lat, values);
  ValuationViolation v;
  if (values[lat.bottom()] != 0.0) {
    v.law = ValuationLaw::strictness;
    v.a = v.b = lat.bottom();
    v.message = "strictness fails: value(" + lat.name(lat.bottom()) + ") != 0";
    return v;
  }
  for (const auto& [lo, hi] : lat.covers())
    if (values[lo] > values[hi] + tol) {
      v.law = ValuationLaw::monotonicity;
      v.a = lo;
      v.b = hi;
      v.message = "monotonicity fails on " + lat.name(lo) + " <= " + lat.name(hi);
      return v;
    }
  const std::size_t n = lat.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      double lhs = values[a] + values[b];
      double rhs = values[lat.meet(a, b)] + values[lat.join(a, b)];
      if (!close(lhs, rhs, tol)) {
        v.law = ValuationLaw::modularity;
        v.a = a;
        v.b = b;
        v.message = "modular law fails on (" + lat.name(a) + ", " + lat.name(b) + ")";
        return v;
      }
    }
  return v;
}

Valuation make_valuation(const Lattice& lat, std::vector<double> values, double tol) {
  auto violation = check_valuation(lat, values, tol);
  if (!violation.ok()) throw InvalidValuation(violation.message);
  return Valuation{std::move(values)};
}

std::vector<double> increments(const Lattice& lat, const Valuation& mu) {
  std::vector<double> out;
  for (const auto& j : join_irreducibles(lat)) {
    double hi = mu(j.element), lo = mu(j.lower_cover);
    out.push_back(std::isinf(hi) ? kInf : std::max(0.0, hi - lo));
  }
  return out;
}

DivergenceResult lattice_divergence(const Lattice& lat, const Valuation& mu,
                                    const Valuation& nu) {
  if (!is_distributive(lat)) throw NotDistributive("lattice is not distributive");
  auto dmu = increments(lat, mu);
  auto dnu = increments(lat, nu);
  DivergenceResult res;
  for (std::size_t i = 0; i < dmu.size(); ++i) {
    if (dnu[i] == 0.0 && dmu[i] > 0.0) res.domination_ok = false;
    res.contributions.push_back(scalar_divergence(dmu[i], dnu[i]));
    res.value += res.contributions.back();
  }
  return res;
}

double chain_divergence(const Lattice& lat, const Valuation& mu, const Valuation& nu,
                        const std::vector<std::size_t>& chain) {
  if (!is_maximal_chain(lat, chain))
    throw NotMaximalChain("not a maximal bottom-to-top chain");
  double d = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    double dmu = std::isinf(mu(chain[i + 1])) ? kInf
                                              : std::max(0.0, mu(chain[i + 1]) - mu(chain[i]));
    double dnu = std::isinf(nu(chain[i + 1])) ? kInf
                                              : std::max(0.0, nu(chain[i + 1]) - nu(chain[i]));
    d += scalar_divergence(dmu, dnu);
  }
  return d;
}

namespace {

// Divergence of the valuations restricted to a sublattice: the common value
// along any maximal chain of the sublattice; we walk one canonical chain.
double restricted_divergence(const Lattice& lat, const Valuation& mu, const Valuation& nu,
                             const std::vector<std::size_t>& sub) {
  double d = 0.0;
  std::size_t current = lat.bottom();
  std::size_t top = lat.bottom();
  for (std::size_t x : sub)
    if (lat.leq(top, x)) top = x;
  while (current != top) {
    // Smallest-name minimal element of the sublattice strictly above.
    std::size_t next = lat.size();
    for (std::size_t y : sub) {
      if (y == current || !lat.leq(current, y)) continue;
      bool minimal = true;
      for (std::size_t z : sub)
        if (z != current && z != y && lat.leq(current, z) && lat.leq(z, y)) {
          minimal = false;
          break;
        }
      if (minimal && (next == lat.size() || lat.name(y) < lat.name(next))) next = y;
    }
    double dmu = std::isinf(mu(next)) ? kInf : std::max(0.0, mu(next) - mu(current));
    double dnu = std::isinf(nu(next)) ? kInf : std::max(0.0, nu(next) - nu(current));
    d += scalar_divergence(dmu, dnu);
    current = next;
  }
  return d;
}

}  // namespace

double divergence_via_sublattice_sup(
    const Lattice& lat, const Valuation& mu, const Valuation& nu,
    const std::optional<std::vector<std::vector<std::size_t>>>& sublattices,
    std::size_t max_size) {
  std::vector<std::vector<std::size_t>> subs;
  if (sublattices) {
    subs = *sublattices;
    for (auto& sub : subs) {
      std::sort(sub.begin(), sub.end());
      if (std::find(sub.begin(), sub.end(), lat.bottom()) == sub.end())
        throw ValidationError("sublattice must contain the bottom element");
      for (std::size_t a : sub)
        for (std::size_t b : sub) {
          if (!std::binary_search(sub.begin(), sub.end(), lat.meet(a, b)) ||
              !std::binary_search(sub.begin(), sub.end(), lat.join(a, b)))
            throw ValidationError("subset is not closed under meet and join");
        }
    }
  } else {
    if (lat.size() > max_size)
      throw TooLarge("sublattice enumeration limited to " + std::to_string(max_size) +
                     " elements");
    std::vector<std::size_t> rest;
    for (std::size_t x = 0; x < lat.size(); ++x)
      if (x != lat.bottom()) rest.push_back(x);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
      std::vector<std::size_t> sub{lat.bottom()};
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (mask >> i & 1) sub.push_back(rest[i]);
      std::sort(sub.begin(), sub.end());
      bool closed = true;
      for (std::size_t a : sub) {
        for (std::size_t b : sub)
          if (!std::binary_search(sub.begin(), sub.end(), lat.meet(a, b)) ||
              !std::binary_search(sub.begin(), sub.end(), lat.join(a, b))) {
            closed = false;
            break;
          }
        if (!closed) break;
      }
      if (closed) subs.push_back(std::move(sub));
    }
  }

  double sup = 0.0;
  for (const auto& sub : subs) sup = std::max(sup, restricted_divergence(lat, mu, nu, sub));
  return sup;
}

ValuationViolation check_supermodular(const Lattice& lat, const std::vector<double>& values,
                                      double tol) {
  require_shape(lat, values);
  ValuationViolation v;
  if (values[lat.bottom()] != 0.0) {
    v.law = ValuationLaw::strictness;
    v.a = v.b = lat.bottom();
    v.message = "strictness fails at bottom";
    return v;
  }
  for (const auto& [lo, hi] : lat.covers())
    if (values[lo] > values[hi] + tol) {
      v.law = ValuationLaw::monotonicity;
      v.a = lo;
      v.b = hi;
      v.message = "monotonicity fails on " + lat.name(lo) + " <= " + lat.name(hi);
      return v;
    }
  const std::size_t n = lat.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      double lhs = values[a] + values[b];
      double rhs = values[lat.meet(a, b)] + values[lat.join(a, b)];
      if (std::isinf(lhs) || std::isinf(rhs)) continue;
      if (lhs > rhs + tol * (1.0 + std::abs(lhs) + std::abs(rhs))) {
        v.law = ValuationLaw::modularity;
        v.a = a;
        v.b = b;
        v.message = "super-modularity fails on (" + lat.name(a) + ", " + lat.name(b) + ")";
        return v;
      }
    }
  return v;
}

namespace {

std::size_t cocl_unchecked(const Lattice& lat, const std::vector<double>& values,
                           std::size_t x, double tol) {
  std::size_t y = x;
  for (std::size_t z = 0; z < lat.size(); ++z)
    if (lat.leq(z, x) && std::abs(values[z] - values[x]) <= tol) y = lat.meet(y, z);
  return y;
}

}  // namespace

std::size_t cocl(const Lattice& lat, const std::vector<double>& values, std::size_t x,
                 double tol) {
  auto violation = check_supermodular(lat, values, tol);
  if (!violation.ok()) throw NotSuperModular(violation.message);
  if (x >= lat.size()) throw UnknownElement("element index out of range");
  std::size_t y = cocl_unchecked(lat, values, x, tol);
  if (std::abs(values[y] - values[x]) > tol)
    throw AssertionFailure("equal-value lower bounds are not closed under meet");
  return y;
}

CoClosedLattice co_closed_lattice(const Lattice& lat, const std::vector<double>& values,
                                  double tol) {
  auto violation = check_supermodular(lat, values, tol);
  if (!violation.ok()) throw NotSuperModular(violation.message);

  CoClosedLattice out;
  std::vector<std::string> names;
  for (std::size_t x = 0; x < lat.size(); ++x)
    if (cocl_unchecked(lat, values, x, tol) == x) {
      out.original_index.push_back(x);
      names.push_back(lat.name(x));
    }
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t a : out.original_index)
    for (std::size_t b : out.original_index) {
      if (a == b || !lat.leq(a, b)) continue;
      bool covered = true;
      for (std::size_t c : out.original_index)
        if (c != a && c != b && lat.leq(a, c) && lat.leq(c, b)) {
          covered = false;
          break;
        }
      if (covered) covers.emplace_back(lat.name(a), lat.name(b));
    }
  out.lattice = Lattice::build(names, covers);

  if (check_valuation(lat, values, std::max(tol, 1e-9)).ok() && !is_modular(out.lattice))
    throw AssertionFailure("co-closed lattice of a valuation violates the modular law");
  return out;
}

}  // namespace latdiv
