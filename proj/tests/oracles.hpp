#pragma once

// Independent brute-force oracles for the test suites.  Nothing here reuses
// the implementation path it is checking.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "latdiv/divergence_math.hpp"
#include "latdiv/entropy.hpp"
#include "latdiv/fca.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/measure.hpp"
#include "latdiv/valuation.hpp"

namespace oracles {

// Divisor lattice of n with gcd/lcm as the reference meet/join.
inline latdiv::Lattice divisor_lattice(unsigned n) {
  std::vector<unsigned> divisors;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  std::vector<std::string> names;
  for (unsigned d : divisors) names.push_back(std::to_string(d));
  std::vector<std::pair<std::string, std::string>> covers;
  for (unsigned a : divisors)
    for (unsigned b : divisors) {
      if (a == b || b % a != 0) continue;
      bool covering = true;
      for (unsigned c : divisors)
        if (c != a && c != b && c % a == 0 && b % c == 0) { covering = false; break; }
      if (covering) covers.emplace_back(std::to_string(a), std::to_string(b));
    }
  return latdiv::Lattice::build(names, covers);
}

inline unsigned gcd_u(unsigned a, unsigned b) { return b == 0 ? a : gcd_u(b, a % b); }
inline unsigned lcm_u(unsigned a, unsigned b) { return a / gcd_u(a, b) * b; }

// Greatest lower / least upper bound computed straight from the order
// relation, without the precomputed tables.
inline bool glb_lub_from_order(const latdiv::Lattice& lat, std::size_t a, std::size_t b,
                               std::size_t expect_meet, std::size_t expect_join) {
  const std::size_t n = lat.size();
  // expect_meet must be a lower bound dominating all lower bounds.
  if (!lat.leq(expect_meet, a) || !lat.leq(expect_meet, b)) return false;
  for (std::size_t x = 0; x < n; ++x)
    if (lat.leq(x, a) && lat.leq(x, b) && !lat.leq(x, expect_meet)) return false;
  if (!lat.leq(a, expect_join) || !lat.leq(b, expect_join)) return false;
  for (std::size_t x = 0; x < n; ++x)
    if (lat.leq(a, x) && lat.leq(b, x) && !lat.leq(expect_join, x)) return false;
  return true;
}

// Does the lattice contain a sublattice isomorphic to M3 or N5?  Checks all
// five-element subsets closed under meet and join.
inline bool has_m3_or_n5_sublattice(const latdiv::Lattice& lat) {
  const std::size_t n = lat.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::size_t> pick(5);

  auto closed = [&](const std::vector<std::size_t>& s) {
    for (std::size_t a : s)
      for (std::size_t b : s) {
        if (std::find(s.begin(), s.end(), lat.meet(a, b)) == s.end()) return false;
        if (std::find(s.begin(), s.end(), lat.join(a, b)) == s.end()) return false;
      }
    return true;
  };
  auto matches_pattern = [&](const std::vector<std::size_t>& s) {
    // Locate bottom and top of the subset, then the three middles.
    for (std::size_t bot : s) {
      bool is_bot = true;
      for (std::size_t x : s)
        if (!lat.leq(bot, x)) { is_bot = false; break; }
      if (!is_bot) continue;
      for (std::size_t top : s) {
        bool is_top = true;
        for (std::size_t x : s)
          if (!lat.leq(x, top)) { is_top = false; break; }
        if (!is_top || top == bot) continue;
        std::vector<std::size_t> mid;
        for (std::size_t x : s)
          if (x != bot && x != top) mid.push_back(x);
        if (mid.size() != 3) continue;
        auto inc = [&](std::size_t a, std::size_t b) {
          return !lat.leq(a, b) && !lat.leq(b, a);
        };
        // M3: three mutually incomparable middles with pairwise meet bottom
        // and join top.
        bool m3 = inc(mid[0], mid[1]) && inc(mid[0], mid[2]) && inc(mid[1], mid[2]);
        if (m3) {
          bool all = true;
          for (int i = 0; i < 3 && all; ++i)
            for (int j = i + 1; j < 3; ++j)
              if (lat.meet(mid[i], mid[j]) != bot || lat.join(mid[i], mid[j]) != top) {
                all = false;
                break;
              }
          if (all) return true;
        }
        // N5: a chain of two middles plus one incomparable to both.
        for (int c = 0; c < 3; ++c) {
          std::size_t lone = mid[c], u = mid[(c + 1) % 3], v = mid[(c + 2) % 3];
          if (!inc(lone, u) || !inc(lone, v)) continue;
          if (!lat.leq(u, v) && !lat.leq(v, u)) continue;
          if (lat.meet(lone, u) == bot && lat.meet(lone, v) == bot &&
              lat.join(lone, u) == top && lat.join(lone, v) == top)
            return true;
        }
      }
    }
    return false;
  };

  std::vector<bool> mask(n, false);
  std::fill(mask.end() - std::min<std::size_t>(5, n), mask.end(), true);
  if (n < 5) return false;
  std::sort(mask.begin(), mask.end());
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    if (closed(s) && matches_pattern(s)) return true;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return false;
}

// Power-set embedding route for the divergence on a distributive lattice:
// solve for atom weights over the join-irreducibles from the valuation
// values themselves (one equation per lattice element), verify additivity,
// then take the unnormalized KL over atoms.
struct EmbeddingResult {
  std::vector<double> atom_mu;
  std::vector<double> atom_nu;
  bool additive = false;
  double divergence = 0.0;
};

inline EmbeddingResult powerset_embedding_divergence(const latdiv::Lattice& lat,
                                                     const latdiv::Valuation& mu,
                                                     const latdiv::Valuation& nu) {
  auto irr = latdiv::join_irreducibles(lat);
  const std::size_t k = irr.size();
  EmbeddingResult out;

  auto solve = [&](const latdiv::Valuation& v, std::vector<double>& atoms) {
    atoms.assign(k, 0.0);
    // Work through irreducibles in a linear extension of their order; the
    // weight of j is value(j) minus the weights strictly below j.
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      int cx = 0, cy = 0;
      for (std::size_t z = 0; z < k; ++z) {
        if (lat.leq(irr[z].element, irr[x].element)) ++cx;
        if (lat.leq(irr[z].element, irr[y].element)) ++cy;
      }
      return cx < cy;
    });
    for (std::size_t pos : order) {
      double below = 0.0;
      for (std::size_t z = 0; z < k; ++z)
        if (z != pos && lat.leq(irr[z].element, irr[pos].element)) below += atoms[z];
      atoms[pos] = v(irr[pos].element) - below;
    }
    // Additivity must reproduce the valuation on every element.
    for (std::size_t m = 0; m < lat.size(); ++m) {
      double sum = 0.0;
      for (std::size_t z = 0; z < k; ++z)
        if (lat.leq(irr[z].element, m)) sum += atoms[z];
      if (std::abs(sum - v(m)) > 1e-9 * (1.0 + std::abs(v(m)))) return false;
    }
    return true;
  };

  out.additive = solve(mu, out.atom_mu) && solve(nu, out.atom_nu);
  for (std::size_t z = 0; z < k; ++z)
    out.divergence +=
        latdiv::scalar_divergence(std::max(0.0, out.atom_mu[z]), std::max(0.0, out.atom_nu[z]));
  return out;
}

// All concepts by scanning every object subset for closure fixed points.
inline std::set<std::uint64_t> brute_force_extents(const latdiv::FormalContext& ctx) {
  std::set<std::uint64_t> extents;
  const std::size_t g = ctx.objects().size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g); ++s)
    if (ctx.closure(s) == s) extents.insert(s);
  return extents;
}

// Functional closure via full subset enumeration: the union of all T with
// H(S u T) = H(S).
inline std::uint64_t brute_force_closure(const latdiv::JointDistribution& joint,
                                         std::uint64_t s, double tol = 1e-9) {
  const std::size_t n = joint.variables().size();
  double hs = latdiv::subset_entropy(joint, s);
  std::uint64_t cl = s;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t)
    if (latdiv::subset_entropy(joint, s | t) <= hs + tol) cl |= t;
  return cl;
}

// Join/meet of measures by exhaustive assignment of atoms to measures.
inline std::pair<double, double> brute_force_join_meet_mass(
    const std::vector<latdiv::DiscreteMeasure>& ms, const std::vector<std::size_t>& set) {
  const std::size_t k = ms.size();
  double best = -latdiv::kInf, worst = latdiv::kInf;
  std::vector<std::size_t> assign(set.size(), 0);
  while (true) {
    double total = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) total += ms[assign[i]].weights[set[i]];
    best = std::max(best, total);
    worst = std::min(worst, total);
    std::size_t pos = 0;
    while (pos < assign.size() && ++assign[pos] == k) assign[pos++] = 0;
    if (pos == assign.size()) break;
  }
  return {best, worst};
}

}  // namespace oracles
