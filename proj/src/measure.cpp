#include "latdiv/measure.hpp"

#include <algorithm>
#include <cmath>

namespace latdiv {

DiscreteMeasure DiscreteMeasure::build(
    std::vector<double> weights,
    std::optional<std::vector<std::pair<double, double>>> cells) {
  for (double w : weights)
    if (std::isnan(w) || w < 0.0 || std::isinf(w))
      throw ValidationError("atom weights must be finite nonnegative reals");
  if (cells && cells->size() != weights.size())
    throw ValidationError("cell list must match the number of atoms");
  DiscreteMeasure m;
  m.n = weights.size();
  m.weights = std::move(weights);
  m.cells = std::move(cells);
  return m;
}

double DiscreteMeasure::total() const {
  double t = 0.0;
  for (double w : weights) t += w;
  return t;
}

double DiscreteMeasure::mass(const std::vector<std::size_t>& block) const {
  double t = 0.0;
  for (std::size_t i : block) t += weights[i];
  return t;
}

Partition Partition::build(std::size_t n, std::vector<std::vector<std::size_t>> blocks) {
  Partition p;
  p.block_of.assign(n, blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InvalidPartition("empty block");
    for (std::size_t i : blocks[b]) {
      if (i >= n) throw InvalidPartition("atom index out of range");
      if (p.block_of[i] != blocks.size()) throw InvalidPartition("blocks overlap");
      p.block_of[i] = b;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (p.block_of[i] == blocks.size()) throw InvalidPartition("blocks do not cover the ground set");
  p.blocks = std::move(blocks);
  return p;
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[i] = {i};
  return build(n, std::move(blocks));
}

RefinementSequence RefinementSequence::build(std::vector<Partition> levels) {
  if (levels.empty()) throw NotARefinement("refinement sequence needs at least one level");
  const std::size_t n = levels.front().n();
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    if (levels[k + 1].n() != n) throw NotARefinement("levels disagree on the ground set");
    for (const auto& block : levels[k + 1].blocks) {
      std::size_t parent = levels[k].block_of[block.front()];
      for (std::size_t i : block)
        if (levels[k].block_of[i] != parent)
          throw NotARefinement("a finer block crosses a coarser block");
    }
  }
  RefinementSequence r;
  r.levels = std::move(levels);
  return r;
}

RefinementSequence RefinementSequence::dyadic(std::size_t max_level) {
  const std::size_t n = std::size_t{1} << max_level;
  std::vector<Partition> levels;
  for (std::size_t k = 1; k <= max_level; ++k) {
    const std::size_t width = n >> k;
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t b = 0; b < (std::size_t{1} << k); ++b) {
      std::vector<std::size_t> block(width);
      for (std::size_t i = 0; i < width; ++i) block[i] = b * width + i;
      blocks.push_back(std::move(block));
    }
    levels.push_back(Partition::build(n, std::move(blocks)));
  }
  return build(std::move(levels));
}

double kl_divergence(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.n != nu.n) throw GroundSetMismatch("measures live on different ground sets");
  double d = 0.0;
  for (std::size_t i = 0; i < mu.n; ++i) d += scalar_divergence(mu.weights[i], nu.weights[i]);
  return d;
}

DiscreteMeasure restrict_measure(const DiscreteMeasure& mu, const Partition& p) {
  if (p.n() != mu.n) throw InvalidPartition("partition does not match the ground set");
  std::vector<double> w;
  w.reserve(p.blocks.size());
  for (const auto& block : p.blocks) w.push_back(mu.mass(block));
  return DiscreteMeasure::build(std::move(w));
}

ProjectionResult projection_density(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                    const Partition& p) {
  if (mu.n != nu.n) throw GroundSetMismatch("measures live on different ground sets");
  if (p.n() != mu.n) throw InvalidPartition("partition does not match the ground set");

  ProjectionResult res;
  res.density.assign(mu.n, 1.0);
  std::vector<double> projected(mu.n, 0.0);
  for (const auto& block : p.blocks) {
    double mb = mu.mass(block), nb = nu.mass(block);
    if (nb == 0.0 && mb > 0.0)
      throw DominationFailure("nu vanishes on a block with positive mu mass");
    double f = (mb == 0.0 && nb == 0.0) ? 1.0 : mb / nb;
    for (std::size_t i : block) {
      res.density[i] = f;
      projected[i] = f * nu.weights[i];
    }
    res.restricted_divergence += scalar_divergence(mb, nb);
  }
  res.projected = DiscreteMeasure::build(std::move(projected), nu.cells);

  // D(mu_n || nu) telescopes to the restricted divergence; guard the
  // identity rather than assume it.
  double check = kl_divergence(res.projected, nu);
  if (std::abs(check - res.restricted_divergence) >
      1e-9 * (1.0 + std::abs(res.restricted_divergence)))
    throw AssertionFailure("projection divergence identity failed");
  return res;
}

double pythagorean_gap(const DiscreteMeasure& theta, const DiscreteMeasure& mu,
                       const DiscreteMeasure& nu, const Partition& p) {
  auto proj = projection_density(mu, nu, p);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    double tb = theta.mass(p.blocks[b]), mb = mu.mass(p.blocks[b]);
    if (std::abs(tb - mb) > 1e-9 * (1.0 + std::abs(mb)))
      throw ConstraintViolation("theta does not match mu on every block");
  }
  double lhs = kl_divergence(theta, nu);
  double mid = kl_divergence(theta, proj.projected);
  double rhs = proj.restricted_divergence;
  if (std::isinf(lhs) || std::isinf(mid) || std::isinf(rhs))
    throw DominationFailure("Pythagorean identity needs finite divergences");
  return lhs - mid - rhs;
}

std::pair<DiscreteMeasure, DiscreteMeasure> measure_join_meet(
    const std::vector<DiscreteMeasure>& measures) {
  if (measures.empty()) throw ValidationError("need at least one measure");
  const std::size_t n = measures.front().n;
  for (const auto& m : measures)
    if (m.n != n) throw GroundSetMismatch("measures live on different ground sets");
  std::vector<double> hi(n), lo(n);
  for (std::size_t i = 0; i < n; ++i) {
    hi[i] = lo[i] = measures.front().weights[i];
    for (const auto& m : measures) {
      hi[i] = std::max(hi[i], m.weights[i]);
      lo[i] = std::min(lo[i], m.weights[i]);
    }
  }
  return {DiscreteMeasure::build(std::move(hi), measures.front().cells),
          DiscreteMeasure::build(std::move(lo), measures.front().cells)};
}

namespace {

double l1_distance(const std::vector<double>& f, const std::vector<double>& g,
                   const DiscreteMeasure& nu) {
  double d = 0.0;
  for (std::size_t i = 0; i < nu.n; ++i) d += std::abs(f[i] - g[i]) * nu.weights[i];
  return d;
}

Partition augment_with_set(const Partition& p, const std::vector<std::size_t>& set) {
  std::vector<char> in_set(p.n(), 0);
  for (std::size_t i : set) in_set[i] = 1;
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& block : p.blocks) {
    std::vector<std::size_t> inside, outside;
    for (std::size_t i : block) (in_set[i] ? inside : outside).push_back(i);
    if (!inside.empty()) blocks.push_back(std::move(inside));
    if (!outside.empty()) blocks.push_back(std::move(outside));
  }
  return Partition::build(p.n(), std::move(blocks));
}

}  // namespace

ConvergenceReport rn_approximate(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                 const RefinementSequence& refinement,
                                 const std::vector<std::vector<std::size_t>>& test_sets) {
  if (mu.n != nu.n) throw GroundSetMismatch("measures live on different ground sets");
  const std::size_t levels = refinement.levels.size();
  const double mu_total = mu.total();

  // Finite divergence is required at the finest level.
  for (const auto& block : refinement.levels.back().blocks)
    if (nu.mass(block) == 0.0 && mu.mass(block) > 0.0)
      throw DominationFailure("nu vanishes on a finest-level block with positive mu mass");

  ConvergenceReport rep;
  rep.d_full = kl_divergence(mu, nu);
  rep.mu_total = mu_total;

  std::vector<ProjectionResult> proj;
  proj.reserve(levels);
  for (const auto& p : refinement.levels) proj.push_back(projection_density(mu, nu, p));

  for (std::size_t k = 0; k < levels; ++k) {
    LevelDiagnostics ld;
    ld.level = k + 1;
    ld.d_restricted = proj[k].restricted_divergence;
    ld.gap = rep.d_full - ld.d_restricted;
    ld.l1_to_final = l1_distance(proj[k].density, proj.back().density, nu);
    rep.levels.push_back(ld);
    rep.densities.push_back(proj[k].density);
    if (k > 0 && rep.levels[k].gap > rep.levels[k - 1].gap + 1e-12) rep.gaps_monotone = false;
  }

  const double tol = 1e-9;
  for (std::size_t m = 0; m < levels; ++m) {
    for (std::size_t n = m + 1; n < levels; ++n) {
      PairDiagnostics pd;
      pd.m = m + 1;
      pd.n = n + 1;
      pd.l1 = l1_distance(proj[n].density, proj[m].density, nu);
      pd.d_pair = kl_divergence(proj[n].projected, proj[m].projected);
      pd.pinsker_residual =
          mu_total > 0.0 ? pd.l1 * pd.l1 / (2.0 * mu_total) - pd.d_pair : -pd.d_pair;

      std::vector<double> ymax(mu.n), ymin(mu.n);
      for (std::size_t i = 0; i < mu.n; ++i) {
        ymax[i] = ymin[i] = proj[m].density[i];
        for (std::size_t j = m + 1; j <= n; ++j) {
          ymax[i] = std::max(ymax[i], proj[j].density[i]);
          ymin[i] = std::min(ymin[i], proj[j].density[i]);
        }
      }
      for (std::size_t i = 0; i < mu.n; ++i) {
        pd.ymax_integral += ymax[i] * nu.weights[i];
        pd.ymin_integral += ymin[i] * nu.weights[i];
      }
      pd.env_max_residual = scalar_divergence(mu_total, pd.ymax_integral) - pd.d_pair;
      pd.env_min_residual = scalar_divergence(mu_total, pd.ymin_integral) - pd.d_pair;

      // Blockwise bounds on the coarser algebra F_m against the join/meet
      // of the projected measures for j in [m, n].
      std::vector<DiscreteMeasure> between;
      for (std::size_t j = m; j <= n; ++j) between.push_back(proj[j].projected);
      auto [join_m, meet_m] = measure_join_meet(between);
      const Partition& coarse = refinement.levels[m];
      double d_join = kl_divergence(restrict_measure(proj[n].projected, coarse),
                                    restrict_measure(join_m, coarse));
      double d_meet = kl_divergence(restrict_measure(proj[n].projected, coarse),
                                    restrict_measure(meet_m, coarse));
      pd.block_join_residual = d_join - pd.d_pair;
      pd.block_meet_residual = d_meet - pd.d_pair;

      // Diagnostic blended seminorm with the levels as the exhausting
      // sequence; at desk scale every level sees the whole ground set.
      for (std::size_t i = 1; i <= levels; ++i)
        pd.blended_seminorm += std::pow(0.5, static_cast<double>(i)) * pd.l1 / (1.0 + pd.l1);

      for (double r : {pd.pinsker_residual, pd.env_max_residual, pd.env_min_residual,
                       pd.block_join_residual, pd.block_meet_residual})
        if (r > tol) ++rep.inequality_violations;
      rep.pairs.push_back(std::move(pd));
    }
  }

  for (const auto& set : test_sets) {
    SetTrace trace;
    trace.set = set;
    for (std::size_t i : set) {
      if (i >= mu.n) throw ValidationError("test set index out of range");
      trace.mu_exact += mu.weights[i];
    }
    for (std::size_t k = 0; k < levels; ++k) {
      double raw = 0.0;
      for (std::size_t i : set) raw += proj[k].density[i] * nu.weights[i];
      trace.per_level.push_back(raw);
      auto augmented = projection_density(mu, nu, augment_with_set(refinement.levels[k], set));
      double aug = 0.0;
      for (std::size_t i : set) aug += augmented.density[i] * nu.weights[i];
      trace.augmented.push_back(aug);
    }
    rep.set_traces.push_back(std::move(trace));
  }
  return rep;
}

}  // namespace latdiv
