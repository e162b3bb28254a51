#include "latdiv/martingale.hpp"

#include <algorithm>
#include <cmath>

namespace latdiv {

double martingale_residual(const MartingalePath& path) {
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < path.levels.size(); ++j) {
    for (const auto& block : path.refinement.levels[j].blocks) {
      double qb = 0.0, avg = 0.0;
      for (std::size_t i : block) {
        qb += path.base.weights[i];
        avg += path.levels[j + 1][i] * path.base.weights[i];
      }
      if (qb == 0.0) continue;
      avg /= qb;
      for (std::size_t i : block)
        worst = std::max(worst, std::abs(avg - path.levels[j][i]));
    }
  }
  return worst;
}

MartingalePath make_martingale(RefinementSequence refinement, DiscreteMeasure base,
                               std::vector<std::vector<double>> levels, double tol) {
  if (levels.size() != refinement.levels.size())
    throw ValidationError("one density row per refinement level expected");
  for (const auto& row : levels) {
    if (row.size() != base.n) throw ValidationError("density row does not match the ground set");
    for (double x : row)
      if (std::isnan(x) || x < 0.0) throw ValidationError("densities must be nonnegative");
  }
  if (std::abs(base.total() - 1.0) > 1e-9)
    throw NotNormalized("base measure must have total mass 1");
  MartingalePath path{std::move(refinement), std::move(base), std::move(levels)};
  if (martingale_residual(path) > tol)
    throw ValidationError("martingale property fails beyond tolerance");
  return path;
}

MartingalePath density_martingale(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                  const RefinementSequence& refinement) {
  double k = mu.total(), l = nu.total();
  if (l <= 0.0) throw ValidationError("nu must have positive total mass");
  if (k <= 0.0) throw ValidationError("mu must have positive total mass");

  std::vector<double> q(nu.weights);
  for (double& w : q) w /= l;
  DiscreteMeasure base = DiscreteMeasure::build(std::move(q), nu.cells);

  std::vector<std::vector<double>> rows;
  for (const auto& p : refinement.levels) {
    auto proj = projection_density(mu, nu, p);
    std::vector<double> x(proj.density);
    for (double& v : x) v *= l / k;
    rows.push_back(std::move(x));
  }
  return make_martingale(refinement, std::move(base), std::move(rows), 1e-9);
}

std::vector<DoobRow> doob_check(const MartingalePath& path, const std::vector<double>& lambdas,
                                double tol) {
  const std::size_t n = path.base.n;
  std::vector<double> xmax(n), xmin(n);
  for (std::size_t i = 0; i < n; ++i) {
    xmax[i] = xmin[i] = path.levels.front()[i];
    for (const auto& row : path.levels) {
      xmax[i] = std::max(xmax[i], row[i]);
      xmin[i] = std::min(xmin[i], row[i]);
    }
  }
  const auto& last = path.levels.back();

  std::vector<DoobRow> rows;
  for (double lambda : lambdas) {
    DoobRow r;
    r.lambda = lambda;
    for (std::size_t i = 0; i < n; ++i) {
      double q = path.base.weights[i];
      if (xmax[i] >= lambda) {
        r.max_lhs += lambda * q;
        r.max_rhs += last[i] * q;
      }
      if (xmin[i] <= lambda) {
        r.min_lhs += lambda * q;
        r.min_rhs += last[i] * q;
      }
      if (xmin[i] >= lambda) {
        r.printed_min_lhs += lambda * q;
        r.printed_min_rhs += last[i] * q;
      }
    }
    r.max_residual = r.max_lhs - r.max_rhs;
    r.min_residual = r.min_rhs - r.min_lhs;
    r.printed_min_residual = r.printed_min_rhs - r.printed_min_lhs;
    r.max_ok = r.max_residual <= tol * (1.0 + std::abs(r.max_rhs));
    r.min_ok = r.min_residual <= tol * (1.0 + std::abs(r.min_rhs));
    r.printed_min_ok = r.printed_min_residual <= tol * (1.0 + std::abs(r.printed_min_rhs));
    rows.push_back(r);
  }
  return rows;
}

GammaBoundResult gamma_bound_check(const MartingalePath& path, std::size_t m, std::size_t n,
                                   double tol) {
  if (m < 1 || n < m || n > path.levels.size())
    throw ValidationError("level pair out of range");
  const std::size_t atoms = path.base.n;

  double e_last = 0.0;
  for (std::size_t i = 0; i < atoms; ++i)
    e_last += path.levels.back()[i] * path.base.weights[i];
  if (std::abs(e_last - 1.0) > 1e-9)
    throw NotNormalized("E_Q[X_n] must equal 1");

  GammaBoundResult res;
  res.m = m;
  res.n = n;
  std::vector<double> pn(atoms), pm(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    double hi = path.levels[m - 1][i], lo = path.levels[m - 1][i];
    for (std::size_t j = m - 1; j <= n - 1; ++j) {
      hi = std::max(hi, path.levels[j][i]);
      lo = std::min(lo, path.levels[j][i]);
    }
    res.e_max += hi * path.base.weights[i];
    res.e_min += lo * path.base.weights[i];
    pn[i] = path.levels[n - 1][i] * path.base.weights[i];
    pm[i] = path.levels[m - 1][i] * path.base.weights[i];
  }
  res.d_pn_pm = kl_divergence(DiscreteMeasure::build(pn), DiscreteMeasure::build(pm));
  res.max_residual = gamma_kernel(res.e_max) - res.d_pn_pm;
  res.min_residual = gamma_kernel(res.e_min) - res.d_pn_pm;
  res.ok = res.max_residual <= tol * (1.0 + std::abs(res.d_pn_pm)) &&
           res.min_residual <= tol * (1.0 + std::abs(res.d_pn_pm));
  return res;
}

}  // namespace latdiv
