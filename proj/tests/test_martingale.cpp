#include <doctest.h>

#include <cmath>

#include "latdiv/generate.hpp"
#include "latdiv/martingale.hpp"

using namespace latdiv;

namespace {

DiscreteMeasure rho2x_cells(std::size_t level) {
  const std::size_t n = std::size_t{1} << level;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = (2.0 * static_cast<double>(i) + 1.0) / std::pow(4.0, static_cast<double>(level));
  return DiscreteMeasure::build(std::move(w));
}

DiscreteMeasure uniform_cells(std::size_t level) {
  const std::size_t n = std::size_t{1} << level;
  return DiscreteMeasure::build(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

MartingalePath constant_path(std::size_t atoms, std::size_t levels) {
  auto refinement = RefinementSequence::dyadic(levels);
  (void)atoms;
  const std::size_t n = std::size_t{1} << levels;
  DiscreteMeasure q = DiscreteMeasure::build(std::vector<double>(n, 1.0 / n));
  std::vector<std::vector<double>> rows(levels, std::vector<double>(n, 1.0));
  return make_martingale(std::move(refinement), std::move(q), std::move(rows));
}

}  // namespace

TEST_CASE("gamma kernel is nonnegative and vanishes only at one") {
  CHECK(gamma_kernel(1.0) == 0.0);
  for (double x : {0.1, 0.5, 0.9, 1.1, 2.0, 10.0}) CHECK(gamma_kernel(x) > 0.0);
}

TEST_CASE("density martingale of equal measures is constant") {
  auto mu = uniform_cells(3);
  auto path = density_martingale(mu, mu, RefinementSequence::dyadic(3));
  for (const auto& row : path.levels)
    for (double x : row) CHECK(x == doctest::Approx(1.0));
  CHECK(martingale_residual(path) == doctest::Approx(0.0));
}

TEST_CASE("density martingale of 2x over dyadic levels") {
  auto mu = rho2x_cells(3);
  auto nu = uniform_cells(3);
  auto path = density_martingale(mu, nu, RefinementSequence::dyadic(3));
  REQUIRE(path.levels.size() == 3);
  CHECK(martingale_residual(path) <= 1e-12);
  // Level-1 block averages of the density 2x: 1/2 and 3/2 (|mu| = |nu| = 1).
  CHECK(path.levels[0][0] == doctest::Approx(0.5));
  CHECK(path.levels[0][7] == doctest::Approx(1.5));
  // E_Q[X_n] = 1.
  double e = 0.0;
  for (std::size_t i = 0; i < path.base.n; ++i)
    e += path.levels.back()[i] * path.base.weights[i];
  CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random paths satisfy the martingale property exactly") {
  gen::Rng rng(113);
  for (int i = 0; i < 50; ++i) {
    auto path = gen::random_martingale(rng, 8, 4);
    CHECK(martingale_residual(path) <= 1e-12);
  }
}

TEST_CASE("doob inequalities on the constant path") {
  auto path = constant_path(8, 3);
  auto rows = doob_check(path, {1.0});
  REQUIRE(rows.size() == 1);
  // Equality case: both sides are 1.
  CHECK(rows[0].max_lhs == doctest::Approx(1.0));
  CHECK(rows[0].max_rhs == doctest::Approx(1.0));
  CHECK(rows[0].max_ok);
  CHECK(rows[0].min_lhs == doctest::Approx(1.0));
  CHECK(rows[0].min_rhs == doctest::Approx(1.0));
  CHECK(rows[0].min_ok);

  // lambda = 0: the maximal inequality is trivial.
  auto rows0 = doob_check(path, {0.0});
  CHECK(rows0[0].max_lhs == 0.0);
  CHECK(rows0[0].max_ok);
}

TEST_CASE("the printed minimal inequality is falsified below the mean") {
  // With the event {X^min >= lambda} and lambda below E[X_n] the printed
  // direction fails already for the constant martingale; the corrected
  // event {X^min <= lambda} holds.  The check reports the discrepancy.
  auto path = constant_path(8, 3);
  auto rows = doob_check(path, {0.5});
  CHECK(rows[0].printed_min_lhs == doctest::Approx(0.5));
  CHECK(rows[0].printed_min_rhs == doctest::Approx(1.0));
  CHECK_FALSE(rows[0].printed_min_ok);
  CHECK(rows[0].min_ok);
}

TEST_CASE("doob inequalities hold across random paths") {
  gen::Rng rng(127);
  const std::vector<double> lambdas{0.5, 1.0, 2.0, 4.0};
  for (int i = 0; i < 200; ++i) {
    auto path = gen::random_martingale(rng, 6 + i % 5, 2 + i % 4);
    for (const auto& r : doob_check(path, lambdas)) {
      CHECK(r.max_ok);
      CHECK(r.min_ok);
    }
  }
}

TEST_CASE("gamma bound: equality and trivial cases") {
  auto path = constant_path(8, 3);
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = m; n <= 3; ++n) {
      auto g = gamma_bound_check(path, m, n);
      CHECK(g.ok);
      CHECK(g.e_max == doctest::Approx(1.0));
      CHECK(g.d_pn_pm == doctest::Approx(0.0));
    }

  auto mu = rho2x_cells(3);
  auto nu = uniform_cells(3);
  auto dens = density_martingale(mu, nu, RefinementSequence::dyadic(3));
  auto g = gamma_bound_check(dens, 1, 3);
  CHECK(g.ok);
  CHECK(g.max_residual < 0.0);  // strict slack
  CHECK(g.min_residual < 0.0);

  auto same = gamma_bound_check(dens, 3, 3);
  CHECK(same.e_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.d_pn_pm == doctest::Approx(0.0));
}

TEST_CASE("gamma bound holds on random paths for all level pairs") {
  gen::Rng rng(131);
  for (int i = 0; i < 100; ++i) {
    std::size_t levels = 2 + i % 4;
    auto path = gen::random_martingale(rng, 8, levels);
    for (std::size_t m = 1; m <= levels; ++m)
      for (std::size_t n = m; n <= levels; ++n) CHECK(gamma_bound_check(path, m, n).ok);
  }
}

TEST_CASE("gamma bound requires a normalized terminal level") {
  auto refinement = RefinementSequence::dyadic(1);
  DiscreteMeasure q = DiscreteMeasure::build({0.5, 0.5});
  std::vector<std::vector<double>> rows{{2.0, 2.0}};
  auto path = make_martingale(std::move(refinement), std::move(q), std::move(rows));
  CHECK_THROWS_AS(gamma_bound_check(path, 1, 1), NotNormalized);
}

TEST_CASE("martingale validation") {
  auto refinement = RefinementSequence::dyadic(2);
  DiscreteMeasure q = DiscreteMeasure::build(std::vector<double>(4, 0.25));
  // Conditional averages do not match across levels.
  std::vector<std::vector<double>> rows{{1.0, 1.0, 1.0, 1.0}, {2.0, 2.0, 0.5, 0.5}};
  CHECK_THROWS_AS(make_martingale(refinement, q, rows), ValidationError);
}
