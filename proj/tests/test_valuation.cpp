#include <doctest.h>

#include <cmath>

#include "latdiv/generate.hpp"
#include "latdiv/valuation.hpp"
#include "oracles.hpp"

using namespace latdiv;

namespace {

Lattice b2() {
  return Lattice::build({"0", "p", "q", "1"},
                        {{"0", "p"}, {"0", "q"}, {"p", "1"}, {"q", "1"}});
}

Lattice chain3() {
  return Lattice::build({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}});
}

std::vector<double> by_name(const Lattice& lat,
                            std::initializer_list<std::pair<const char*, double>> vals) {
  std::vector<double> v(lat.size(), 0.0);
  for (const auto& [name, x] : vals) v[lat.index_of(name)] = x;
  return v;
}

}  // namespace

TEST_CASE("valuation validation") {
  auto lat = b2();
  CHECK(check_valuation(lat, std::vector<double>(4, 0.0)).ok());

  auto bad_strict = by_name(lat, {{"0", 1.0}, {"p", 1.0}, {"q", 1.0}, {"1", 1.0}});
  auto v1 = check_valuation(lat, bad_strict);
  CHECK(v1.law == ValuationLaw::strictness);

  auto bad_mod = by_name(lat, {{"p", 1.0}, {"q", 1.0}, {"1", 1.0}});
  auto v2 = check_valuation(lat, bad_mod);
  CHECK(v2.law == ValuationLaw::modularity);
  CHECK_THROWS_AS(make_valuation(lat, bad_mod), InvalidValuation);

  CHECK_THROWS_AS(check_valuation(lat, std::vector<double>(3, 0.0)), MissingValue);

  // Counting valuation on a distributive extent lattice.
  gen::Rng rng(41);
  auto ctx = FormalContext::build({"1", "2", "3"}, {"a", "b"},
                                  {{"1", "a"}, {"2", "a"}, {"2", "b"}, {"3", "b"}});
  auto cl = enumerate_concepts(ctx);
  auto counts = counting_valuation(cl).values;
  // Shift to the bottom so strictness holds; shifting preserves modularity
  // only when the bottom count is subtracted from a chain through it, so
  // instead validate modularity and monotonicity directly.
  auto violation = check_valuation(cl.lattice, counts);
  CHECK(violation.law != ValuationLaw::modularity);
}

TEST_CASE("infinite values are consistent only when matched") {
  auto lat = chain3();
  auto v = by_name(lat, {{"a", 1.0}, {"1", kInf}});
  CHECK(check_valuation(lat, v).ok());
  auto mu = make_valuation(lat, v);
  auto incr = increments(lat, mu);
  REQUIRE(incr.size() == 2);
  CHECK(std::isinf(incr[0]));  // "1" sorts before "a"
  CHECK(incr[1] == 1.0);
}

TEST_CASE("cocl examples") {
  auto lat = chain3();
  // Strictly monotone: cocl is the identity.
  auto strict = by_name(lat, {{"a", 1.0}, {"1", 2.0}});
  for (std::size_t x = 0; x < lat.size(); ++x) CHECK(cocl(lat, strict, x) == x);

  // Flat step collapses to the earlier element.
  auto flat = by_name(lat, {{"a", 1.0}, {"1", 1.0}});
  CHECK(cocl(lat, flat, lat.index_of("1")) == lat.index_of("a"));
  CHECK(cocl(lat, flat, lat.bottom()) == lat.bottom());

  auto lat2 = b2();
  auto not_super = by_name(lat2, {{"p", 1.0}, {"q", 1.0}, {"1", 1.0}});
  CHECK_THROWS_AS(cocl(lat2, not_super, 0), NotSuperModular);
}

TEST_CASE("co-closed lattice examples") {
  auto lat = chain3();
  auto strict = by_name(lat, {{"a", 1.0}, {"1", 2.0}});
  CHECK(co_closed_lattice(lat, strict).lattice.size() == 3);

  auto flat = by_name(lat, {{"a", 1.0}, {"1", 1.0}});
  auto cc = co_closed_lattice(lat, flat);
  CHECK(cc.lattice.size() == 2);  // the flat step is removed

  // B2 with value(p) = value(top) forces value(q) = 0; fixed points are
  // bottom and p, and the result satisfies the modular law.
  auto lat2 = b2();
  auto v = by_name(lat2, {{"p", 2.0}, {"q", 0.0}, {"1", 2.0}});
  auto cc2 = co_closed_lattice(lat2, v);
  REQUIRE(cc2.lattice.size() == 2);
  CHECK(cc2.lattice.contains("0"));
  CHECK(cc2.lattice.contains("p"));
  CHECK(is_modular(cc2.lattice));
}

TEST_CASE("restriction of a supermodular function to co-closed elements is strictly monotone") {
  gen::Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    auto vl = gen::random_valuated_lattice(rng, 5);
    const auto& values = vl.mu.values;
    auto cc = co_closed_lattice(vl.lattice, values);
    for (const auto& [lo, hi] : cc.lattice.covers())
      CHECK(values[cc.original_index[lo]] < values[cc.original_index[hi]]);
  }
}

TEST_CASE("divergence: hand-evaluated one-irreducible chain") {
  auto lat = Lattice::build({"0", "1"}, {{"0", "1"}});
  auto mu = make_valuation(lat, by_name(lat, {{"1", 2.0}}));
  auto nu = make_valuation(lat, by_name(lat, {{"1", 1.0}}));
  auto res = lattice_divergence(lat, mu, nu);
  CHECK(res.value == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-12));
  CHECK(res.domination_ok);
}

TEST_CASE("divergence: Gibbs equality and domination failure") {
  auto lat = b2();
  auto mu = make_valuation(lat, by_name(lat, {{"p", 2.0}, {"q", 1.0}, {"1", 3.0}}));
  CHECK(lattice_divergence(lat, mu, mu).value == 0.0);

  auto nu = make_valuation(lat, by_name(lat, {{"p", 0.0}, {"q", 1.0}, {"1", 1.0}}));
  auto res = lattice_divergence(lat, mu, nu);
  CHECK(std::isinf(res.value));
  CHECK_FALSE(res.domination_ok);

  CHECK_THROWS_AS(
      lattice_divergence(Lattice::build({"0", "a", "b", "c", "1"},
                                        {{"0", "a"}, {"0", "b"}, {"0", "c"},
                                         {"a", "1"}, {"b", "1"}, {"c", "1"}}),
                         Valuation{std::vector<double>(5, 0.0)},
                         Valuation{std::vector<double>(5, 0.0)}),
      NotDistributive);
}

TEST_CASE("Gibbs: zero divergence only for equal valuations") {
  gen::Rng rng(47);
  for (int i = 0; i < 50; ++i) {
    auto lat = gen::random_distributive_lattice(rng, 4);
    auto mu = gen::random_valuation(rng, lat);
    auto nu = gen::random_valuation(rng, lat, true);
    auto res = lattice_divergence(lat, mu, nu);
    CHECK(res.value >= 0.0);
    bool equal = true;
    for (std::size_t x = 0; x < lat.size(); ++x)
      if (std::abs(mu(x) - nu(x)) > 1e-12) equal = false;
    if (res.value == 0.0)
      CHECK(equal);
    else
      CHECK_FALSE(equal);
  }
}

TEST_CASE("homogeneity in the total scale") {
  gen::Rng rng(53);
  for (int i = 0; i < 20; ++i) {
    auto lat = gen::random_distributive_lattice(rng, 4);
    auto mu = gen::random_valuation(rng, lat);
    auto nu = gen::random_valuation(rng, lat, true);
    double base = lattice_divergence(lat, mu, nu).value;
    for (double t : {0.0, 0.5, 1.0, 3.0}) {
      Valuation tmu{mu.values}, tnu{nu.values};
      for (double& x : tmu.values) x *= t;
      for (double& x : tnu.values) x *= t;
      double scaled = lattice_divergence(lat, tmu, tnu).value;
      CHECK(std::abs(scaled - t * base) <= 1e-12 * (1.0 + std::abs(t * base)));
    }
  }
}

TEST_CASE("chain divergence equals the irreducible sum on distributive lattices") {
  gen::Rng rng(59);
  for (int i = 0; i < 30; ++i) {
    auto lat = gen::random_distributive_lattice(rng, 5);
    auto mu = gen::random_valuation(rng, lat);
    auto nu = gen::random_valuation(rng, lat, true);
    double d = lattice_divergence(lat, mu, nu).value;
    for (const auto& chain : maximal_chains(lat)) {
      double dc = chain_divergence(lat, mu, nu, chain);
      CHECK(std::abs(dc - d) <= 1e-9 * (1.0 + std::abs(d)));
    }
  }
}

TEST_CASE("all maximal chains agree on valuated N5 and M3") {
  gen::Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    auto vl = gen::random_valuated_lattice(rng, 6);
    auto chains = maximal_chains(vl.lattice);
    double lo = kInf, hi = -kInf;
    for (const auto& chain : chains) {
      double d = chain_divergence(vl.lattice, vl.mu, vl.nu, chain);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    CHECK(hi - lo <= 1e-9 * (1.0 + hi));
  }
}

TEST_CASE("chain divergence input validation") {
  auto lat = b2();
  auto mu = make_valuation(lat, by_name(lat, {{"p", 1.0}, {"q", 1.0}, {"1", 2.0}}));
  std::vector<std::size_t> not_max{lat.bottom(), lat.top()};
  CHECK_THROWS_AS(chain_divergence(lat, mu, mu, not_max), NotMaximalChain);
}

TEST_CASE("lattice divergence equals the power-set embedding divergence") {
  gen::Rng rng(67);
  for (int i = 0; i < 30; ++i) {
    auto lat = gen::random_distributive_lattice(rng, 5);
    auto mu = gen::random_valuation(rng, lat);
    auto nu = gen::random_valuation(rng, lat, true);
    auto emb = oracles::powerset_embedding_divergence(lat, mu, nu);
    REQUIRE(emb.additive);
    double d = lattice_divergence(lat, mu, nu).value;
    CHECK(std::abs(d - emb.divergence) <= 1e-9 * (1.0 + std::abs(d)));
  }
}

TEST_CASE("sublattice sup") {
  auto trivial = Lattice::build({"x"}, {});
  Valuation zero{std::vector<double>{0.0}};
  CHECK(divergence_via_sublattice_sup(trivial, zero, zero) == 0.0);

  gen::Rng rng(71);
  auto lat = b2();
  auto mu = gen::random_valuation(rng, lat);
  auto nu = gen::random_valuation(rng, lat, true);
  double d = lattice_divergence(lat, mu, nu).value;
  CHECK(divergence_via_sublattice_sup(lat, mu, nu) == doctest::Approx(d).epsilon(1e-9));

  // Chain of length 3: the sup is attained at the full chain.
  auto chain = Lattice::build({"0", "a", "b", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}});
  auto cmu = gen::random_valuation(rng, chain);
  auto cnu = gen::random_valuation(rng, chain, true);
  double dc = lattice_divergence(chain, cmu, cnu).value;
  CHECK(divergence_via_sublattice_sup(chain, cmu, cnu) == doctest::Approx(dc).epsilon(1e-9));

  auto big = gen::random_distributive_lattice(rng, 6);
  if (big.size() > 10) {
    auto bmu = gen::random_valuation(rng, big);
    CHECK_THROWS_AS(divergence_via_sublattice_sup(big, bmu, bmu), TooLarge);
  }
}

TEST_CASE("increments sum to the top value along any chain") {
  gen::Rng rng(73);
  for (int i = 0; i < 20; ++i) {
    auto lat = gen::random_distributive_lattice(rng, 5);
    auto mu = gen::random_valuation(rng, lat);
    auto incr = increments(lat, mu);
    double total = 0.0;
    for (double d : incr) total += d;
    CHECK(total == doctest::Approx(mu(lat.top())).epsilon(1e-12));
  }
}
