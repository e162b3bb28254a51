#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "latdiv/generate.hpp"
#include "latdiv/lattice.hpp"
#include "oracles.hpp"

using namespace latdiv;

namespace {

Lattice b2() {
  return Lattice::build({"0", "p", "q", "1"},
                        {{"0", "p"}, {"0", "q"}, {"p", "1"}, {"q", "1"}});
}

Lattice b3() {
  std::vector<std::string> names{"000", "100", "010", "001", "110", "101", "011", "111"};
  std::vector<std::pair<std::string, std::string>> covers;
  auto bitcount = [](const std::string& s) { return std::count(s.begin(), s.end(), '1'); };
  for (const auto& a : names)
    for (const auto& b : names) {
      bool leq = true;
      for (int i = 0; i < 3; ++i)
        if (a[i] == '1' && b[i] == '0') leq = false;
      if (leq && bitcount(b) == bitcount(a) + 1) covers.emplace_back(a, b);
    }
  return Lattice::build(names, covers);
}

Lattice n5() {
  return Lattice::build({"0", "a", "b", "c", "1"},
                        {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
}

Lattice m3() {
  return Lattice::build({"0", "a", "b", "c", "1"},
                        {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
}

Lattice chain3() {
  return Lattice::build({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}});
}

void check_lattice_axioms(const Lattice& lat) {
  for (std::size_t a = 0; a < lat.size(); ++a) {
    CHECK(lat.meet(a, a) == a);
    CHECK(lat.join(a, a) == a);
    for (std::size_t b = 0; b < lat.size(); ++b) {
      CHECK(lat.meet(a, b) == lat.meet(b, a));
      CHECK(lat.join(a, b) == lat.join(b, a));
      CHECK(lat.meet(a, lat.join(a, b)) == a);  // absorption
      CHECK(lat.join(a, lat.meet(a, b)) == a);
      CHECK(oracles::glb_lub_from_order(lat, a, b, lat.meet(a, b), lat.join(a, b)));
    }
  }
}

}  // namespace

TEST_CASE("singleton lattice: bottom equals top") {
  auto lat = Lattice::build({"x"}, {});
  CHECK(lat.size() == 1);
  CHECK(lat.bottom() == lat.top());
  CHECK(maximal_chains(lat).size() == 1);
  CHECK(join_irreducibles(lat).empty());
}

TEST_CASE("B2 construction and basic queries") {
  auto lat = b2();
  CHECK(lat.name(lat.bottom()) == "0");
  CHECK(lat.name(lat.top()) == "1");
  std::size_t p = lat.index_of("p"), q = lat.index_of("q");
  CHECK(lat.meet(p, q) == lat.bottom());
  CHECK(lat.join(p, q) == lat.top());
  check_lattice_axioms(lat);
}

TEST_CASE("pentagon N5 is accepted as a lattice") {
  auto lat = n5();
  CHECK(lat.size() == 5);
  check_lattice_axioms(lat);
  CHECK_FALSE(is_modular(lat));
}

TEST_CASE("build rejects cycles and non-lattices") {
  CHECK_THROWS_AS(Lattice::build({"a", "b"}, {{"a", "b"}, {"b", "a"}}), NotAPartialOrder);
  // Two maximal elements.
  CHECK_THROWS_AS(Lattice::build({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}), NotALattice);
  // Six-element "bowtie": two atoms, two coatoms, no unique join below 1.
  CHECK_THROWS_AS(Lattice::build({"0", "a", "b", "x", "y", "1"},
                                 {{"0", "a"},
                                  {"0", "b"},
                                  {"a", "x"},
                                  {"b", "x"},
                                  {"a", "y"},
                                  {"b", "y"},
                                  {"x", "1"},
                                  {"y", "1"}}),
                  NotALattice);
  CHECK_THROWS_AS(Lattice::build({"a"}, {{"a", "z"}}), UnknownElement);
  CHECK_THROWS_AS(Lattice::build({}, {}), ValidationError);
}

TEST_CASE("redundant covers are canonicalized away") {
  auto lat = Lattice::build({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}, {"0", "1"}});
  CHECK(lat.covers().size() == 2);
}

TEST_CASE("divisor lattice of 12 agrees with gcd/lcm") {
  auto lat = oracles::divisor_lattice(12);
  CHECK(lat.size() == 6);
  for (unsigned a : {1u, 2u, 3u, 4u, 6u, 12u})
    for (unsigned b : {1u, 2u, 3u, 4u, 6u, 12u}) {
      auto ia = lat.index_of(std::to_string(a)), ib = lat.index_of(std::to_string(b));
      CHECK(lat.name(lat.meet(ia, ib)) == std::to_string(oracles::gcd_u(a, b)));
      CHECK(lat.name(lat.join(ia, ib)) == std::to_string(oracles::lcm_u(a, b)));
    }
  auto i4 = lat.index_of("4"), i6 = lat.index_of("6");
  CHECK(lat.name(lat.meet(i4, i6)) == "2");
  CHECK(lat.name(lat.join(i4, i6)) == "12");
}

TEST_CASE("distributivity: named lattices") {
  CHECK(is_distributive(b2()));
  CHECK(is_distributive(b3()));
  CHECK(is_distributive(chain3()));
  CHECK(is_distributive(oracles::divisor_lattice(12)));
  CHECK_FALSE(is_distributive(m3()));
  CHECK_FALSE(is_distributive(n5()));
  CHECK(is_modular(m3()));
}

TEST_CASE("distributivity agrees with the M3/N5 sublattice search") {
  gen::Rng rng(20240811);
  std::vector<Lattice> pool;
  pool.push_back(b2());
  pool.push_back(m3());
  pool.push_back(n5());
  pool.push_back(chain3());
  pool.push_back(b3());
  for (int i = 0; i < 40; ++i) {
    // Concept lattices of small random contexts realize arbitrary small
    // lattices.
    auto ctx = gen::random_context(rng, 4, 4);
    auto cl = enumerate_concepts(ctx);
    if (cl.lattice.size() <= 8) pool.push_back(cl.lattice);
  }
  for (int i = 0; i < 10; ++i) {
    auto lat = gen::random_distributive_lattice(rng, 3);
    if (lat.size() <= 8) pool.push_back(lat);
  }
  for (const auto& lat : pool)
    CHECK(is_distributive(lat) == !oracles::has_m3_or_n5_sublattice(lat));
}

TEST_CASE("join irreducibles") {
  auto chain = chain3();
  auto ji = join_irreducibles(chain);
  REQUIRE(ji.size() == 2);
  CHECK(chain.name(ji[0].element) == "1");  // lexicographic order of names
  CHECK(chain.name(ji[1].element) == "a");
  CHECK(chain.name(ji[1].lower_cover) == "0");

  auto lat = b2();
  auto ji2 = join_irreducibles(lat);
  REQUIRE(ji2.size() == 2);
  CHECK(lat.name(ji2[0].element) == "p");
  CHECK(lat.name(ji2[1].element) == "q");
  CHECK(ji2[0].lower_cover == lat.bottom());

  auto div = oracles::divisor_lattice(12);
  auto ji3 = join_irreducibles(div);
  REQUIRE(ji3.size() == 3);
  CHECK(div.name(ji3[0].element) == "2");
  CHECK(div.name(ji3[0].lower_cover) == "1");
  CHECK(div.name(ji3[1].element) == "3");
  CHECK(div.name(ji3[1].lower_cover) == "1");
  CHECK(div.name(ji3[2].element) == "4");
  CHECK(div.name(ji3[2].lower_cover) == "2");
}

TEST_CASE("birkhoff decomposition on named lattices") {
  auto bd = birkhoff_decompose(b2());
  CHECK(bd.irreducibles.size() == 2);
  CHECK(bd.downset_lattice.size() == 4);
  CHECK(bd.isomorphic);
  CHECK_FALSE(bd.poset_leq[0][1]);
  CHECK_FALSE(bd.poset_leq[1][0]);

  auto chain_bd = birkhoff_decompose(chain3());
  CHECK(chain_bd.irreducibles.size() == 2);
  CHECK(chain_bd.downset_lattice.size() == 3);
  CHECK(chain_bd.isomorphic);

  auto div = oracles::divisor_lattice(12);
  auto div_bd = birkhoff_decompose(div);
  REQUIRE(div_bd.irreducibles.size() == 3);
  CHECK(div_bd.downset_lattice.size() == 6);
  CHECK(div_bd.isomorphic);
  // Poset: 2 < 4, 3 incomparable to both.
  auto pos_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < div_bd.irreducibles.size(); ++i)
      if (div.name(div_bd.irreducibles[i]) == name) return i;
    return std::size_t{99};
  };
  CHECK(div_bd.poset_leq[pos_of("2")][pos_of("4")]);
  CHECK_FALSE(div_bd.poset_leq[pos_of("4")][pos_of("2")]);
  CHECK_FALSE(div_bd.poset_leq[pos_of("3")][pos_of("2")]);
  CHECK_FALSE(div_bd.poset_leq[pos_of("2")][pos_of("3")]);

  CHECK_THROWS_AS(birkhoff_decompose(m3()), NotDistributive);
}

TEST_CASE("birkhoff round-trip on random distributive lattices") {
  gen::Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    auto lat = gen::random_distributive_lattice(rng, 6);
    REQUIRE(lat.size() <= 64);
    auto bd = birkhoff_decompose(lat);
    CHECK(bd.isomorphic);
    CHECK(bd.downset_lattice.size() == lat.size());
  }
}

TEST_CASE("maximal chains") {
  CHECK(maximal_chains(chain3()).size() == 1);
  auto lat = b2();
  auto chains = maximal_chains(lat);
  REQUIRE(chains.size() == 2);
  CHECK(lat.name(chains[0][1]) == "p");
  CHECK(lat.name(chains[1][1]) == "q");
  CHECK(maximal_chains(b3()).size() == 6);
}

TEST_CASE("chain irreducible sequence: named examples") {
  auto lat = b2();
  auto chains = maximal_chains(lat);
  auto cd = chain_irreducible_sequence(lat, chains[0]);
  REQUIRE(cd.irreducible_sequence.size() == 2);
  CHECK(lat.name(cd.irreducible_sequence[0].element) == "p");
  CHECK(lat.name(cd.irreducible_sequence[1].element) == "q");

  auto chain = chain3();
  auto cd2 = chain_irreducible_sequence(chain, maximal_chains(chain)[0]);
  CHECK(chain.name(cd2.irreducible_sequence[0].element) == "a");
  CHECK(chain.name(cd2.irreducible_sequence[1].element) == "1");

  auto div = oracles::divisor_lattice(12);
  std::vector<std::size_t> path{div.index_of("1"), div.index_of("2"), div.index_of("4"),
                                div.index_of("12")};
  auto cd3 = chain_irreducible_sequence(div, path);
  REQUIRE(cd3.irreducible_sequence.size() == 3);
  CHECK(div.name(cd3.irreducible_sequence[0].element) == "2");
  CHECK(div.name(cd3.irreducible_sequence[1].element) == "4");
  CHECK(div.name(cd3.irreducible_sequence[2].element) == "3");
  CHECK(div.name(cd3.irreducible_sequence[0].lower_cover) == "1");
  CHECK(div.name(cd3.irreducible_sequence[1].lower_cover) == "2");
  CHECK(div.name(cd3.irreducible_sequence[2].lower_cover) == "1");

  CHECK_THROWS_AS(chain_irreducible_sequence(m3(), maximal_chains(m3())[0]), NotDistributive);
  std::vector<std::size_t> not_max{div.index_of("1"), div.index_of("12")};
  CHECK_THROWS_AS(chain_irreducible_sequence(div, not_max), NotMaximalChain);
}

TEST_CASE("chains of a distributive lattice permute the irreducibles") {
  gen::Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    auto lat = gen::random_distributive_lattice(rng, 5);
    auto irr = join_irreducibles(lat);
    for (const auto& chain : maximal_chains(lat)) {
      CHECK(chain.size() == irr.size() + 1);  // rank = number of irreducibles
      auto cd = chain_irreducible_sequence(lat, chain);
      std::set<std::size_t> seen;
      for (const auto& j : cd.irreducible_sequence) seen.insert(j.element);
      CHECK(seen.size() == irr.size());
    }
  }
}

TEST_CASE("lattice axioms hold on random lattices") {
  gen::Rng rng(5);
  for (int i = 0; i < 10; ++i) check_lattice_axioms(gen::random_distributive_lattice(rng, 5));
  check_lattice_axioms(m3());
  check_lattice_axioms(n5());
}
