#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "latdiv/errors.hpp"

namespace latdiv {

// A finite lattice given by its Hasse diagram.  Elements are opaque string
// identifiers; internally they are dense indices.  The order relation and
// the meet/join tables are computed once at construction, so every query
// afterwards is a table lookup.  Instances are immutable.
class Lattice {
 public:
  // An empty placeholder; usable only after assignment from build().
  Lattice() = default;

  // Validates that the covers generate a partial order with a unique bottom
  // and top in which every pair has a unique meet and join.  The stored
  // cover list is recomputed from the order closure, so redundant input
  // pairs (a,b) with an element strictly between are canonicalized away.
  static Lattice build(std::vector<std::string> elements,
                       const std::vector<std::pair<std::string, std::string>>& covers);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& elements() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::size_t index_of(const std::string& name) const;  // throws UnknownElement
  bool contains(const std::string& name) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  // Irredundant covering pairs (lower, upper).
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  const std::vector<std::size_t>& lower_covers(std::size_t x) const { return lower_covers_[x]; }
  const std::vector<std::size_t>& upper_covers(std::size_t x) const { return upper_covers_[x]; }

 private:
  std::vector<std::string> names_;
  std::vector<char> leq_;          // size n*n
  std::vector<std::size_t> meet_;  // size n*n
  std::vector<std::size_t> join_;  // size n*n
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> lower_covers_;
  std::vector<std::vector<std::size_t>> upper_covers_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

// A join-irreducible element together with its unique lower cover.
struct IrreducibleElement {
  std::size_t element;
  std::size_t lower_cover;
};

// A maximal chain m_0 < ... < m_r paired with irreducibles j_1..j_r
// satisfying m_{i+1} = m_i v j_i and m_i ^ j_i = j_i^-.
struct ChainDecomposition {
  std::vector<std::size_t> chain;
  std::vector<IrreducibleElement> irreducible_sequence;
};

// Exhaustive checks of the triple identities; O(n^3) table lookups.
bool is_distributive(const Lattice& lat);
bool is_modular(const Lattice& lat);

// All non-bottom elements with exactly one lower cover, in lexicographic
// order of their identifiers.
std::vector<IrreducibleElement> join_irreducibles(const Lattice& lat);

struct BirkhoffDecomposition {
  // Join-irreducibles of the source lattice, as source indices.
  std::vector<std::size_t> irreducibles;
  // Order among irreducibles (poset_leq[i][j] with positions into
  // `irreducibles`).
  std::vector<std::vector<bool>> poset_leq;
  // Lattice of downsets of the irreducible poset.
  Lattice downset_lattice;
  // Source element index -> downset-lattice element index under
  // m -> { g irreducible | g <= m }.
  std::vector<std::size_t> iso;
  // Whether `iso` is an order isomorphism (checked, not assumed).
  bool isomorphic = false;
};

// Birkhoff representation of a finite distributive lattice.  Throws
// NotDistributive otherwise.
BirkhoffDecomposition birkhoff_decompose(const Lattice& lat);

// All maximal bottom-to-top chains, ordered lexicographically by the
// element identifiers along the chain.
std::vector<std::vector<std::size_t>> maximal_chains(const Lattice& lat);

bool is_maximal_chain(const Lattice& lat, const std::vector<std::size_t>& chain);

// For a maximal chain of a distributive lattice, the sequence of
// irreducibles added one at a time to the downset representation.  Both
// defining identities are verified before returning.
ChainDecomposition chain_irreducible_sequence(const Lattice& lat,
                                              const std::vector<std::size_t>& chain);

}  // namespace latdiv
