#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latdiv/errors.hpp"
#include "latdiv/lattice.hpp"

namespace latdiv {

// Object/attribute incidence table.  Sets of objects and attributes are
// bitmasks, which caps a context at 62 objects and 62 attributes; desk-scale
// contexts are far below that.
class FormalContext {
 public:
  static FormalContext build(std::vector<std::string> objects,
                             std::vector<std::string> attributes,
                             const std::vector<std::pair<std::string, std::string>>& incidence);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  bool incident(std::size_t g, std::size_t m) const { return object_rows_[g] >> m & 1; }

  std::size_t object_index(const std::string& name) const;
  std::size_t attribute_index(const std::string& name) const;

  std::uint64_t full_objects() const { return mask_bits(objects_.size()); }
  std::uint64_t full_attributes() const { return mask_bits(attributes_.size()); }

  // X' : attributes common to all objects in X.  derive_objects(0) is the
  // full attribute set (vacuous quantifier).
  std::uint64_t derive_objects(std::uint64_t object_set) const;
  // Y' : objects having all attributes in Y.
  std::uint64_t derive_attributes(std::uint64_t attribute_set) const;
  // X'' — a closure operator on object sets.
  std::uint64_t closure(std::uint64_t object_set) const;

  static std::uint64_t mask_bits(std::size_t n) {
    return n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  }

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<std::uint64_t> object_rows_;    // per object: attribute mask
  std::vector<std::uint64_t> attribute_cols_; // per attribute: object mask
};

struct FormalConcept {
  std::uint64_t extent = 0;
  std::uint64_t intent = 0;
};

// All concepts plus the lattice of extents (meet = intersection,
// join = closure of union).  `extents[i]` is the extent of lattice
// element i; lattice element names render the extents.
struct ConceptLatticeResult {
  std::vector<FormalConcept> concepts;  // lectic order of extents
  Lattice lattice;
  std::vector<std::uint64_t> extents;   // aligned with lattice elements
};

// Lexicographic (NextClosure-style) enumeration over object sets.
ConceptLatticeResult enumerate_concepts(const FormalContext& ctx);

std::string render_object_set(const FormalContext& ctx, std::uint64_t set);

// Counting valuation mu(extent) = |extent| on a concept lattice, with the
// three valuation laws checked pairwise.  When all three hold the extent
// lattice must be distributive; that implication is checked as well.
struct CountingValuationReport {
  std::vector<double> values;  // aligned with lattice elements
  bool strict = false;
  bool monotone = false;
  bool modular = false;
  bool is_valuation = false;
  bool distributive = false;
  // Witness pair for a failed modular law, as lattice element indices.
  std::optional<std::pair<std::size_t, std::size_t>> modularity_witness;
};

CountingValuationReport counting_valuation(const ConceptLatticeResult& cl);

}  // namespace latdiv
