#include "latdiv/fca.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace latdiv {

FormalContext FormalContext::build(
    std::vector<std::string> objects, std::vector<std::string> attributes,
    const std::vector<std::pair<std::string, std::string>>& incidence) {
  if (objects.size() > 62) throw TooLarge("more than 62 objects");
  if (attributes.size() > 62) throw TooLarge("more than 62 attributes");

  FormalContext ctx;
  std::map<std::string, std::size_t> gi, mi;
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (!gi.emplace(objects[i], i).second)
      throw ValidationError("duplicate object: " + objects[i]);
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (!mi.emplace(attributes[i], i).second)
      throw ValidationError("duplicate attribute: " + attributes[i]);

  ctx.objects_ = std::move(objects);
  ctx.attributes_ = std::move(attributes);
  ctx.object_rows_.assign(ctx.objects_.size(), 0);
  ctx.attribute_cols_.assign(ctx.attributes_.size(), 0);
  for (const auto& [g, m] : incidence) {
    auto itg = gi.find(g);
    auto itm = mi.find(m);
    if (itg == gi.end()) throw UnknownIdentifier("unknown object: " + g);
    if (itm == mi.end()) throw UnknownIdentifier("unknown attribute: " + m);
    ctx.object_rows_[itg->second] |= std::uint64_t{1} << itm->second;
    ctx.attribute_cols_[itm->second] |= std::uint64_t{1} << itg->second;
  }
  return ctx;
}

std::size_t FormalContext::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return i;
  throw UnknownIdentifier("unknown object: " + name);
}

std::size_t FormalContext::attribute_index(const std::string& name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    if (attributes_[i] == name) return i;
  throw UnknownIdentifier("unknown attribute: " + name);
}

std::uint64_t FormalContext::derive_objects(std::uint64_t object_set) const {
  std::uint64_t common = full_attributes();
  for (std::size_t g = 0; g < objects_.size(); ++g)
    if (object_set >> g & 1) common &= object_rows_[g];
  return common;
}

std::uint64_t FormalContext::derive_attributes(std::uint64_t attribute_set) const {
  std::uint64_t common = full_objects();
  for (std::size_t m = 0; m < attributes_.size(); ++m)
    if (attribute_set >> m & 1) common &= attribute_cols_[m];
  return common;
}

std::uint64_t FormalContext::closure(std::uint64_t object_set) const {
  return derive_attributes(derive_objects(object_set));
}

std::string render_object_set(const FormalContext& ctx, std::uint64_t set) {
  std::string s = "{";
  bool first = true;
  for (std::size_t g = 0; g < ctx.objects().size(); ++g)
    if (set >> g & 1) {
      if (!first) s += ",";
      s += ctx.objects()[g];
      first = false;
    }
  return s + "}";
}

ConceptLatticeResult enumerate_concepts(const FormalContext& ctx) {
  const std::size_t n = ctx.objects().size();
  ConceptLatticeResult out;

  // NextClosure in lectic order: the successor of extent A is the closure of
  // (A restricted below i) + {i} for the largest feasible i not in A.
  std::uint64_t a = ctx.closure(0);
  while (true) {
    out.concepts.push_back({a, ctx.derive_objects(a)});
    if (a == ctx.full_objects()) break;
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (a >> i & 1) continue;
      std::uint64_t below = FormalContext::mask_bits(i);
      std::uint64_t b = ctx.closure((a & below) | (std::uint64_t{1} << i));
      if ((b & below & ~a) == 0) {
        a = b;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;  // only reachable when there are no objects
  }

  std::vector<std::string> names;
  names.reserve(out.concepts.size());
  for (const auto& c : out.concepts) {
    out.extents.push_back(c.extent);
    names.push_back(render_object_set(ctx, c.extent));
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < out.extents.size(); ++i)
    for (std::size_t j = 0; j < out.extents.size(); ++j) {
      if (i == j) continue;
      std::uint64_t lo = out.extents[i], hi = out.extents[j];
      if ((lo & hi) != lo || lo == hi) continue;
      bool covered = true;
      for (std::uint64_t mid : out.extents)
        if (mid != lo && mid != hi && (lo & mid) == lo && (mid & hi) == mid) {
          covered = false;
          break;
        }
      if (covered) covers.emplace_back(names[i], names[j]);
    }
  out.lattice = Lattice::build(names, covers);

  // Realign extents with the lattice's element indexing.
  std::vector<std::uint64_t> aligned(out.extents.size());
  for (std::size_t i = 0; i < out.extents.size(); ++i)
    aligned[out.lattice.index_of(names[i])] = out.extents[i];
  out.extents = std::move(aligned);
  return out;
}

CountingValuationReport counting_valuation(const ConceptLatticeResult& cl) {
  CountingValuationReport rep;
  const Lattice& lat = cl.lattice;
  const std::size_t n = lat.size();
  rep.values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    rep.values[i] = static_cast<double>(std::popcount(cl.extents[i]));

  rep.strict = rep.values[lat.bottom()] == 0.0;
  rep.monotone = true;
  for (const auto& [lo, hi] : lat.covers())
    if (rep.values[lo] > rep.values[hi]) rep.monotone = false;
  rep.modular = true;
  for (std::size_t a = 0; a < n && rep.modular; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rep.values[a] + rep.values[b] !=
          rep.values[lat.meet(a, b)] + rep.values[lat.join(a, b)]) {
        rep.modular = false;
        rep.modularity_witness = {a, b};
        break;
      }
  rep.is_valuation = rep.strict && rep.monotone && rep.modular;
  rep.distributive = is_distributive(lat);
  // Modularity of counting alone forces joins to be unions, hence
  // distributivity; strictness is not needed for that implication.
  if (rep.modular && !rep.distributive)
    throw AssertionFailure("counting valuation is modular but lattice is not distributive");
  return rep;
}

}  // namespace latdiv
