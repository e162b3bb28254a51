#include "latdiv/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace latdiv {

namespace {

// Reflexive-transitive closure of the cover digraph, as a dense matrix.
// Throws NotAPartialOrder on a cycle.
std::vector<char> order_closure(std::size_t n,
                                const std::vector<std::vector<std::size_t>>& up_adj) {
  // Kahn topological sort over the cover edges.
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : up_adj[v]) ++indeg[w];
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  while (!queue.empty()) {
    std::size_t v = queue.back();
    queue.pop_back();
    order.push_back(v);
    for (std::size_t w : up_adj[v])
      if (--indeg[w] == 0) queue.push_back(w);
  }
  if (order.size() != n) throw NotAPartialOrder("cycle in covering relation");

  std::vector<char> leq(n * n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t v = *it;
    leq[v * n + v] = 1;
    for (std::size_t w : up_adj[v])
      for (std::size_t x = 0; x < n; ++x)
        if (leq[w * n + x]) leq[v * n + x] = 1;
  }
  return leq;
}

}  // namespace

Lattice Lattice::build(std::vector<std::string> elements,
                       const std::vector<std::pair<std::string, std::string>>& covers) {
  if (elements.empty()) throw ValidationError("lattice needs at least one element");
  const std::size_t n = elements.size();

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(elements[i], i).second)
      throw ValidationError("duplicate element identifier: " + elements[i]);
  }

  std::vector<std::vector<std::size_t>> up_adj(n);
  for (const auto& [lo, hi] : covers) {
    auto il = index.find(lo);
    auto ih = index.find(hi);
    if (il == index.end()) throw UnknownElement("unknown element in covers: " + lo);
    if (ih == index.end()) throw UnknownElement("unknown element in covers: " + hi);
    if (il->second == ih->second)
      throw NotAPartialOrder("self-cover on element: " + lo);
    up_adj[il->second].push_back(ih->second);
  }

  Lattice lat;
  lat.names_ = std::move(elements);
  lat.leq_ = order_closure(n, up_adj);
  const auto& leq = lat.leq_;

  // Unique bottom and top.
  std::vector<std::size_t> bottoms, tops;
  for (std::size_t v = 0; v < n; ++v) {
    bool is_bottom = true, is_top = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v) continue;
      if (leq[w * n + v]) is_bottom = false;
      if (leq[v * n + w]) is_top = false;
    }
    if (is_bottom) bottoms.push_back(v);
    if (is_top) tops.push_back(v);
  }
  if (bottoms.size() != 1) throw NotALattice("no unique bottom element");
  if (tops.size() != 1) throw NotALattice("no unique top element");
  lat.bottom_ = bottoms[0];
  lat.top_ = tops[0];

  // Meet and join of every pair: the candidate bound set must have a unique
  // extreme member.
  lat.meet_.assign(n * n, 0);
  lat.join_.assign(n * n, 0);
  std::vector<std::size_t> cand;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      cand.clear();
      for (std::size_t x = 0; x < n; ++x)
        if (leq[x * n + a] && leq[x * n + b]) cand.push_back(x);
      std::size_t greatest = n;
      for (std::size_t x : cand) {
        bool dominates_all = true;
        for (std::size_t y : cand)
          if (!leq[y * n + x]) { dominates_all = false; break; }
        if (dominates_all) { greatest = x; break; }
      }
      if (greatest == n)
        throw NotALattice("pair lacks a unique meet: " + lat.names_[a] + ", " + lat.names_[b]);
      lat.meet_[a * n + b] = lat.meet_[b * n + a] = greatest;

      cand.clear();
      for (std::size_t x = 0; x < n; ++x)
        if (leq[a * n + x] && leq[b * n + x]) cand.push_back(x);
      std::size_t least = n;
      for (std::size_t x : cand) {
        bool below_all = true;
        for (std::size_t y : cand)
          if (!leq[x * n + y]) { below_all = false; break; }
        if (below_all) { least = x; break; }
      }
      if (least == n)
        throw NotALattice("pair lacks a unique join: " + lat.names_[a] + ", " + lat.names_[b]);
      lat.join_[a * n + b] = lat.join_[b * n + a] = least;
    }
  }

  // Irredundant covers recomputed from the closure: a < b with nothing
  // strictly between.
  lat.lower_covers_.assign(n, {});
  lat.upper_covers_.assign(n, {});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq[a * n + b]) continue;
      bool is_cover = true;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (leq[a * n + c] && leq[c * n + b]) { is_cover = false; break; }
      }
      if (is_cover) {
        lat.covers_.emplace_back(a, b);
        lat.upper_covers_[a].push_back(b);
        lat.lower_covers_[b].push_back(a);
      }
    }
  }
  return lat;
}

std::size_t Lattice::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw UnknownElement("unknown element: " + name);
}

bool Lattice::contains(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

bool is_distributive(const Lattice& lat) {
  const std::size_t n = lat.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)))
          return false;
  return true;
}

bool is_modular(const Lattice& lat) {
  const std::size_t n = lat.size();
  // a <= z  implies  (a v b) ^ z = a v (b ^ z)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t z = 0; z < n; ++z) {
      if (!lat.leq(a, z)) continue;
      for (std::size_t b = 0; b < n; ++b)
        if (lat.meet(lat.join(a, b), z) != lat.join(a, lat.meet(b, z)))
          return false;
    }
  return true;
}

std::vector<IrreducibleElement> join_irreducibles(const Lattice& lat) {
  std::vector<IrreducibleElement> out;
  for (std::size_t v = 0; v < lat.size(); ++v)
    if (v != lat.bottom() && lat.lower_covers(v).size() == 1)
      out.push_back({v, lat.lower_covers(v)[0]});
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    return lat.name(x.element) < lat.name(y.element);
  });
  return out;
}

namespace {

std::string downset_name(const Lattice& src, const std::vector<std::size_t>& irr,
                         std::uint64_t mask) {
  std::vector<std::string> members;
  for (std::size_t k = 0; k < irr.size(); ++k)
    if (mask >> k & 1) members.push_back(src.name(irr[k]));
  std::sort(members.begin(), members.end());
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += ",";
    s += members[i];
  }
  return s + "}";
}

}  // namespace

BirkhoffDecomposition birkhoff_decompose(const Lattice& lat) {
  if (!is_distributive(lat)) throw NotDistributive("lattice is not distributive");

  BirkhoffDecomposition out;
  auto irr = join_irreducibles(lat);
  const std::size_t k = irr.size();
  if (k > 62) throw TooLarge("more than 62 join-irreducibles");
  for (const auto& j : irr) out.irreducibles.push_back(j.element);

  out.poset_leq.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out.poset_leq[i][j] = lat.leq(irr[i].element, irr[j].element);

  // Enumerate all downsets of the irreducible poset.
  std::set<std::uint64_t> downsets;
  std::vector<std::uint64_t> frontier{0};
  downsets.insert(0);
  while (!frontier.empty()) {
    std::uint64_t s = frontier.back();
    frontier.pop_back();
    for (std::size_t p = 0; p < k; ++p) {
      if (s >> p & 1) continue;
      bool below_in = true;
      for (std::size_t q = 0; q < k; ++q)
        if (q != p && out.poset_leq[q][p] && !(s >> q & 1)) { below_in = false; break; }
      if (!below_in) continue;
      std::uint64_t t = s | (std::uint64_t{1} << p);
      if (downsets.insert(t).second) frontier.push_back(t);
    }
  }

  std::vector<std::uint64_t> masks(downsets.begin(), downsets.end());
  std::vector<std::string> names;
  names.reserve(masks.size());
  std::map<std::uint64_t, std::size_t> pos;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    names.push_back(downset_name(lat, out.irreducibles, masks[i]));
    pos[masks[i]] = i;
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t p = 0; p < k; ++p) {
      std::uint64_t t = masks[i] | (std::uint64_t{1} << p);
      if (t != masks[i] && pos.count(t)) covers.emplace_back(names[i], names[pos[t]]);
    }
  out.downset_lattice = Lattice::build(names, covers);

  // m -> { g in J | g <= m }, then check both directions of the order.
  out.iso.assign(lat.size(), 0);
  std::vector<bool> hit(out.downset_lattice.size(), false);
  out.isomorphic = masks.size() == lat.size();
  for (std::size_t m = 0; m < lat.size() && out.isomorphic; ++m) {
    std::uint64_t mask = 0;
    for (std::size_t p = 0; p < k; ++p)
      if (lat.leq(out.irreducibles[p], m)) mask |= std::uint64_t{1} << p;
    auto it = pos.find(mask);
    if (it == pos.end()) { out.isomorphic = false; break; }
    out.iso[m] = out.downset_lattice.index_of(names[it->second]);
    if (hit[out.iso[m]]) { out.isomorphic = false; break; }
    hit[out.iso[m]] = true;
  }
  if (out.isomorphic) {
    for (std::size_t a = 0; a < lat.size() && out.isomorphic; ++a)
      for (std::size_t b = 0; b < lat.size(); ++b)
        if (lat.leq(a, b) != out.downset_lattice.leq(out.iso[a], out.iso[b])) {
          out.isomorphic = false;
          break;
        }
  }
  return out;
}

std::vector<std::vector<std::size_t>> maximal_chains(const Lattice& lat) {
  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::size_t> path{lat.bottom()};
  // DFS along upper covers, visiting successors in lexicographic name order.
  auto recurse = [&](auto&& self, std::size_t v) -> void {
    if (v == lat.top()) {
      chains.push_back(path);
      return;
    }
    auto next = lat.upper_covers(v);
    std::sort(next.begin(), next.end(),
              [&](std::size_t x, std::size_t y) { return lat.name(x) < lat.name(y); });
    for (std::size_t w : next) {
      path.push_back(w);
      self(self, w);
      path.pop_back();
    }
  };
  recurse(recurse, lat.bottom());
  return chains;
}

bool is_maximal_chain(const Lattice& lat, const std::vector<std::size_t>& chain) {
  if (chain.empty() || chain.front() != lat.bottom() || chain.back() != lat.top())
    return false;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto& ups = lat.upper_covers(chain[i]);
    if (std::find(ups.begin(), ups.end(), chain[i + 1]) == ups.end()) return false;
  }
  return true;
}

ChainDecomposition chain_irreducible_sequence(const Lattice& lat,
                                              const std::vector<std::size_t>& chain) {
  if (!is_distributive(lat)) throw NotDistributive("lattice is not distributive");
  if (!is_maximal_chain(lat, chain)) throw NotMaximalChain("not a maximal bottom-to-top chain");

  auto irr = join_irreducibles(lat);
  ChainDecomposition out;
  out.chain = chain;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    // The downset of m_{i+1} gains exactly one irreducible over m_i.
    std::size_t found = lat.size();
    for (const auto& j : irr)
      if (lat.leq(j.element, chain[i + 1]) && !lat.leq(j.element, chain[i])) {
        if (found != lat.size())
          throw AssertionFailure("cover step adds more than one irreducible");
        found = j.element;
      }
    if (found == lat.size())
      throw AssertionFailure("cover step adds no irreducible");
    IrreducibleElement ji{found, lat.lower_covers(found)[0]};
    if (lat.join(chain[i], ji.element) != chain[i + 1] ||
        lat.meet(chain[i], ji.element) != ji.lower_cover)
      throw AssertionFailure("chain identities fail for irreducible " + lat.name(found));
    out.irreducible_sequence.push_back(ji);
  }
  return out;
}

}  // namespace latdiv
