#include "latdiv/generate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace latdiv::gen {

std::vector<std::vector<bool>> random_poset(Rng& rng, std::size_t n, double edge_prob) {
  std::bernoulli_distribution edge(edge_prob);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  // Random edges respecting the index order, then transitive closure.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng)) leq[i][j] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return leq;
}

Lattice downset_lattice(const std::vector<std::vector<bool>>& poset_leq) {
  const std::size_t n = poset_leq.size();
  if (n > 20) throw TooLarge("poset too large for downset enumeration");

  std::set<std::uint32_t> downsets{0};
  std::vector<std::uint32_t> frontier{0};
  while (!frontier.empty()) {
    std::uint32_t s = frontier.back();
    frontier.pop_back();
    for (std::size_t p = 0; p < n; ++p) {
      if (s >> p & 1) continue;
      bool ok = true;
      for (std::size_t q = 0; q < n; ++q)
        if (q != p && poset_leq[q][p] && !(s >> q & 1)) { ok = false; break; }
      if (!ok) continue;
      std::uint32_t t = s | (1u << p);
      if (downsets.insert(t).second) frontier.push_back(t);
    }
  }

  auto render = [n](std::uint32_t mask) {
    std::string s = "{";
    bool first = true;
    for (std::size_t p = 0; p < n; ++p)
      if (mask >> p & 1) {
        if (!first) s += ",";
        s += "p" + std::to_string(p);
        first = false;
      }
    return s + "}";
  };

  std::vector<std::string> names;
  std::map<std::uint32_t, std::string> by_mask;
  for (std::uint32_t mask : downsets) {
    names.push_back(render(mask));
    by_mask[mask] = names.back();
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::uint32_t mask : downsets)
    for (std::size_t p = 0; p < n; ++p) {
      std::uint32_t t = mask | (1u << p);
      if (t != mask && by_mask.count(t)) covers.emplace_back(by_mask[mask], by_mask[t]);
    }
  return Lattice::build(names, covers);
}

Lattice random_distributive_lattice(Rng& rng, std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> size(1, max_points);
  return downset_lattice(random_poset(rng, size(rng)));
}

Valuation valuation_from_increments(const Lattice& lat, const std::vector<double>& incr) {
  auto irr = join_irreducibles(lat);
  if (incr.size() != irr.size())
    throw ValidationError("one increment per join-irreducible expected");
  std::vector<double> values(lat.size(), 0.0);
  for (std::size_t m = 0; m < lat.size(); ++m)
    for (std::size_t k = 0; k < irr.size(); ++k)
      if (lat.leq(irr[k].element, m)) values[m] += incr[k];
  return make_valuation(lat, std::move(values));
}

Valuation random_valuation(Rng& rng, const Lattice& lat, bool strictly_positive) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> incr(join_irreducibles(lat).size());
  for (double& d : incr) d = strictly_positive ? 0.05 + unit(rng) : unit(rng);
  return valuation_from_increments(lat, incr);
}

namespace {

struct Block {
  Lattice lat;
  std::vector<double> mu;
  std::vector<double> nu;
};

Block make_chain(Rng& rng, std::size_t length) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i <= length; ++i) {
    names.push_back("c" + std::to_string(i));
    if (i) covers.emplace_back(names[i - 1], names[i]);
  }
  Block b;
  b.lat = Lattice::build(names, covers);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  b.mu.assign(length + 1, 0.0);
  b.nu.assign(length + 1, 0.0);
  for (std::size_t i = 1; i <= length; ++i) {
    std::size_t e = b.lat.index_of("c" + std::to_string(i));
    std::size_t prev = b.lat.index_of("c" + std::to_string(i - 1));
    b.mu[e] = b.mu[prev] + unit(rng);
    b.nu[e] = b.nu[prev] + unit(rng);
  }
  return b;
}

Block make_b2(Rng& rng) {
  Block b;
  b.lat = Lattice::build({"0", "p", "q", "1"}, {{"0", "p"}, {"0", "q"}, {"p", "1"}, {"q", "1"}});
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  auto fill = [&](std::vector<double>& v) {
    double dp = unit(rng), dq = unit(rng);
    v.assign(4, 0.0);
    v[b.lat.index_of("p")] = dp;
    v[b.lat.index_of("q")] = dq;
    v[b.lat.index_of("1")] = dp + dq;
  };
  fill(b.mu);
  fill(b.nu);
  return b;
}

// N5: 0 < a < b < 1 and 0 < c < 1.  Any valuation has value(a) = value(b).
Block make_n5(Rng& rng) {
  Block b;
  b.lat = Lattice::build({"0", "a", "b", "c", "1"},
                         {{"0", "a"}, {"a", "b"}, {"0", "c"}, {"b", "1"}, {"c", "1"}});
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  auto fill = [&](std::vector<double>& v) {
    double x = unit(rng), y = unit(rng);
    v.assign(5, 0.0);
    v[b.lat.index_of("a")] = x;
    v[b.lat.index_of("b")] = x;
    v[b.lat.index_of("c")] = y;
    v[b.lat.index_of("1")] = x + y;
  };
  fill(b.mu);
  fill(b.nu);
  return b;
}

// M3: three incomparable atoms; the modular law forces all three values
// equal to half the top.
Block make_m3(Rng& rng) {
  Block b;
  b.lat = Lattice::build({"0", "a", "b", "c", "1"},
                         {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  auto fill = [&](std::vector<double>& v) {
    double s = unit(rng);
    v.assign(5, 0.0);
    v[b.lat.index_of("a")] = s;
    v[b.lat.index_of("b")] = s;
    v[b.lat.index_of("c")] = s;
    v[b.lat.index_of("1")] = 2.0 * s;
  };
  fill(b.mu);
  fill(b.nu);
  return b;
}

// Stack B on top of A, identifying top(A) with bottom(B).
Block ordinal_sum(const Block& a, const Block& b) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  auto aname = [&](std::size_t i) { return "l." + a.lat.name(i); };
  auto bname = [&](std::size_t i) {
    return i == b.lat.bottom() ? aname(a.lat.top()) : "u." + b.lat.name(i);
  };
  for (std::size_t i = 0; i < a.lat.size(); ++i) names.push_back(aname(i));
  for (std::size_t i = 0; i < b.lat.size(); ++i)
    if (i != b.lat.bottom()) names.push_back(bname(i));
  for (const auto& [lo, hi] : a.lat.covers()) covers.emplace_back(aname(lo), aname(hi));
  for (const auto& [lo, hi] : b.lat.covers()) covers.emplace_back(bname(lo), bname(hi));

  Block out;
  out.lat = Lattice::build(names, covers);
  out.mu.assign(out.lat.size(), 0.0);
  out.nu.assign(out.lat.size(), 0.0);
  for (std::size_t i = 0; i < a.lat.size(); ++i) {
    out.mu[out.lat.index_of(aname(i))] = a.mu[i];
    out.nu[out.lat.index_of(aname(i))] = a.nu[i];
  }
  double mu_off = a.mu[a.lat.top()], nu_off = a.nu[a.lat.top()];
  for (std::size_t i = 0; i < b.lat.size(); ++i) {
    if (i == b.lat.bottom()) continue;
    out.mu[out.lat.index_of(bname(i))] = mu_off + b.mu[i];
    out.nu[out.lat.index_of(bname(i))] = nu_off + b.nu[i];
  }
  return out;
}

// Direct product with componentwise order; values add.
Block product(const Block& a, const Block& b) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  auto pname = [&](std::size_t i, std::size_t j) {
    return "(" + a.lat.name(i) + "|" + b.lat.name(j) + ")";
  };
  for (std::size_t i = 0; i < a.lat.size(); ++i)
    for (std::size_t j = 0; j < b.lat.size(); ++j) names.push_back(pname(i, j));
  for (std::size_t i = 0; i < a.lat.size(); ++i)
    for (const auto& [lo, hi] : b.lat.covers()) covers.emplace_back(pname(i, lo), pname(i, hi));
  for (std::size_t j = 0; j < b.lat.size(); ++j)
    for (const auto& [lo, hi] : a.lat.covers()) covers.emplace_back(pname(lo, j), pname(hi, j));

  Block out;
  out.lat = Lattice::build(names, covers);
  out.mu.assign(out.lat.size(), 0.0);
  out.nu.assign(out.lat.size(), 0.0);
  for (std::size_t i = 0; i < a.lat.size(); ++i)
    for (std::size_t j = 0; j < b.lat.size(); ++j) {
      out.mu[out.lat.index_of(pname(i, j))] = a.mu[i] + b.mu[j];
      out.nu[out.lat.index_of(pname(i, j))] = a.nu[i] + b.nu[j];
    }
  return out;
}

Block random_block(Rng& rng, std::size_t budget, bool allow_nondistributive) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool leaf = budget <= 1 || unit(rng) < 0.45;
  if (leaf) {
    std::vector<int> options{0};  // chain
    if (budget >= 2) options.push_back(1);  // B2
    if (budget >= 3 && allow_nondistributive) {
      options.push_back(2);  // N5
      options.push_back(3);  // M3
    }
    int pick = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    switch (pick) {
      case 1: return make_b2(rng);
      case 2: return make_n5(rng);
      case 3: return make_m3(rng);
      default:
        return make_chain(rng, std::uniform_int_distribution<std::size_t>(
                                   1, std::min<std::size_t>(budget, 3))(rng));
    }
  }
  std::size_t left = std::uniform_int_distribution<std::size_t>(1, budget - 1)(rng);
  Block a = random_block(rng, left, allow_nondistributive);
  Block b = random_block(rng, budget - left, allow_nondistributive);
  return unit(rng) < 0.5 ? ordinal_sum(a, b) : product(a, b);
}

}  // namespace

ValuatedLattice random_valuated_lattice(Rng& rng, std::size_t max_irreducibles,
                                        bool allow_nondistributive) {
  std::uniform_int_distribution<std::size_t> budget_dist(2, std::max<std::size_t>(2, max_irreducibles));
  Block b = random_block(rng, budget_dist(rng), allow_nondistributive);
  ValuatedLattice out;
  out.mu = make_valuation(b.lat, b.mu);
  out.nu = make_valuation(b.lat, b.nu);
  out.lattice = std::move(b.lat);
  return out;
}

FormalContext random_context(Rng& rng, std::size_t max_objects, std::size_t max_attributes) {
  std::uniform_int_distribution<std::size_t> gsize(1, max_objects), msize(1, max_attributes);
  std::bernoulli_distribution hit(0.5);
  std::size_t g = gsize(rng), m = msize(rng);
  std::vector<std::string> objects, attributes;
  for (std::size_t i = 0; i < g; ++i) objects.push_back("g" + std::to_string(i));
  for (std::size_t j = 0; j < m; ++j) attributes.push_back("m" + std::to_string(j));
  std::vector<std::pair<std::string, std::string>> incidence;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (hit(rng)) incidence.emplace_back(objects[i], attributes[j]);
  return FormalContext::build(objects, attributes, incidence);
}

FormalContext context_of_lattice(const Lattice& lat) {
  std::vector<std::pair<std::string, std::string>> incidence;
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (std::size_t b = 0; b < lat.size(); ++b)
      if (lat.leq(a, b)) incidence.emplace_back(lat.name(a), lat.name(b));
  return FormalContext::build(lat.elements(), lat.elements(), incidence);
}

JointDistribution random_joint(Rng& rng, std::size_t vars) {
  std::gamma_distribution<double> gamma1(1.0, 1.0);
  const std::size_t count = std::size_t{1} << vars;
  std::vector<double> w(count);
  double total = 0.0;
  for (double& x : w) {
    x = gamma1(rng);
    total += x;
  }
  std::vector<std::string> names;
  for (std::size_t v = 0; v < vars; ++v) names.push_back("X" + std::to_string(v));
  std::vector<std::pair<std::vector<std::string>, double>> outcomes;
  double acc = 0.0;
  for (std::size_t o = 0; o < count; ++o) {
    std::vector<std::string> values;
    for (std::size_t v = 0; v < vars; ++v) values.push_back(o >> v & 1 ? "1" : "0");
    double p = (o + 1 == count) ? 1.0 - acc : w[o] / total;
    acc += p;
    outcomes.emplace_back(std::move(values), p);
  }
  return JointDistribution::build(std::move(names), std::move(outcomes));
}

DiscreteMeasure random_measure(Rng& rng, std::size_t atoms, bool strictly_positive) {
  std::gamma_distribution<double> gamma1(1.0, 1.0);
  std::bernoulli_distribution kill(0.15);
  std::vector<double> w(atoms);
  for (double& x : w) {
    x = gamma1(rng);
    if (strictly_positive)
      x += 0.05;
    else if (kill(rng))
      x = 0.0;
  }
  return DiscreteMeasure::build(std::move(w));
}

RefinementSequence random_refinement(Rng& rng, std::size_t atoms, std::size_t levels) {
  // Build fine to coarse by merging random block pairs, then reverse.
  std::vector<Partition> stack;
  std::vector<std::vector<std::size_t>> blocks;
  std::bernoulli_distribution singleton_start(0.5);
  if (singleton_start(rng)) {
    for (std::size_t i = 0; i < atoms; ++i) blocks.push_back({i});
  } else {
    std::uniform_int_distribution<std::size_t> group(0, std::max<std::size_t>(1, atoms / 2));
    std::map<std::size_t, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < atoms; ++i) grouped[group(rng)].push_back(i);
    for (auto& [_, members] : grouped) blocks.push_back(std::move(members));
  }
  stack.push_back(Partition::build(atoms, blocks));
  while (stack.size() < levels) {
    auto coarser = stack.back().blocks;
    if (coarser.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, coarser.size() - 1);
      std::size_t i = pick(rng), j = pick(rng);
      while (j == i) j = pick(rng);
      if (i > j) std::swap(i, j);
      coarser[i].insert(coarser[i].end(), coarser[j].begin(), coarser[j].end());
      coarser.erase(coarser.begin() + static_cast<std::ptrdiff_t>(j));
    }
    stack.push_back(Partition::build(atoms, coarser));
  }
  std::reverse(stack.begin(), stack.end());
  return RefinementSequence::build(std::move(stack));
}

MartingalePath random_martingale(Rng& rng, std::size_t atoms, std::size_t levels) {
  // Base probability, strictly positive so conditional averages are defined.
  std::gamma_distribution<double> gamma1(1.0, 1.0);
  std::vector<double> q(atoms);
  double qt = 0.0;
  for (double& x : q) {
    x = 0.05 + gamma1(rng);
    qt += x;
  }
  for (double& x : q) x /= qt;
  DiscreteMeasure base = DiscreteMeasure::build(q);

  // Merge upward from singletons so the terminal level is unconstrained.
  std::vector<Partition> parts{Partition::singletons(atoms)};
  while (parts.size() < levels) {
    auto coarser = parts.back().blocks;
    if (coarser.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, coarser.size() - 1);
      std::size_t i = pick(rng), j = pick(rng);
      while (j == i) j = pick(rng);
      if (i > j) std::swap(i, j);
      coarser[i].insert(coarser[i].end(), coarser[j].begin(), coarser[j].end());
      coarser.erase(coarser.begin() + static_cast<std::ptrdiff_t>(j));
    }
    parts.push_back(Partition::build(atoms, coarser));
  }
  std::reverse(parts.begin(), parts.end());
  auto refinement = RefinementSequence::build(std::move(parts));

  std::bernoulli_distribution kill(0.1);
  std::vector<double> terminal(atoms);
  double mean = 0.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    terminal[i] = kill(rng) ? 0.0 : gamma1(rng);
    mean += terminal[i] * base.weights[i];
  }
  if (mean <= 0.0) {
    terminal.assign(atoms, 1.0);
    mean = 1.0;
  }
  for (double& x : terminal) x /= mean;

  std::vector<std::vector<double>> rows(levels);
  rows[levels - 1] = terminal;
  for (std::size_t j = levels - 1; j-- > 0;) {
    rows[j].assign(atoms, 0.0);
    for (const auto& block : refinement.levels[j].blocks) {
      double qb = 0.0, avg = 0.0;
      for (std::size_t i : block) {
        qb += base.weights[i];
        avg += rows[j + 1][i] * base.weights[i];
      }
      avg /= qb;
      for (std::size_t i : block) rows[j][i] = avg;
    }
  }
  return make_martingale(std::move(refinement), std::move(base), std::move(rows));
}

}  // namespace latdiv::gen
