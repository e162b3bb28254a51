// Python bindings for the main operations: lattices and valuations,
// concept enumeration, divergences, information projections, martingale
// checks and the blow-up construction.  Containers cross the boundary as
// plain lists/dicts; the Lattice itself is an opaque handle.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latdiv/counterexample.hpp"
#include "latdiv/entropy.hpp"
#include "latdiv/fca.hpp"
#include "latdiv/generate.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/martingale.hpp"
#include "latdiv/measure.hpp"
#include "latdiv/valuation.hpp"

namespace py = pybind11;
using namespace latdiv;

namespace {

Valuation valuation_from_dict(const Lattice& lat, const std::map<std::string, double>& values) {
  std::vector<double> v(lat.size());
  if (values.size() != lat.size())
    throw MissingValue("expected one value per lattice element");
  for (const auto& [name, x] : values) v[lat.index_of(name)] = x;
  return make_valuation(lat, std::move(v));
}

DiscreteMeasure measure_from_list(const std::vector<double>& weights) {
  return DiscreteMeasure::build(weights);
}

RefinementSequence refinement_from_lists(
    std::size_t n, const std::vector<std::vector<std::vector<std::size_t>>>& levels) {
  std::vector<Partition> parts;
  for (const auto& blocks : levels) parts.push_back(Partition::build(n, blocks));
  return RefinementSequence::build(std::move(parts));
}

DensitySpec named_density(const std::string& name) {
  if (name == "canonical") return DensitySpec::canonical();
  if (name == "uniform") return DensitySpec::uniform();
  if (name == "rho2x") return DensitySpec::rho2x();
  throw ValidationError("unknown density: " + name);
}

}  // namespace

PYBIND11_MODULE(_latdiv, m) {
  m.doc() = "information divergence of lattice valuations and Radon-Nikodym approximation";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<AssertionFailure>(m, "AssertionFailure");

  py::class_<Lattice>(m, "Lattice")
      .def(py::init([](const std::vector<std::string>& elements,
                       const std::vector<std::pair<std::string, std::string>>& covers) {
             return Lattice::build(elements, covers);
           }),
           py::arg("elements"), py::arg("covers"))
      .def("__len__", &Lattice::size)
      .def_property_readonly("elements", &Lattice::elements)
      .def_property_readonly("bottom", [](const Lattice& l) { return l.name(l.bottom()); })
      .def_property_readonly("top", [](const Lattice& l) { return l.name(l.top()); })
      .def("leq",
           [](const Lattice& l, const std::string& a, const std::string& b) {
             return l.leq(l.index_of(a), l.index_of(b));
           })
      .def("meet",
           [](const Lattice& l, const std::string& a, const std::string& b) {
             return l.name(l.meet(l.index_of(a), l.index_of(b)));
           })
      .def("join",
           [](const Lattice& l, const std::string& a, const std::string& b) {
             return l.name(l.join(l.index_of(a), l.index_of(b)));
           })
      .def("covers",
           [](const Lattice& l) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& [lo, hi] : l.covers()) out.emplace_back(l.name(lo), l.name(hi));
             return out;
           })
      .def("is_distributive", [](const Lattice& l) { return is_distributive(l); })
      .def("is_modular", [](const Lattice& l) { return is_modular(l); })
      .def("join_irreducibles",
           [](const Lattice& l) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& j : join_irreducibles(l))
               out.emplace_back(l.name(j.element), l.name(j.lower_cover));
             return out;
           })
      .def("maximal_chains", [](const Lattice& l) {
        std::vector<std::vector<std::string>> out;
        for (const auto& chain : maximal_chains(l)) {
          std::vector<std::string> named;
          for (std::size_t x : chain) named.push_back(l.name(x));
          out.push_back(std::move(named));
        }
        return out;
      });

  m.def(
      "birkhoff_decompose",
      [](const Lattice& l) {
        auto bd = birkhoff_decompose(l);
        py::dict out;
        std::vector<std::string> irr;
        for (std::size_t e : bd.irreducibles) irr.push_back(l.name(e));
        out["irreducibles"] = irr;
        out["downset_elements"] = bd.downset_lattice.elements();
        out["isomorphic"] = bd.isomorphic;
        return out;
      },
      py::arg("lattice"));

  m.def(
      "lattice_divergence",
      [](const Lattice& l, const std::map<std::string, double>& mu,
         const std::map<std::string, double>& nu) {
        auto res = lattice_divergence(l, valuation_from_dict(l, mu), valuation_from_dict(l, nu));
        py::dict out;
        out["D"] = res.value;
        out["domination_ok"] = res.domination_ok;
        out["contributions"] = res.contributions;
        return out;
      },
      py::arg("lattice"), py::arg("mu"), py::arg("nu"));

  m.def(
      "chain_divergence",
      [](const Lattice& l, const std::map<std::string, double>& mu,
         const std::map<std::string, double>& nu, const std::vector<std::string>& chain) {
        std::vector<std::size_t> idx;
        for (const auto& name : chain) idx.push_back(l.index_of(name));
        return chain_divergence(l, valuation_from_dict(l, mu), valuation_from_dict(l, nu), idx);
      },
      py::arg("lattice"), py::arg("mu"), py::arg("nu"), py::arg("chain"));

  m.def(
      "enumerate_concepts",
      [](const std::vector<std::string>& objects, const std::vector<std::string>& attributes,
         const std::vector<std::pair<std::string, std::string>>& incidence) {
        auto ctx = FormalContext::build(objects, attributes, incidence);
        auto cl = enumerate_concepts(ctx);
        auto counting = counting_valuation(cl);
        py::list concepts;
        for (const auto& c : cl.concepts) {
          py::dict jc;
          std::vector<std::string> extent, intent;
          for (std::size_t g = 0; g < ctx.objects().size(); ++g)
            if (c.extent >> g & 1) extent.push_back(ctx.objects()[g]);
          for (std::size_t a = 0; a < ctx.attributes().size(); ++a)
            if (c.intent >> a & 1) intent.push_back(ctx.attributes()[a]);
          jc["extent"] = extent;
          jc["intent"] = intent;
          concepts.append(jc);
        }
        py::dict out;
        out["concepts"] = concepts;
        out["lattice_elements"] = cl.lattice.elements();
        out["counting_is_valuation"] = counting.is_valuation;
        out["distributive"] = counting.distributive;
        return out;
      },
      py::arg("objects"), py::arg("attributes"), py::arg("incidence"));

  m.def(
      "subset_entropy",
      [](const std::vector<std::string>& variables,
         const std::vector<std::pair<std::vector<std::string>, double>>& outcomes,
         const std::vector<std::string>& subset) {
        auto joint = JointDistribution::build(variables, outcomes);
        std::uint64_t mask = 0;
        for (const auto& v : subset) mask |= std::uint64_t{1} << joint.variable_index(v);
        return subset_entropy(joint, mask);
      },
      py::arg("variables"), py::arg("outcomes"), py::arg("subset"));

  m.def(
      "shannon_check",
      [](const std::vector<std::string>& variables,
         const std::vector<std::pair<std::vector<std::string>, double>>& outcomes) {
        auto rep = shannon_check(JointDistribution::build(variables, outcomes));
        py::dict out;
        out["ok"] = rep.ok;
        out["strictness_slack"] = rep.strictness_slack;
        out["monotonicity_slack"] = rep.monotonicity_slack;
        out["submodularity_slack"] = rep.submodularity_slack;
        return out;
      },
      py::arg("variables"), py::arg("outcomes"));

  m.def(
      "functional_closure",
      [](const std::vector<std::string>& variables,
         const std::vector<std::pair<std::vector<std::string>, double>>& outcomes,
         const std::vector<std::string>& subset) {
        auto joint = JointDistribution::build(variables, outcomes);
        std::uint64_t mask = 0;
        for (const auto& v : subset) mask |= std::uint64_t{1} << joint.variable_index(v);
        std::uint64_t cl = functional_closure(joint, mask);
        std::vector<std::string> out;
        for (std::size_t i = 0; i < variables.size(); ++i)
          if (cl >> i & 1) out.push_back(variables[i]);
        return out;
      },
      py::arg("variables"), py::arg("outcomes"), py::arg("subset"));

  m.def(
      "kl_divergence",
      [](const std::vector<double>& mu, const std::vector<double>& nu) {
        return kl_divergence(measure_from_list(mu), measure_from_list(nu));
      },
      py::arg("mu"), py::arg("nu"));

  m.def("scalar_divergence", &scalar_divergence, py::arg("k"), py::arg("l"));
  m.def("gamma", &gamma_kernel, py::arg("x"));

  m.def(
      "projection_density",
      [](const std::vector<double>& mu, const std::vector<double>& nu,
         const std::vector<std::vector<std::size_t>>& blocks) {
        auto res = projection_density(measure_from_list(mu), measure_from_list(nu),
                                      Partition::build(mu.size(), blocks));
        py::dict out;
        out["density"] = res.density;
        out["projected"] = res.projected.weights;
        out["restricted_divergence"] = res.restricted_divergence;
        return out;
      },
      py::arg("mu"), py::arg("nu"), py::arg("blocks"));

  m.def(
      "pythagorean_gap",
      [](const std::vector<double>& theta, const std::vector<double>& mu,
         const std::vector<double>& nu, const std::vector<std::vector<std::size_t>>& blocks) {
        return pythagorean_gap(measure_from_list(theta), measure_from_list(mu),
                               measure_from_list(nu), Partition::build(mu.size(), blocks));
      },
      py::arg("theta"), py::arg("mu"), py::arg("nu"), py::arg("blocks"));

  m.def(
      "measure_join_meet",
      [](const std::vector<std::vector<double>>& measures) {
        std::vector<DiscreteMeasure> ms;
        for (const auto& w : measures) ms.push_back(measure_from_list(w));
        auto [hi, lo] = measure_join_meet(ms);
        return std::make_pair(hi.weights, lo.weights);
      },
      py::arg("measures"));

  m.def(
      "rn_approximate",
      [](const std::vector<double>& mu, const std::vector<double>& nu,
         const std::vector<std::vector<std::vector<std::size_t>>>& levels,
         const std::vector<std::vector<std::size_t>>& test_sets) {
        auto rep = rn_approximate(measure_from_list(mu), measure_from_list(nu),
                                  refinement_from_lists(mu.size(), levels), test_sets);
        py::dict out;
        out["D_full"] = rep.d_full;
        py::list level_rows;
        for (const auto& ld : rep.levels) {
          py::dict row;
          row["level"] = ld.level;
          row["D_restricted"] = ld.d_restricted;
          row["gap"] = ld.gap;
          row["l1_to_final"] = ld.l1_to_final;
          level_rows.append(row);
        }
        out["levels"] = level_rows;
        out["densities"] = rep.densities;
        out["gaps_monotone"] = rep.gaps_monotone;
        out["inequality_violations"] = rep.inequality_violations;
        py::list traces;
        for (const auto& t : rep.set_traces) {
          py::dict jt;
          jt["set"] = t.set;
          jt["mu_exact"] = t.mu_exact;
          jt["mu_n"] = t.per_level;
          jt["mu_n_augmented"] = t.augmented;
          traces.append(jt);
        }
        out["set_traces"] = traces;
        return out;
      },
      py::arg("mu"), py::arg("nu"), py::arg("levels"),
      py::arg("test_sets") = std::vector<std::vector<std::size_t>>{});

  m.def(
      "doob_demo",
      [](std::uint64_t seed, std::size_t paths, std::size_t atoms, std::size_t levels,
         const std::vector<double>& lambdas) {
        gen::Rng rng(seed);
        std::size_t violations = 0, printed_failures = 0;
        for (std::size_t p = 0; p < paths; ++p) {
          auto path = gen::random_martingale(rng, atoms, levels);
          for (const auto& r : doob_check(path, lambdas)) {
            if (!r.max_ok || !r.min_ok) ++violations;
            if (!r.printed_min_ok) ++printed_failures;
          }
          for (std::size_t a = 1; a <= levels; ++a)
            for (std::size_t b = a; b <= levels; ++b)
              if (!gamma_bound_check(path, a, b).ok) ++violations;
        }
        py::dict out;
        out["violations"] = violations;
        out["printed_min_failures"] = printed_failures;
        return out;
      },
      py::arg("seed"), py::arg("paths"), py::arg("atoms"), py::arg("levels"),
      py::arg("lambdas") = std::vector<double>{0.5, 1.0, 2.0, 4.0});

  m.def(
      "rho_max",
      [](const std::string& density, double x) { return rho_max(named_density(density), x); },
      py::arg("density"), py::arg("x"));

  m.def(
      "fubini_identity_check",
      [](const std::string& density, double delta) {
        auto res = fubini_identity_check(named_density(density), delta);
        py::dict out;
        out["lhs"] = res.lhs;
        out["rhs"] = res.rhs;
        out["rel_gap"] = res.rel_gap;
        return out;
      },
      py::arg("density"), py::arg("delta"));

  m.def(
      "blowup_demo",
      [](const std::string& density, const std::vector<double>& deltas) {
        py::list out;
        for (const auto& row : blowup_demo(named_density(density), deltas)) {
          py::dict r;
          r["delta"] = row.delta;
          r["n"] = row.n;
          r["integral_sup"] = row.integral_sup;
          r["rho_max_integral"] = row.rho_max_integral;
          r["closed_form"] = row.closed_form;
          r["rel_gap"] = row.rel_gap;
          out.append(r);
        }
        return out;
      },
      py::arg("density"), py::arg("deltas"));

  m.attr("__version__") = "0.1.0";
}
