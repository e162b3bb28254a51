// latdiv: information divergence of valuations on finite distributive
// lattices, information projections over partition refinements, and the
// convergence diagnostics around them.  One subcommand per module; JSON in,
// JSON or CSV out; exit 0 iff every requested assertion holds.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latdiv/counterexample.hpp"
#include "latdiv/entropy.hpp"
#include "latdiv/fca.hpp"
#include "latdiv/generate.hpp"
#include "latdiv/json_io.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/martingale.hpp"
#include "latdiv/measure.hpp"
#include "latdiv/valuation.hpp"

namespace {

using latdiv::io::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitAssertion = 4;

void emit(const json& doc, const std::string& out_path) {
  std::string text = doc.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    latdiv::io::write_text_file(out_path, text);
}

std::string dirname_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

latdiv::Lattice load_lattice_for_valuation(const std::string& lattice_path,
                                           const json& valuation_doc,
                                           const std::string& valuation_path) {
  if (!lattice_path.empty())
    return latdiv::io::parse_lattice(latdiv::io::read_json_file(lattice_path));
  if (latdiv::io::valuation_has_inline_lattice(valuation_doc))
    return latdiv::io::parse_valuation_lattice(valuation_doc, dirname_of(valuation_path));
  throw latdiv::ParseError("no lattice given: use --lattice or embed one in the valuation");
}

json violation_to_json(const latdiv::ValuationViolation& v, const latdiv::Lattice& lat) {
  json j;
  j["ok"] = v.ok();
  if (!v.ok()) {
    j["law"] = v.law == latdiv::ValuationLaw::strictness     ? "strictness"
               : v.law == latdiv::ValuationLaw::monotonicity ? "monotonicity"
                                                             : "modularity";
    j["witness"] = json::array({lat.name(v.a), lat.name(v.b)});
    j["message"] = v.message;
  }
  return j;
}

int cmd_lattice_check(const std::string& lattice_path, const std::string& mu_path,
                      const std::string& out_path, double tol, bool tables, bool chains) {
  auto lat = latdiv::io::parse_lattice(latdiv::io::read_json_file(lattice_path));
  bool distributive = latdiv::is_distributive(lat);
  json doc;
  doc["elements"] = lat.size();
  doc["bottom"] = lat.name(lat.bottom());
  doc["top"] = lat.name(lat.top());
  doc["distributive"] = distributive;
  doc["modular"] = latdiv::is_modular(lat);
  json irr = json::array();
  for (const auto& j : latdiv::join_irreducibles(lat))
    irr.push_back(json::array({lat.name(j.element), lat.name(j.lower_cover)}));
  doc["join_irreducibles"] = irr;
  auto all_chains = latdiv::maximal_chains(lat);
  doc["maximal_chains"] = all_chains.size();
  if (distributive) {
    auto bd = latdiv::birkhoff_decompose(lat);
    doc["birkhoff_isomorphic"] = bd.isomorphic;
  }

  if (tables) {
    json meet, join;
    for (std::size_t a = 0; a < lat.size(); ++a) {
      json meet_row, join_row;
      for (std::size_t b = 0; b < lat.size(); ++b) {
        meet_row[lat.name(b)] = lat.name(lat.meet(a, b));
        join_row[lat.name(b)] = lat.name(lat.join(a, b));
      }
      meet[lat.name(a)] = meet_row;
      join[lat.name(a)] = join_row;
    }
    doc["meet"] = meet;
    doc["join"] = join;
  }

  if (chains && distributive) {
    json decomposed = json::array();
    for (const auto& chain : all_chains) {
      auto cd = latdiv::chain_irreducible_sequence(lat, chain);
      json jc;
      json path = json::array(), seq = json::array();
      for (std::size_t x : cd.chain) path.push_back(lat.name(x));
      for (const auto& j : cd.irreducible_sequence)
        seq.push_back(json::array({lat.name(j.element), lat.name(j.lower_cover)}));
      jc["chain"] = path;
      jc["irreducible_sequence"] = seq;
      decomposed.push_back(jc);
    }
    doc["chain_decompositions"] = decomposed;
  }

  bool ok = true;
  if (!mu_path.empty()) {
    json mu_doc = latdiv::io::read_json_file(mu_path);
    auto values = latdiv::io::parse_valuation_values(mu_doc, lat);
    auto violation = latdiv::check_valuation(lat, values, tol);
    doc["valuation"] = violation_to_json(violation, lat);
    ok = violation.ok();
    // Any strict monotone super-modular function has a co-closure; report
    // it whenever the laws allow.
    if (latdiv::check_supermodular(lat, values, tol).ok()) {
      auto cc = latdiv::co_closed_lattice(lat, values, tol);
      json cocl_map;
      for (std::size_t x = 0; x < lat.size(); ++x)
        cocl_map[lat.name(x)] = lat.name(latdiv::cocl(lat, values, x, tol));
      doc["cocl"] = cocl_map;
      json co_closed = json::array();
      for (std::size_t x : cc.original_index) co_closed.push_back(lat.name(x));
      doc["co_closed_elements"] = co_closed;
      doc["co_closed_modular"] = latdiv::is_modular(cc.lattice);
    }
  }
  emit(doc, out_path);
  return ok ? kExitOk : kExitAssertion;
}

int cmd_fca_concepts(const std::string& context_path, const std::string& out_path) {
  auto ctx = latdiv::io::parse_context(latdiv::io::read_json_file(context_path));
  auto cl = latdiv::enumerate_concepts(ctx);
  auto counting = latdiv::counting_valuation(cl);

  json doc;
  json concepts = json::array();
  for (const auto& c : cl.concepts) {
    json jc;
    json extent = json::array(), intent = json::array();
    for (std::size_t g = 0; g < ctx.objects().size(); ++g)
      if (c.extent >> g & 1) extent.push_back(ctx.objects()[g]);
    for (std::size_t m = 0; m < ctx.attributes().size(); ++m)
      if (c.intent >> m & 1) intent.push_back(ctx.attributes()[m]);
    jc["extent"] = extent;
    jc["intent"] = intent;
    concepts.push_back(jc);
  }
  doc["concepts"] = concepts;
  doc["extent_lattice"] = latdiv::io::lattice_to_json(cl.lattice);
  json counting_doc;
  counting_doc["is_valuation"] = counting.is_valuation;
  counting_doc["strict"] = counting.strict;
  counting_doc["monotone"] = counting.monotone;
  counting_doc["modular"] = counting.modular;
  counting_doc["lattice_distributive"] = counting.distributive;
  json values;
  for (std::size_t i = 0; i < cl.lattice.size(); ++i)
    values[cl.lattice.name(i)] = counting.values[i];
  counting_doc["values"] = values;
  doc["counting_valuation"] = counting_doc;
  emit(doc, out_path);
  return kExitOk;
}

int cmd_divergence(const std::string& lattice_path, const std::string& mu_path,
                   const std::string& nu_path, const std::string& out_path, double tol) {
  json mu_doc = latdiv::io::read_json_file(mu_path);
  json nu_doc = latdiv::io::read_json_file(nu_path);
  auto lat = load_lattice_for_valuation(lattice_path, mu_doc, mu_path);
  auto mu = latdiv::make_valuation(lat, latdiv::io::parse_valuation_values(mu_doc, lat));
  auto nu = latdiv::make_valuation(lat, latdiv::io::parse_valuation_values(nu_doc, lat));

  json doc;
  bool distributive = latdiv::is_distributive(lat);
  doc["distributive"] = distributive;

  auto chains = latdiv::maximal_chains(lat);
  double lo = latdiv::kInf, hi = -latdiv::kInf;
  for (const auto& chain : chains) {
    double d = latdiv::chain_divergence(lat, mu, nu, chain);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  bool chain_invariant = std::isinf(lo) ? std::isinf(hi) : (hi - lo) <= tol * (1.0 + hi);
  doc["chain_divergence"] = latdiv::io::number_to_json(hi);
  doc["chain_spread"] = latdiv::io::number_to_json(std::isinf(lo) ? 0.0 : hi - lo);
  doc["chain_invariant"] = chain_invariant;

  bool consistent = true;
  if (distributive) {
    auto res = latdiv::lattice_divergence(lat, mu, nu);
    doc["D"] = latdiv::io::number_to_json(res.value);
    doc["domination_ok"] = res.domination_ok;
    json contributions = json::array();
    auto irr = latdiv::join_irreducibles(lat);
    for (std::size_t i = 0; i < irr.size(); ++i) {
      json c;
      c["irreducible"] = lat.name(irr[i].element);
      c["value"] = latdiv::io::number_to_json(res.contributions[i]);
      contributions.push_back(c);
    }
    doc["contributions"] = contributions;
    if (std::isinf(res.value))
      consistent = std::isinf(hi);
    else
      consistent = std::abs(res.value - hi) <= tol * (1.0 + std::abs(res.value));
    if (lat.size() <= 10) {
      double sup = latdiv::divergence_via_sublattice_sup(lat, mu, nu);
      doc["sublattice_sup"] = latdiv::io::number_to_json(sup);
      if (!std::isinf(res.value))
        consistent = consistent && std::abs(sup - res.value) <= tol * (1.0 + std::abs(res.value));
    }
  } else {
    doc["D"] = latdiv::io::number_to_json(hi);
  }
  doc["consistent"] = consistent;
  emit(doc, out_path);
  return chain_invariant && consistent ? kExitOk : kExitAssertion;
}

int cmd_entropy_check(const std::string& joint_path, const std::string& out_path, double tol) {
  auto joint = latdiv::io::parse_joint(latdiv::io::read_json_file(joint_path));
  auto report = latdiv::shannon_check(joint, tol);

  json doc;
  doc["ok"] = report.ok;
  doc["strictness_slack"] = report.strictness_slack;
  doc["monotonicity_slack"] = report.monotonicity_slack;
  doc["submodularity_slack"] = report.submodularity_slack;
  if (report.monotonicity_slack < -tol)
    doc["monotonicity_witness"] =
        json::array({latdiv::render_variable_set(joint, report.worst_mono_s),
                     latdiv::render_variable_set(joint, report.worst_mono_t)});
  if (report.submodularity_slack < -tol)
    doc["submodularity_witness"] =
        json::array({latdiv::render_variable_set(joint, report.worst_sub_s),
                     latdiv::render_variable_set(joint, report.worst_sub_t)});

  auto dep = latdiv::dependency_lattice(joint, std::max(tol, 1e-9));
  json dep_doc;
  dep_doc["lattice"] = latdiv::io::lattice_to_json(dep.lattice);
  json entropies;
  for (std::size_t i = 0; i < dep.lattice.size(); ++i)
    entropies[dep.lattice.name(i)] = dep.entropies[i];
  dep_doc["entropies"] = entropies;
  doc["dependency_lattice"] = dep_doc;
  emit(doc, out_path);
  return report.ok ? kExitOk : kExitAssertion;
}

int cmd_rn_approx(const std::string& mu_path, const std::string& nu_path, std::size_t levels,
                  const std::string& refinement_path, const std::string& test_sets_path,
                  const std::string& trace_path, const std::string& out_path, double tol) {
  auto mu = latdiv::io::parse_measure(latdiv::io::read_json_file(mu_path));
  auto nu = latdiv::io::parse_measure(latdiv::io::read_json_file(nu_path));

  latdiv::RefinementSequence refinement;
  if (!refinement_path.empty()) {
    refinement = latdiv::io::parse_refinement(latdiv::io::read_json_file(refinement_path), mu.n);
  } else {
    if (levels == 0) throw latdiv::ParseError("need --levels or --refinement");
    if (mu.n != (std::size_t{1} << levels))
      throw latdiv::ValidationError("--levels k needs measures on exactly 2^k atoms");
    refinement = latdiv::RefinementSequence::dyadic(levels);
  }

  std::vector<std::vector<std::size_t>> test_sets;
  if (!test_sets_path.empty())
    test_sets = latdiv::io::parse_test_sets(latdiv::io::read_json_file(test_sets_path));

  auto report = latdiv::rn_approximate(mu, nu, refinement, test_sets);
  if (!trace_path.empty())
    latdiv::io::write_text_file(trace_path, latdiv::io::convergence_csv(report));

  json doc;
  doc["D_full"] = latdiv::io::number_to_json(report.d_full);
  doc["levels"] = report.levels.size();
  doc["final_gap"] = latdiv::io::number_to_json(report.levels.back().gap);
  doc["gaps_monotone"] = report.gaps_monotone;
  doc["inequality_violations"] = report.inequality_violations;
  json traces = json::array();
  for (const auto& t : report.set_traces) {
    json jt;
    jt["set"] = t.set;
    jt["mu_exact"] = latdiv::io::number_to_json(t.mu_exact);
    json per_level = json::array(), augmented = json::array();
    for (double v : t.per_level) per_level.push_back(latdiv::io::number_to_json(v));
    for (double v : t.augmented) augmented.push_back(latdiv::io::number_to_json(v));
    jt["mu_n"] = per_level;
    jt["mu_n_augmented"] = augmented;
    traces.push_back(jt);
  }
  if (!traces.empty()) doc["set_traces"] = traces;

  bool ok = report.gaps_monotone && report.inequality_violations == 0;
  (void)tol;
  doc["ok"] = ok;
  emit(doc, out_path);
  return ok ? kExitOk : kExitAssertion;
}

int cmd_doob(std::size_t paths, std::size_t atoms, std::size_t levels, std::uint64_t seed,
             std::vector<double> lambdas, const std::string& out_path, double tol) {
  if (lambdas.empty()) lambdas = {0.5, 1.0, 2.0, 4.0};
  latdiv::gen::Rng rng(seed);

  std::ostringstream csv;
  csv << "path_id,check,level_m,level_n,lambda,lhs,rhs,residual,pass\n";
  auto row = [&csv](std::size_t path, const char* check, std::size_t m, std::size_t n,
                    double lambda, double lhs, double rhs, double residual, bool pass) {
    csv << path << "," << check << "," << m << "," << n << ","
        << latdiv::io::format_number(lambda) << "," << latdiv::io::format_number(lhs) << ","
        << latdiv::io::format_number(rhs) << "," << latdiv::io::format_number(residual) << ","
        << (pass ? 1 : 0) << "\n";
  };

  std::size_t violations = 0, printed_min_failures = 0;
  double worst_martingale_residual = 0.0;
  for (std::size_t p = 0; p < paths; ++p) {
    auto path = latdiv::gen::random_martingale(rng, atoms, levels);
    worst_martingale_residual = std::max(worst_martingale_residual, latdiv::martingale_residual(path));
    for (const auto& r : latdiv::doob_check(path, lambdas, tol)) {
      row(p, "doob_max", 1, levels, r.lambda, r.max_lhs, r.max_rhs, r.max_residual, r.max_ok);
      row(p, "doob_min", 1, levels, r.lambda, r.min_lhs, r.min_rhs, r.min_residual, r.min_ok);
      row(p, "doob_min_printed", 1, levels, r.lambda, r.printed_min_lhs, r.printed_min_rhs,
          r.printed_min_residual, r.printed_min_ok);
      if (!r.max_ok) ++violations;
      if (!r.min_ok) ++violations;
      if (!r.printed_min_ok) ++printed_min_failures;
    }
    for (std::size_t m = 1; m <= levels; ++m)
      for (std::size_t n = m; n <= levels; ++n) {
        auto g = latdiv::gamma_bound_check(path, m, n, tol);
        row(p, "gamma_max", m, n, 0.0, latdiv::gamma_kernel(g.e_max), g.d_pn_pm,
            g.max_residual, g.max_residual <= tol * (1.0 + std::abs(g.d_pn_pm)));
        row(p, "gamma_min", m, n, 0.0, latdiv::gamma_kernel(g.e_min), g.d_pn_pm,
            g.min_residual, g.min_residual <= tol * (1.0 + std::abs(g.d_pn_pm)));
        if (!g.ok) ++violations;
      }
  }
  if (!out_path.empty())
    latdiv::io::write_text_file(out_path, csv.str());

  json doc;
  doc["paths"] = paths;
  doc["violations"] = violations;
  doc["printed_min_failures"] = printed_min_failures;
  doc["worst_martingale_residual"] = worst_martingale_residual;
  doc["ok"] = violations == 0;
  emit(doc, "");
  return violations == 0 ? kExitOk : kExitAssertion;
}

int cmd_counterexample(const std::string& density, const std::string& deltas_arg,
                       std::size_t count, const std::string& out_path,
                       const std::string& json_out, double tol) {
  latdiv::DensitySpec spec;
  if (density == "canonical")
    spec = latdiv::DensitySpec::canonical();
  else if (density == "uniform")
    spec = latdiv::DensitySpec::uniform();
  else if (density == "rho2x")
    spec = latdiv::DensitySpec::rho2x();
  else {
    // Anything else names a JSON file with a tabulated cumulative:
    // { "name": ..., "cumulative": [[x, M(x)], ...] }
    json j = latdiv::io::read_json_file(density);
    std::vector<std::pair<double, double>> points;
    for (const auto& e : j.at("cumulative"))
      points.emplace_back(latdiv::io::number_from_json(e[0], "cumulative x"),
                          latdiv::io::number_from_json(e[1], "cumulative M"));
    spec = latdiv::DensitySpec::from_cumulative_table(
        j.contains("name") ? j.at("name").get<std::string>() : density, std::move(points));
  }

  // "--deltas a..b" walks decades from a down to b; a comma list is taken
  // verbatim.
  std::vector<double> deltas;
  auto dots = deltas_arg.find("..");
  if (dots != std::string::npos) {
    double first = std::stod(deltas_arg.substr(0, dots));
    double last = std::stod(deltas_arg.substr(dots + 2));
    if (first < last) std::swap(first, last);
    for (double d = first; d >= last * (1.0 - 1e-12); d /= 10.0) deltas.push_back(d);
  } else {
    std::stringstream ss(deltas_arg);
    std::string item;
    while (std::getline(ss, item, ',')) deltas.push_back(std::stod(item));
  }

  auto rows = latdiv::blowup_demo(spec, deltas, count);
  if (!out_path.empty())
    latdiv::io::write_text_file(out_path, latdiv::io::blowup_csv(rows));

  bool nondecreasing = true;
  bool closed_form_ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i && rows[i].integral_sup < rows[i - 1].integral_sup - 1e-12) nondecreasing = false;
    if (!std::isnan(rows[i].rel_gap) && rows[i].rel_gap > tol) closed_form_ok = false;
  }

  json doc;
  doc["density"] = spec.name;
  doc["mass"] = latdiv::io::number_to_json(spec.cumulative(1.0));
  doc["rows"] = rows.size();
  doc["first_integral_sup"] = latdiv::io::number_to_json(rows.front().integral_sup);
  doc["last_integral_sup"] = latdiv::io::number_to_json(rows.back().integral_sup);
  doc["growth"] =
      latdiv::io::number_to_json(rows.back().integral_sup - rows.front().integral_sup);
  doc["trace_nondecreasing"] = nondecreasing;
  doc["closed_form_ok"] = closed_form_ok;
  bool ok = nondecreasing && closed_form_ok;
  doc["ok"] = ok;
  emit(doc, json_out);
  return ok ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information divergence on lattices and Radon-Nikodym approximation"};
  app.require_subcommand(1);

  std::string lattice_path, mu_path, nu_path, context_path, joint_path;
  std::string refinement_path, test_sets_path, trace_path, out_path, json_out;
  std::string density = "canonical";
  std::string deltas = "1e-2..1e-8";
  std::size_t levels = 0, paths = 1000, atoms = 8, count = 0;
  std::uint64_t seed = 1;
  double tol = 1e-9, doob_tol = 1e-12, ce_tol = 1e-3;
  std::vector<double> lambdas;

  bool tables = false, chains = false;
  auto* lc = app.add_subcommand("lattice-check", "validate a lattice and optional valuation");
  lc->add_option("--lattice", lattice_path)->required();
  lc->add_option("--mu", mu_path);
  lc->add_option("--out", out_path);
  lc->add_option("--tol", tol);
  lc->add_flag("--tables", tables, "emit the meet/join tables");
  lc->add_flag("--chains", chains, "emit chain decompositions (distributive only)");

  auto* fc = app.add_subcommand("fca-concepts", "enumerate concepts and the extent lattice");
  fc->add_option("--context", context_path)->required();
  fc->add_option("--out", out_path);

  auto* dv = app.add_subcommand("divergence", "divergence of two valuations on a lattice");
  dv->add_option("--lattice", lattice_path);
  dv->add_option("--mu", mu_path)->required();
  dv->add_option("--nu", nu_path)->required();
  dv->add_option("--out", out_path);
  dv->add_option("--tol", tol);

  auto* ec = app.add_subcommand("entropy-check", "Shannon inequalities and dependency lattice");
  ec->add_option("--joint", joint_path)->required();
  ec->add_option("--out", out_path);
  ec->add_option("--tol", tol);

  auto* rn = app.add_subcommand("rn-approx", "information projections along a refinement");
  rn->add_option("--mu", mu_path)->required();
  rn->add_option("--nu", nu_path)->required();
  rn->add_option("--levels", levels);
  rn->add_option("--refinement", refinement_path);
  rn->add_option("--test-sets", test_sets_path);
  rn->add_option("--trace", trace_path);
  rn->add_option("--out", out_path);
  rn->add_option("--tol", tol);

  auto* db = app.add_subcommand("doob", "Doob and gamma bounds on random martingales");
  db->add_option("--paths", paths);
  db->add_option("--atoms", atoms);
  db->add_option("--levels", levels)->required();
  db->add_option("--seed", seed);
  db->add_option("--lambdas", lambdas)->delimiter(',');
  db->add_option("--out", out_path);
  db->add_option("--tol", doob_tol);

  auto* ce = app.add_subcommand("counterexample", "blow-up of the running-maximum integral");
  ce->add_option("--density", density,
                 "canonical | uniform | rho2x | path to a cumulative table");
  ce->add_option("--deltas", deltas, "comma list or a..b by decades");
  ce->add_option("--count", count);
  ce->add_option("--out", out_path);
  ce->add_option("--json-out", json_out);
  ce->add_option("--tol", ce_tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (lc->parsed())
      return cmd_lattice_check(lattice_path, mu_path, out_path, tol, tables, chains);
    if (fc->parsed()) return cmd_fca_concepts(context_path, out_path);
    if (dv->parsed()) return cmd_divergence(lattice_path, mu_path, nu_path, out_path, tol);
    if (ec->parsed()) return cmd_entropy_check(joint_path, out_path, tol);
    if (rn->parsed())
      return cmd_rn_approx(mu_path, nu_path, levels, refinement_path, test_sets_path,
                           trace_path, out_path, tol);
    if (db->parsed()) return cmd_doob(paths, atoms, levels, seed, lambdas, out_path, doob_tol);
    if (ce->parsed())
      return cmd_counterexample(density, deltas, count, out_path, json_out, ce_tol);
  } catch (const latdiv::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const latdiv::AssertionFailure& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const latdiv::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
