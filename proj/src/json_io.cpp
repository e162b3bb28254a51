#include "latdiv/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace latdiv::io {

json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw ParseError(what + ": expected a number or \"inf\"");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  // Write whole, then rename, so readers never observe a partial file.
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ValidationError("cannot open output file: " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ValidationError("cannot move output into place: " + path);
}

namespace {

const json& member(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(what + ": missing member \"" + key + "\"");
  return j.at(key);
}

std::vector<std::string> string_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (e.is_string())
      out.push_back(e.get<std::string>());
    else
      out.push_back(e.dump());
  }
  return out;
}

}  // namespace

Lattice parse_lattice(const json& j) {
  auto elements = string_array(member(j, "elements", "lattice"), "lattice.elements");
  const json& cov = member(j, "covers", "lattice");
  if (!cov.is_array()) throw ParseError("lattice.covers: expected an array of pairs");
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& e : cov) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("lattice.covers: each entry must be [lower, upper]");
    covers.emplace_back(e[0].is_string() ? e[0].get<std::string>() : e[0].dump(),
                        e[1].is_string() ? e[1].get<std::string>() : e[1].dump());
  }
  return Lattice::build(std::move(elements), covers);
}

json lattice_to_json(const Lattice& lat) {
  json j;
  j["elements"] = lat.elements();
  json covers = json::array();
  for (const auto& [lo, hi] : lat.covers())
    covers.push_back(json::array({lat.name(lo), lat.name(hi)}));
  j["covers"] = covers;
  return j;
}

std::vector<double> parse_valuation_values(const json& j, const Lattice& lat) {
  const json& values = member(j, "values", "valuation");
  if (!values.is_object()) throw ParseError("valuation.values: expected an object");
  std::vector<double> out(lat.size(), -1.0);
  for (const auto& [name, v] : values.items()) {
    out[lat.index_of(name)] = number_from_json(v, "valuation.values." + name);
  }
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (out[i] == -1.0 && !values.contains(lat.name(i)))
      throw MissingValue("valuation missing a value for element " + lat.name(i));
  return out;
}

bool valuation_has_inline_lattice(const json& j) {
  return j.is_object() && j.contains("lattice");
}

Lattice parse_valuation_lattice(const json& j, const std::string& base_dir) {
  const json& lat = member(j, "lattice", "valuation");
  if (lat.is_string()) {
    std::string path = lat.get<std::string>();
    if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
    return parse_lattice(read_json_file(path));
  }
  return parse_lattice(lat);
}

FormalContext parse_context(const json& j) {
  auto objects = string_array(member(j, "objects", "context"), "context.objects");
  auto attributes = string_array(member(j, "attributes", "context"), "context.attributes");
  const json& inc = member(j, "incidence", "context");
  if (!inc.is_array()) throw ParseError("context.incidence: expected an array of pairs");
  std::vector<std::pair<std::string, std::string>> incidence;
  for (const auto& e : inc) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("context.incidence: each entry must be [object, attribute]");
    incidence.emplace_back(e[0].is_string() ? e[0].get<std::string>() : e[0].dump(),
                           e[1].is_string() ? e[1].get<std::string>() : e[1].dump());
  }
  return FormalContext::build(std::move(objects), std::move(attributes), incidence);
}

JointDistribution parse_joint(const json& j) {
  auto variables = string_array(member(j, "variables", "joint"), "joint.variables");
  const json& outs = member(j, "outcomes", "joint");
  if (!outs.is_array()) throw ParseError("joint.outcomes: expected an array");
  std::vector<std::pair<std::vector<std::string>, double>> outcomes;
  for (const auto& o : outs) {
    auto values = string_array(member(o, "values", "joint.outcomes[]"), "outcome.values");
    double p = number_from_json(member(o, "p", "joint.outcomes[]"), "outcome.p");
    outcomes.emplace_back(std::move(values), p);
  }
  return JointDistribution::build(std::move(variables), std::move(outcomes));
}

DiscreteMeasure parse_measure(const json& j) {
  if (!j.is_object()) throw ParseError("measure: expected an object");
  std::size_t n = 0;
  if (j.contains("n")) {
    if (!j.at("n").is_number_unsigned()) throw ParseError("measure.n: expected a count");
    n = j.at("n").get<std::size_t>();
  }

  if (j.contains("density")) {
    if (n == 0) throw ParseError("measure.density needs a positive \"n\"");
    std::string name = j.at("density").get<std::string>();
    DensitySpec spec;
    if (name == "uniform")
      spec = DensitySpec::uniform();
    else if (name == "rho2x")
      spec = DensitySpec::rho2x();
    else if (name == "canonical")
      spec = DensitySpec::canonical();
    else
      throw ParseError("measure.density: unknown density \"" + name + "\"");
    std::vector<double> weights(n);
    std::vector<std::pair<double, double>> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
      double a = static_cast<double>(i) / static_cast<double>(n);
      double b = static_cast<double>(i + 1) / static_cast<double>(n);
      cells[i] = {a, b};
      weights[i] = spec.cumulative(b) - spec.cumulative(a);
    }
    return DiscreteMeasure::build(std::move(weights), std::move(cells));
  }

  const json& w = member(j, "weights", "measure");
  if (!w.is_array()) throw ParseError("measure.weights: expected an array");
  std::vector<double> weights;
  for (const auto& e : w) weights.push_back(number_from_json(e, "measure.weights[]"));
  if (n != 0 && n != weights.size())
    throw ParseError("measure.n disagrees with the weight count");

  std::optional<std::vector<std::pair<double, double>>> cells;
  if (j.contains("cells")) {
    const json& c = j.at("cells");
    if (!c.is_array()) throw ParseError("measure.cells: expected an array of pairs");
    cells.emplace();
    for (const auto& e : c) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("measure.cells: each entry must be [a, b]");
      cells->emplace_back(number_from_json(e[0], "cell endpoint"),
                          number_from_json(e[1], "cell endpoint"));
    }
  }
  return DiscreteMeasure::build(std::move(weights), std::move(cells));
}

json measure_to_json(const DiscreteMeasure& m) {
  json j;
  j["n"] = m.n;
  json w = json::array();
  for (double x : m.weights) w.push_back(number_to_json(x));
  j["weights"] = w;
  if (m.cells) {
    json c = json::array();
    for (const auto& [a, b] : *m.cells) c.push_back(json::array({a, b}));
    j["cells"] = c;
  }
  return j;
}

RefinementSequence parse_refinement(const json& j, std::size_t n) {
  const json& levels = member(j, "levels", "refinement");
  if (!levels.is_array()) throw ParseError("refinement.levels: expected an array");
  std::vector<Partition> parts;
  for (const auto& level : levels) {
    if (!level.is_array()) throw ParseError("refinement level: expected an array of blocks");
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& block : level) {
      if (!block.is_array()) throw ParseError("refinement block: expected an array of atoms");
      std::vector<std::size_t> atoms;
      for (const auto& a : block) {
        if (!a.is_number_unsigned()) throw ParseError("refinement atom: expected an index");
        atoms.push_back(a.get<std::size_t>());
      }
      blocks.push_back(std::move(atoms));
    }
    parts.push_back(Partition::build(n, std::move(blocks)));
  }
  return RefinementSequence::build(std::move(parts));
}

std::vector<std::vector<std::size_t>> parse_test_sets(const json& j) {
  const json& sets = member(j, "sets", "test-sets");
  if (!sets.is_array()) throw ParseError("test-sets.sets: expected an array");
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : sets) {
    if (!s.is_array()) throw ParseError("test set: expected an array of atom indices");
    std::vector<std::size_t> atoms;
    for (const auto& a : s) {
      if (!a.is_number_unsigned()) throw ParseError("test set atom: expected an index");
      atoms.push_back(a.get<std::size_t>());
    }
    out.push_back(std::move(atoms));
  }
  return out;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "level,D_restricted,gap,l1_to_final,ymax_integral,ymin_integral,"
         "pinsker_residual,env_max_residual,env_min_residual,"
         "block_join_residual,block_meet_residual,blended_seminorm\n";
  for (const auto& ld : report.levels) {
    out << ld.level << "," << format_number(ld.d_restricted) << "," << format_number(ld.gap)
        << "," << format_number(ld.l1_to_final);
    // Pair diagnostics against the final level; the last row compares the
    // final level with itself, where every bound is tight at zero.
    const PairDiagnostics* pd = nullptr;
    for (const auto& p : report.pairs)
      if (p.m == ld.level && p.n == report.levels.size()) pd = &p;
    if (pd) {
      out << "," << format_number(pd->ymax_integral) << "," << format_number(pd->ymin_integral)
          << "," << format_number(pd->pinsker_residual) << ","
          << format_number(pd->env_max_residual) << "," << format_number(pd->env_min_residual)
          << "," << format_number(pd->block_join_residual) << ","
          << format_number(pd->block_meet_residual) << ","
          << format_number(pd->blended_seminorm);
    } else {
      // Final level against itself: the envelopes equal f_final and every
      // bound is tight at zero.
      std::string k = format_number(report.mu_total), z = format_number(0.0);
      out << "," << k << "," << k << "," << z << "," << z << "," << z << "," << z << "," << z
          << "," << z;
    }
    out << "\n";
  }
  return out.str();
}

std::string blowup_csv(const std::vector<BlowupRow>& rows) {
  std::ostringstream out;
  out << "delta,N,integral_sup,rho_max_integral,closed_form_value,rel_gap\n";
  for (const auto& r : rows)
    out << format_number(r.delta) << "," << r.n << "," << format_number(r.integral_sup) << ","
        << format_number(r.rho_max_integral) << "," << format_number(r.closed_form) << ","
        << format_number(r.rel_gap) << "\n";
  return out.str();
}

}  // namespace latdiv::io
