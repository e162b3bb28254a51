#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "latdiv/counterexample.hpp"
#include "latdiv/entropy.hpp"
#include "latdiv/fca.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/measure.hpp"
#include "latdiv/valuation.hpp"

// JSON schemas for every document the CLI reads or writes, plus CSV
// helpers.  Parsing throws ParseError for structural problems; the
// constructors of the domain types own semantic validation.
namespace latdiv::io {

using nlohmann::json;

// +-inf and nan are carried as the strings "inf", "-inf", "nan".
json number_to_json(double x);
double number_from_json(const json& j, const std::string& what);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// { "elements": [...], "covers": [[lo, hi], ...] }
Lattice parse_lattice(const json& j);
json lattice_to_json(const Lattice& lat);

// { "lattice": <inline lattice or file path>, "values": {element: number|"inf"} }
// The lattice member is optional when the caller already has one.
std::vector<double> parse_valuation_values(const json& j, const Lattice& lat);
bool valuation_has_inline_lattice(const json& j);
Lattice parse_valuation_lattice(const json& j, const std::string& base_dir);

// { "objects": [...], "attributes": [...], "incidence": [[g, m], ...] }
FormalContext parse_context(const json& j);

// { "variables": [...], "outcomes": [{"values": [...], "p": p}, ...] }
JointDistribution parse_joint(const json& j);

// { "n": int, "weights": [...], "cells": [[a,b],...]? } or
// { "n": int, "density": "uniform"|"rho2x"|"canonical" } for dyadic cell
// masses of the named closed-form density on [0,1].
DiscreteMeasure parse_measure(const json& j);
json measure_to_json(const DiscreteMeasure& m);

// { "levels": [ [[atom,...], ...], ... ] }, coarse to fine.
RefinementSequence parse_refinement(const json& j, std::size_t n);

// { "sets": [[atom,...], ...] }
std::vector<std::vector<std::size_t>> parse_test_sets(const json& j);

std::string format_number(double x);  // 17 significant digits

std::string convergence_csv(const ConvergenceReport& report);
std::string blowup_csv(const std::vector<BlowupRow>& rows);

}  // namespace latdiv::io
