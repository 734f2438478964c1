#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mums/closed_form.hpp"
#include "mums/mc_ensemble.hpp"
#include "mums/model.hpp"
#include "mums/mums_solver.hpp"
#include "mums/nk_habits.hpp"

namespace mums::io {

// On-disk model: the ModelSpec fields plus optional run defaults.
struct ModelDocument {
    ModelSpec model;
    std::optional<double> shock;
    std::optional<int> horizon;
    std::optional<double> beta;
};

// Parses and validates a model document. Throws InputError for malformed
// JSON (with byte position), schema violations and failed validation.
ModelDocument parse_model(std::string_view contents);

std::string emit_model(const ModelDocument& doc);

// 17 significant digits, round-trip safe.
std::string format_number(double x);

nlohmann::ordered_json to_json(const MarkovSolution& sol);
nlohmann::ordered_json to_json(const RestrictionReport& r);
nlohmann::ordered_json to_json(const numerics::TrackingTrace& trace);
nlohmann::ordered_json to_json(const nk::NKSolution& sol);
nlohmann::ordered_json to_json(const nk::NKDerivedStats& stats);

// Columns: n, exogenous, state, one per control.
std::string irf_csv(const IrfPath& path);
// Columns: n, mean, stderr.
std::string ensemble_csv(const EnsembleResult& result);
// Columns: panel, n, mean, stderr, reference.
std::string figure1_csv(const Figure1Table& table);
// Columns: panel, locus, y, pi.
std::string loci_csv(const std::vector<nk::LociPoint>& loci);

}  // namespace mums::io
