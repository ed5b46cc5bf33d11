#pragma once

// Locale-independent rendering of grids, reports and sample batches.

#include <json.hpp>

#include <ostream>
#include <string>

#include "corrbeta/core_params.hpp"
#include "corrbeta/efficiency.hpp"
#include "corrbeta/samplers.hpp"
#include "corrbeta/validation.hpp"

namespace corrbeta {

/// Shortest round-trip decimal representation.
std::string format_number(double value);
/// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Paper-style table: row/column headers, cells rounded half-up to 3 d.p.
std::string grid_to_text(const EfficiencyGrid& grid);
/// Header row `c1\c2,<c2 values...>`, then one row per c1 value.
std::string grid_to_csv(const EfficiencyGrid& grid);
nlohmann::ordered_json grid_to_json(const EfficiencyGrid& grid);

nlohmann::ordered_json to_json(const DirichletAlphas<>& alphas);
nlohmann::ordered_json to_json(const FeasibilityReport<>& report);
nlohmann::ordered_json to_json(const ValidationReport& report);
nlohmann::ordered_json to_json(const JohnkStats& stats);

/// `y1,y2` header followed by one row per pair.
void write_pairs_csv(std::ostream& os, const SampleBatch& batch);
nlohmann::ordered_json to_json(const SampleBatch& batch);

}  // namespace corrbeta
