#pragma once

#include <string>

#include "json.hpp"  // vendored nlohmann/json

#include "dihom/chains.hpp"
#include "dihom/homalg.hpp"
#include "dihom/obstacles.hpp"
#include "dihom/precubical.hpp"

namespace dihom {

using ordered_json = nlohmann::ordered_json;

// Model format: {"dims": N, "cells": [[ids per dim]],
//                "faces": {"id": {"d0": [ids], "d1": [ids]}}}
// Exact integers only.
ordered_json model_to_json(const PrecubicalSet& X);
PrecubicalSet model_from_json(const ordered_json& j);

// Grid specs: {"extents": [...], "forbidden": [[...], ...]}
ordered_json grid_spec_to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const ordered_json& j);

// Obstacle models: {"extents": [...],
//                   "obstacles": [{"id": k, "coords": ["1/2", ...]}, ...],
//                   "class_degree": 0|1}
ordered_json obstacle_model_to_json(const ObstacleModel& M);
ObstacleModel obstacle_model_from_json(const ordered_json& j);

// Slices: {"from": v, "to": w,
//          "basis": [[[cube ids], ...] per dim],
//          "boundary": [[[row, col, "coeff"], ...] per dim]}
ordered_json slice_to_json(const PrecubicalSet& X,
                           const ChainComplexSlice& slice);

// Summaries: {"from": v, "to": w, "HM": {"1": r1, ...},
//             "representatives": optional}
ordered_json summary_to_json(const PrecubicalSet& X,
                             const HomologySummary& s);

// Classes: {"kind": "HM"|"HMdual", "degree": i, "from": v, "to": w,
//           "rep": {basis index: exact coefficient string}}
ordered_json class_to_json(const PrecubicalSet& X, const std::string& kind,
                           int degree, int v, int w,
                           const std::vector<std::pair<int, std::string>>& rep);

ordered_json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const ordered_json& j);

}  // namespace dihom
