#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chl/exposure.hpp"
#include "chl/mesostructure.hpp"
#include "chl/solver.hpp"

namespace chl {

struct AnalysisConfig {
    double threshold_percent = 0.06;
    std::vector<double> probe_depths_mm = {110.0, 140.0, 170.0};
    std::string measured_path;
    bool compare_free = true; // convert model totals to free chloride before comparing
};

struct RunConfig {
    ExposureScenario scenario;
    MesoConfig geometry;
    SolverConfig solver;
    double resolution_mm = 1.0; // raster cell size h
    AnalysisConfig analysis;
    std::string kernels = "auto";
};

/// Built-in defaults: the retired-girder scenario with its tabulated factor
/// overrides in place.
RunConfig default_config();

/// Sectioned key=value text; unknown sections or keys are hard errors.
RunConfig parse_config_text(const std::string& text, const RunConfig& base = default_config());

RunConfig load_config(const std::string& path);

/// Canonical serialization (fixed key order, full precision); also what the
/// config hash is computed over.
std::string serialize_config(const RunConfig& cfg);

std::uint64_t config_hash(const RunConfig& cfg);

} // namespace chl
