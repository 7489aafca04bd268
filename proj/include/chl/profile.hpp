#pragma once

#include <optional>
#include <vector>

#include "chl/common.hpp"
#include "chl/exposure.hpp"
#include "chl/solver.hpp"

namespace chl {

struct DepthProfile {
    std::vector<double> depth_mm;        // strictly increasing cell-row centers
    std::vector<double> value_percent;   // per-depth maximum (or column value), mass-%
    double time_years = 0.0;
    std::vector<int> skipped_rows;       // rows with no active cell
};

struct TitrationRecord {
    double depth_mm = 0.0;
    double titer_mg_per_ml = 0.0;   // silver nitrate titer
    double titrant_volume_ml = 0.0; // V1
    double water_volume_ml = 0.0;   // V2
    double extract_volume_ml = 0.0; // V3
    double powder_mass_g = 0.0;     // m
};

struct MeasuredPoint {
    double depth_mm = 0.0;
    double free_chloride_percent = 0.0;
};

using MeasuredProfile = std::vector<MeasuredPoint>; // sorted by depth

struct ThresholdCrossing {
    std::optional<double> year; // empty = not reached by the last profile
    double final_value = 0.0;   // value at the last profile time
};

struct ProfileComparison {
    double rmse = 0.0;
    double max_abs_error = 0.0;
    double bias = 0.0; // mean(model - measured)
    int points_used = 0;
};

/// Per-depth maximum over the active cells of each grid row.
DepthProfile depth_max_profile(const ConcentrationField& field);

/// Mass-% free chloride from one titration: (titer V1 V2)/(m V3), with the
/// mg-per-g bookkeeping folded in.
double titration_concentration(const TitrationRecord& record);

/// First time the profile value at `depth_mm` (nearest row) crosses the
/// threshold, linearly interpolated between output times.
ThresholdCrossing time_to_threshold(const std::vector<DepthProfile>& profiles, double depth_mm,
                                    double threshold_percent);

/// RMSE / max abs error / bias of the model against measured points, with the
/// model linearly interpolated to the measured depths.
ProfileComparison compare_profiles(const DepthProfile& model, const MeasuredProfile& measured);

/// View of a total-chloride profile as free chloride (binding partition).
DepthProfile as_free_chloride(const DepthProfile& total, const BindingModel& binding);

} // namespace chl
