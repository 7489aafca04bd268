#include "chl/profile.hpp"

#include <algorithm>
#include <cmath>

namespace chl {

DepthProfile depth_max_profile(const ConcentrationField& field) {
    const MaterialGrid& g = field.grid;
    DepthProfile prof;
    prof.time_years = field.time_years;
    for (int j = 0; j < g.ny; ++j) {
        double best = -1.0;
        bool any = false;
        for (int i = 0; i < g.nx; ++i) {
            if (!g.active(i, j)) continue;
            any = true;
            best = std::max(best, field.at(i, j));
        }
        if (!any) {
            prof.skipped_rows.push_back(j);
            continue;
        }
        prof.depth_mm.push_back(g.cell_depth(j));
        prof.value_percent.push_back(best);
    }
    if (prof.depth_mm.empty())
        throw AnalysisError("field has no active cells (EmptyField)");
    return prof;
}

double titration_concentration(const TitrationRecord& r) {
    require(r.powder_mass_g > 0.0, errc::analysis, "powder mass must be positive");
    require(r.extract_volume_ml > 0.0, errc::analysis, "extract volume must be positive");
    require(r.titer_mg_per_ml >= 0.0 && r.titrant_volume_ml >= 0.0 && r.water_volume_ml >= 0.0,
            errc::analysis, "titration inputs must be non-negative");
    // (mg/mL * mL * mL) / (g * mL) = mg chloride per g powder; /1000 g/g, x100 %.
    const double mg_per_g = r.titer_mg_per_ml * r.titrant_volume_ml * r.water_volume_ml /
                            (r.powder_mass_g * r.extract_volume_ml);
    return mg_per_g / 1000.0 * 100.0;
}

namespace {

double value_at_nearest_depth(const DepthProfile& p, double depth_mm) {
    require(!p.depth_mm.empty(), errc::analysis, "empty profile");
    if (depth_mm < p.depth_mm.front() || depth_mm > p.depth_mm.back())
        throw AnalysisError("depth outside the profile range (DepthOutOfRange)");
    const auto it = std::lower_bound(p.depth_mm.begin(), p.depth_mm.end(), depth_mm);
    std::size_t k = static_cast<std::size_t>(it - p.depth_mm.begin());
    if (k > 0 && (k == p.depth_mm.size() || depth_mm - p.depth_mm[k - 1] <= p.depth_mm[k] - depth_mm))
        --k;
    return p.value_percent[k];
}

} // namespace

ThresholdCrossing time_to_threshold(const std::vector<DepthProfile>& profiles, double depth_mm,
                                    double threshold_percent) {
    require(!profiles.empty(), errc::analysis, "no profiles given");
    for (std::size_t k = 1; k < profiles.size(); ++k)
        require(profiles[k].time_years > profiles[k - 1].time_years, errc::analysis,
                "profiles must be sorted by increasing time");

    double prev_t = profiles.front().time_years;
    double prev_v = value_at_nearest_depth(profiles.front(), depth_mm);
    if (prev_v >= threshold_percent) return {prev_t, prev_v};

    for (std::size_t k = 1; k < profiles.size(); ++k) {
        const double t = profiles[k].time_years;
        const double v = value_at_nearest_depth(profiles[k], depth_mm);
        if (v >= threshold_percent) {
            const double frac = (threshold_percent - prev_v) / (v - prev_v);
            return {prev_t + frac * (t - prev_t), v};
        }
        prev_t = t;
        prev_v = v;
    }
    return {std::nullopt, value_at_nearest_depth(profiles.back(), depth_mm)};
}

ProfileComparison compare_profiles(const DepthProfile& model, const MeasuredProfile& measured) {
    require(model.depth_mm.size() >= 2, errc::analysis, "model profile too short");
    ProfileComparison out;
    double sq = 0.0, sum = 0.0;
    for (const MeasuredPoint& pt : measured) {
        if (pt.depth_mm < model.depth_mm.front() || pt.depth_mm > model.depth_mm.back()) continue;
        const auto it =
            std::lower_bound(model.depth_mm.begin(), model.depth_mm.end(), pt.depth_mm);
        std::size_t hi = static_cast<std::size_t>(it - model.depth_mm.begin());
        double m;
        if (hi == 0) {
            m = model.value_percent.front();
        } else {
            const double x0 = model.depth_mm[hi - 1], x1 = model.depth_mm[hi];
            const double y0 = model.value_percent[hi - 1], y1 = model.value_percent[hi];
            m = y0 + (y1 - y0) * (pt.depth_mm - x0) / (x1 - x0);
        }
        const double e = m - pt.free_chloride_percent;
        sq += e * e;
        sum += e;
        out.max_abs_error = std::max(out.max_abs_error, std::abs(e));
        ++out.points_used;
    }
    if (out.points_used < 2)
        throw AnalysisError("fewer than two measured points overlap the model profile "
                            "(InsufficientOverlap)");
    out.rmse = std::sqrt(sq / out.points_used);
    out.bias = sum / out.points_used;
    return out;
}

DepthProfile as_free_chloride(const DepthProfile& total, const BindingModel& binding) {
    DepthProfile out = total;
    for (double& v : out.value_percent) v = binding_partition(v, binding);
    return out;
}

} // namespace chl
