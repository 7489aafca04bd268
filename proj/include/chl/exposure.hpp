#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chl/common.hpp"

namespace chl {

struct MixDesign {
    double water_cement_ratio = 0.49;
};

struct ThermalEnvironment {
    double temperature_K = 278.3;
    double reference_temperature_K = 293.0;
};

struct FreezeThawEnvironment {
    double annual_negative_temperature_days = 133.4; // n_f
    double lambda_correction = 0.7;                  // lambda
    double water_content_coefficient = 1.0;          // k_w
    double damage_ratio = 11.5;                      // S
};

struct CarbonationModel {
    double depth_coefficient = 3.656; // mm/sqrt(year)
    // cubic, quadratic, linear, constant coefficients of the influence fit
    std::array<double, 4> influence_polynomial = {2.999e-6, -1.14e-4, -8.723e-3, 0.9903};
    // the fit turns upward past ~46 mm; evaluation clamps the depth here
    double influence_depth_clamp_mm = 60.0;
};

struct BindingModel {
    double binding_capacity = 2.14; // R
};

struct AgingModel {
    double reference_age_days = 28.0; // t0
    double decay_index = 0.264;       // m
};

struct SurfaceChlorideModel {
    double initial_surface_concentration = 0.0; // C_s0, mass-%
    double ultimate_increment = 0.37;           // C_smax, mass-%
    double rate_constant = 0.18738;             // 1/year
};

// Explicit per-factor overrides. When present the override supersedes the
// derived value; the diagnostics report shows both.
struct FactorOverrides {
    std::optional<double> q;
    std::optional<double> k_T;
    std::optional<double> k_k;
    std::optional<double> k_F;
    std::optional<double> n_in;
    std::optional<double> D0_m2_per_s;
};

struct ExposureScenario {
    MixDesign mix;
    ThermalEnvironment thermal;
    FreezeThawEnvironment freeze_thaw;
    CarbonationModel carbonation;
    BindingModel binding;
    AgingModel aging;
    SurfaceChlorideModel surface;
    FactorOverrides overrides;
};

void validate(const MixDesign&);
void validate(const ThermalEnvironment&);
void validate(const FreezeThawEnvironment&);
void validate(const CarbonationModel&);
void validate(const BindingModel&);
void validate(const AgingModel&);
void validate(const SurfaceChlorideModel&);
void validate(const ExposureScenario&);

/// q = 10475 - 10750 (w/c). Negative results are legal and flagged in diagnostics.
double activation_constant(const MixDesign& mix);

/// k_T = (T/T0) exp(q (1/T0 - 1/T)).
double temperature_factor(const ThermalEnvironment& thermal, double q);

/// Carbonation front depth in mm after `age_years` years.
double carbonation_depth(const CarbonationModel& model, double age_years);

/// Diffusivity multiplier at a given depth from the cubic influence fit,
/// with the depth clamped above and the value clamped at zero below.
double carbonation_influence(const CarbonationModel& model, double depth_mm);

/// n_act = lambda * n_f, freeze-thaw cycles per year in the field.
double natural_freeze_thaw_cycles(const FreezeThawEnvironment& env);

/// n_in = k_w * n_act / S, equivalent laboratory cycles per year.
double lab_equivalent_cycles(const FreezeThawEnvironment& env, double n_act);

/// k_F = 1 + 0.0196876 n_in. The slope is the ratio of the two fitted
/// diffusivity-vs-cycles coefficients (0.1064 / 5.4044).
double freeze_thaw_factor(double n_in);

/// (t0/t)^m for t >= t0, clamped to 1 before the reference age.
double aging_factor(const AgingModel& model, double age_years);

/// Free chloride from total: C_f = C_t / (1 + R).
double binding_partition(double total_concentration, const BindingModel& binding);

/// Construction/deterioration factor k_k; piecewise in w/c, continuous at 0.5.
double construction_factor(const MixDesign& mix);

/// D0 = 10^(-12.06 + 2.4 (w/c)) in m^2/s.
double initial_diffusivity_m2s(const MixDesign& mix);

/// Surface buildup C_s(t) = C_s0 + C_smax (1 - e^{-c t}), mass-%.
double surface_concentration(const SurfaceChlorideModel& model, double age_years);

/// Effective diffusivity in mm^2/year at (age, depth):
///   (1/(1+R)) * k_F * k_T * k_k * k_c(depth) * D0 * aging(age)
/// honoring any scenario overrides for q, k_T, k_k, k_F, n_in and D0.
double effective_diffusivity(const ExposureScenario& scenario, double age_years, double depth_mm);

// ---------------------------------------------------------------------------
// Diagnostics: derived vs overridden factor values

struct FactorReport {
    struct Entry {
        std::string name;
        double derived;
        std::optional<double> override_value;
        double used;
    };
    std::vector<Entry> entries;
    std::vector<std::string> warnings;

    /// Key-value text block, one `name.derived/override/used` triple per factor.
    std::string to_text() const;
};

FactorReport factor_report(const ExposureScenario& scenario);

} // namespace chl
