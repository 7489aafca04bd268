#include "chl/exposure.hpp"

#include <cmath>
#include <sstream>

namespace chl {

namespace {
constexpr double kFreezeThawSlope = 0.0196876;
}

void validate(const MixDesign& m) {
    require(m.water_cement_ratio > 0.0 && m.water_cement_ratio <= 1.0, errc::config,
            "water_cement_ratio must be in (0, 1]");
}

void validate(const ThermalEnvironment& t) {
    require(t.temperature_K > 0.0 && t.reference_temperature_K > 0.0, errc::config,
            "absolute temperatures must be positive");
}

void validate(const FreezeThawEnvironment& f) {
    require(f.annual_negative_temperature_days >= 0.0 && f.lambda_correction >= 0.0 &&
                f.water_content_coefficient >= 0.0,
            errc::config, "freeze-thaw parameters must be non-negative");
    require(f.damage_ratio > 0.0, errc::config, "damage_ratio must be positive");
}

void validate(const CarbonationModel& c) {
    require(c.depth_coefficient >= 0.0, errc::config, "carbonation depth_coefficient must be >= 0");
    require(c.influence_depth_clamp_mm > 0.0, errc::config, "influence depth clamp must be positive");
}

void validate(const BindingModel& b) {
    require(b.binding_capacity >= 0.0, errc::config, "binding_capacity must be >= 0");
}

void validate(const AgingModel& a) {
    require(a.reference_age_days > 0.0, errc::config, "reference_age_days must be positive");
    require(a.decay_index >= 0.0 && a.decay_index < 1.0, errc::config,
            "decay_index must be in [0, 1)");
}

void validate(const SurfaceChlorideModel& s) {
    require(s.ultimate_increment >= 0.0 && s.rate_constant >= 0.0, errc::config,
            "surface chloride parameters must be non-negative");
}

void validate(const ExposureScenario& s) {
    validate(s.mix);
    validate(s.thermal);
    validate(s.freeze_thaw);
    validate(s.carbonation);
    validate(s.binding);
    validate(s.aging);
    validate(s.surface);
}

double activation_constant(const MixDesign& mix) {
    validate(mix);
    return 10475.0 - 10750.0 * mix.water_cement_ratio;
}

double temperature_factor(const ThermalEnvironment& thermal, double q) {
    validate(thermal);
    const double T = thermal.temperature_K;
    const double T0 = thermal.reference_temperature_K;
    return (T / T0) * std::exp(q * (1.0 / T0 - 1.0 / T));
}

double carbonation_depth(const CarbonationModel& model, double age_years) {
    validate(model);
    require(age_years >= 0.0, errc::config, "carbonation age must be >= 0");
    return model.depth_coefficient * std::sqrt(age_years);
}

double carbonation_influence(const CarbonationModel& model, double depth_mm) {
    validate(model);
    require(depth_mm >= 0.0, errc::config, "depth must be >= 0");
    const double x = std::min(depth_mm, model.influence_depth_clamp_mm);
    const auto& p = model.influence_polynomial;
    const double v = ((p[0] * x + p[1]) * x + p[2]) * x + p[3];
    return std::max(v, 0.0);
}

double natural_freeze_thaw_cycles(const FreezeThawEnvironment& env) {
    validate(env);
    return env.lambda_correction * env.annual_negative_temperature_days;
}

double lab_equivalent_cycles(const FreezeThawEnvironment& env, double n_act) {
    validate(env);
    require(n_act >= 0.0, errc::config, "n_act must be >= 0");
    return env.water_content_coefficient * n_act / env.damage_ratio;
}

double freeze_thaw_factor(double n_in) {
    require(n_in >= 0.0, errc::config, "n_in must be >= 0");
    return 1.0 + kFreezeThawSlope * n_in;
}

double aging_factor(const AgingModel& model, double age_years) {
    validate(model);
    require(age_years >= 0.0, errc::config, "age must be >= 0");
    const double t0_years = model.reference_age_days / kDaysPerYear;
    if (age_years <= t0_years) return 1.0;
    return std::pow(t0_years / age_years, model.decay_index);
}

double binding_partition(double total_concentration, const BindingModel& binding) {
    validate(binding);
    require(total_concentration >= 0.0, errc::config, "total concentration must be >= 0");
    return total_concentration / (1.0 + binding.binding_capacity);
}

double construction_factor(const MixDesign& mix) {
    validate(mix);
    const double w = mix.water_cement_ratio;
    if (w > 0.5) return 4.0;
    return (1000.0 * w * w - 1050.0 * w + 287.0) / 3.0;
}

double initial_diffusivity_m2s(const MixDesign& mix) {
    validate(mix);
    return std::pow(10.0, -12.06 + 2.4 * mix.water_cement_ratio);
}

double surface_concentration(const SurfaceChlorideModel& model, double age_years) {
    validate(model);
    require(age_years >= 0.0, errc::config, "age must be >= 0");
    return model.initial_surface_concentration +
           model.ultimate_increment * (1.0 - std::exp(-model.rate_constant * age_years));
}

namespace {

struct ResolvedFactors {
    double q;
    double k_T;
    double k_k;
    double n_act;
    double n_in;
    double k_F;
    double D0_m2s;
};

ResolvedFactors resolve(const ExposureScenario& s) {
    ResolvedFactors f{};
    f.q = s.overrides.q.value_or(activation_constant(s.mix));
    f.k_T = s.overrides.k_T.value_or(temperature_factor(s.thermal, f.q));
    f.k_k = s.overrides.k_k.value_or(construction_factor(s.mix));
    f.n_act = natural_freeze_thaw_cycles(s.freeze_thaw);
    f.n_in = s.overrides.n_in.value_or(lab_equivalent_cycles(s.freeze_thaw, f.n_act));
    f.k_F = s.overrides.k_F.value_or(freeze_thaw_factor(f.n_in));
    f.D0_m2s = s.overrides.D0_m2_per_s.value_or(initial_diffusivity_m2s(s.mix));
    return f;
}

} // namespace

double effective_diffusivity(const ExposureScenario& scenario, double age_years, double depth_mm) {
    validate(scenario);
    require(age_years >= 0.0, errc::config, "age must be >= 0");
    require(depth_mm >= 0.0, errc::config, "depth must be >= 0");
    const ResolvedFactors f = resolve(scenario);
    const double k_c = carbonation_influence(scenario.carbonation, depth_mm);
    const double D0_mm2yr = f.D0_m2s * kM2PerSecToMm2PerYear; // single unit conversion
    return (1.0 / (1.0 + scenario.binding.binding_capacity)) * f.k_F * f.k_T * f.k_k * k_c *
           D0_mm2yr * aging_factor(scenario.aging, age_years);
}

FactorReport factor_report(const ExposureScenario& s) {
    validate(s);
    FactorReport rep;
    const double q_derived = activation_constant(s.mix);
    const double q_used = s.overrides.q.value_or(q_derived);
    rep.entries.push_back({"q", q_derived, s.overrides.q, q_used});

    const double kT_derived = temperature_factor(s.thermal, q_used);
    rep.entries.push_back({"k_T", kT_derived, s.overrides.k_T, s.overrides.k_T.value_or(kT_derived)});

    const double kk_derived = construction_factor(s.mix);
    rep.entries.push_back({"k_k", kk_derived, s.overrides.k_k, s.overrides.k_k.value_or(kk_derived)});

    const double n_act = natural_freeze_thaw_cycles(s.freeze_thaw);
    rep.entries.push_back({"n_act", n_act, std::nullopt, n_act});

    const double nin_derived = lab_equivalent_cycles(s.freeze_thaw, n_act);
    const double nin_used = s.overrides.n_in.value_or(nin_derived);
    rep.entries.push_back({"n_in", nin_derived, s.overrides.n_in, nin_used});

    const double kF_derived = freeze_thaw_factor(nin_used);
    rep.entries.push_back({"k_F", kF_derived, s.overrides.k_F, s.overrides.k_F.value_or(kF_derived)});

    const double D0_derived = initial_diffusivity_m2s(s.mix);
    const double D0_used = s.overrides.D0_m2_per_s.value_or(D0_derived);
    rep.entries.push_back({"D0_m2_per_s", D0_derived, s.overrides.D0_m2_per_s, D0_used});
    rep.entries.push_back({"D0_mm2_per_year", D0_derived * kM2PerSecToMm2PerYear,
                           s.overrides.D0_m2_per_s
                               ? std::optional<double>(*s.overrides.D0_m2_per_s * kM2PerSecToMm2PerYear)
                               : std::nullopt,
                           D0_used * kM2PerSecToMm2PerYear});

    if (q_used < 0.0)
        rep.warnings.push_back("activation constant q is negative at this water/cement ratio");
    const double R = s.binding.binding_capacity;
    if (R < 2.0 || R > 4.0)
        rep.warnings.push_back("binding capacity R outside the usual 2..4 band");
    return rep;
}

std::string FactorReport::to_text() const {
    std::ostringstream os;
    os.precision(12);
    for (const auto& e : entries) {
        os << e.name << ".derived = " << e.derived << '\n';
        if (e.override_value) os << e.name << ".override = " << *e.override_value << '\n';
        os << e.name << ".used = " << e.used << '\n';
    }
    for (const auto& w : warnings) os << "warning = " << w << '\n';
    return os.str();
}

} // namespace chl
