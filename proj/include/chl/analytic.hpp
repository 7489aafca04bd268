#pragma once

#include "chl/exposure.hpp"
#include "chl/profile.hpp"

namespace chl {

struct FickQuery {
    double initial_concentration = 0.0; // C0, mass-%
    double surface_concentration = 0.0; // Cs, mass-%
    double diffusivity_mm2_per_year = 0.0;
    double age_years = 0.0;
    double depth_mm = 0.0;
};

/// Semi-infinite constant-boundary solution
///   C(x, t) = C0 + (Cs - C0) (1 - erf(x / (2 sqrt(D t)))).
double erf_profile(const FickQuery& query);

/// tau(t_end, depth) = integral of D_eff(t, depth) dt over [0, t_end] by
/// adaptive quadrature (split at the aging clamp), relative error <= 1e-8.
/// Substituting tau for D*t in erf_profile handles time-varying D with a
/// constant boundary.
double integrated_diffusivity(const ExposureScenario& scenario, double t_end_years,
                              double depth_mm);

struct Fd1dOptions {
    int startup_substeps = 10;          // same startup policy as the 2D solver
    double startup_window_years = 1.0;
};

/// 1D backward-difference column solve with the same face/boundary scheme and
/// diffusivity composition as the 2D solver; concentrations vs depth at t_end.
DepthProfile fd1d_reference(const ExposureScenario& scenario, double depth_extent_mm, double h_mm,
                            double dt_years, double t_end_years, const Fd1dOptions& opts = {});

} // namespace chl
