#pragma once

#include <functional>
#include <vector>

#include "chl/exposure.hpp"
#include "chl/mesostructure.hpp"

namespace chl {

struct SolverConfig {
    double time_step_years = 0.05;
    double end_time_years = 50.0;
    std::vector<double> output_times_years = {5.0, 10.0, 20.0, 30.0, 40.0, 50.0};
    double linear_tolerance = 1e-10; // relative residual
    int max_linear_iterations = 200000;
    // The surface concentration ramps fastest right after exposure starts, so
    // the first startup_window years run at time_step / startup_substeps.
    int startup_substeps = 10;
    double startup_window_years = 1.0;
    double itz_multiplier = 5.0;
    // Dirichlet C_s(t) on the top edge; tests may switch it off to check
    // conservation under all-Neumann conditions.
    bool surface_dirichlet = true;
};

struct ConcentrationField {
    MaterialGrid grid;
    std::vector<double> values; // mass-%, forced to zero on aggregate/duct cells
    double time_years = 0.0;

    double at(int i, int j) const { return values[grid.index(i, j)]; }
};

/// Diffusivity of one cell at a given time, mm^2/year: zero for aggregate and
/// duct, the scenario composition at the cell-center depth for mortar, and
/// itz_multiplier times that for ITZ cells.
double cell_diffusivity(const ExposureScenario& scenario, const MaterialGrid& grid, int i, int j,
                        double time_years, double itz_multiplier);

/// Field with every active cell at the scenario's initial surface
/// concentration, at time zero.
ConcentrationField initial_field(const MaterialGrid& grid, const ExposureScenario& scenario);

/// One implicit backward-difference step of length dt from field.time_years.
/// Face diffusivities are harmonic means evaluated at the step midpoint; the
/// boundary value is C_s at the new time.
ConcentrationField step(const ConcentrationField& field, const ExposureScenario& scenario,
                        double dt_years, const SolverConfig& config);

using StepObserver = std::function<void(const ConcentrationField&)>;

/// March from t = 0 to end_time, startup substepping included, and collect
/// the field at every requested output time. The observer, when set, sees
/// every accepted step.
std::vector<ConcentrationField> run_simulation(const MaterialGrid& grid,
                                               const ExposureScenario& scenario,
                                               const SolverConfig& config,
                                               const StepObserver& observer = {});

/// Shared time-axis construction: base steps of dt refined inside the startup
/// window, landing exactly on every output time and on end_time.
std::vector<double> build_time_grid(double end_time_years, double dt_years, int startup_substeps,
                                    double startup_window_years,
                                    const std::vector<double>& must_hit);

} // namespace chl
