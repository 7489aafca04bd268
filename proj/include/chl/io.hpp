#pragma once

#include <cstdint>
#include <string>

#include "chl/mesostructure.hpp"
#include "chl/profile.hpp"
#include "chl/solver.hpp"

namespace chl::io {

// Stamped into the first lines of every artifact.
struct ArtifactMeta {
    std::string config_hash_hex;
    std::uint64_t seed = 0;
};

std::string hex64(std::uint64_t v);

void write_mesostructure(const std::string& path, const Mesostructure& meso,
                         const ArtifactMeta& meta);

/// Row-major integer material codes with an nx/ny/h header line.
void write_material_grid_csv(const std::string& path, const MaterialGrid& grid,
                             const ArtifactMeta& meta);

/// One row per cell: x_mm, y_mm, material code, concentration (mass-%).
void write_field_csv(const std::string& path, const ConcentrationField& field,
                     const ArtifactMeta& meta);

ConcentrationField read_field_csv(const std::string& path);

/// Legacy ASCII VTK structured-points file with concentration and material
/// cell data.
void write_field_vtk(const std::string& path, const ConcentrationField& field,
                     const ArtifactMeta& meta);

void write_depth_profile_csv(const std::string& path, const DepthProfile& profile,
                             const ArtifactMeta& meta);

/// Two-column depth/concentration CSV.
MeasuredProfile read_measured_csv(const std::string& path);

/// Raw titration records (depth, titer, V1, V2, V3, mass), converted row by
/// row to free-chloride points.
MeasuredProfile read_titration_csv(const std::string& path);

void write_text(const std::string& path, const std::string& text);

} // namespace chl::io
