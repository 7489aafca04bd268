#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chl/common.hpp"

namespace chl {

struct Vec2 {
    double x = 0.0;
    double y = 0.0; // depth direction, measured from the exposed surface
};

struct DomainRect {
    double width_mm = 300.0;
    double height_mm = 200.0;
};

struct CircleAggregate {
    Vec2 center;
    double radius_mm = 0.0;
};

struct PolygonAggregate {
    std::vector<Vec2> vertices; // counter-clockwise, each on the circumscribed circle
    CircleAggregate circumscribed;

    double area() const; // shoelace
};

struct TendonDuct {
    Vec2 center;
    double diameter_mm = 60.0;
};

struct GradingBand {
    double d_min_mm = 5.0;
    double d_max_mm = 20.0;
    double fuller_exponent = 0.5;
};

struct PolygonRule {
    int vertex_min = 4;
    int vertex_max = 8;
    double min_angle_deg = 30.0;
};

struct MesoConfig {
    DomainRect domain;
    double target_fraction = 0.45; // polygonal aggregate area / domain area
    GradingBand grading;
    double eta = 1.05; // separation factor on circumscribed circles
    PolygonRule polygon;
    double itz_width_mm = 0.5;
    double itz_multiplier = 5.0;
    bool duct_enabled = true;
    double duct_diameter_mm = 60.0;
    double duct_depth_mm = 140.0; // centroid depth of the duct
    std::uint64_t seed = 42;
    int max_attempts = 100000; // consecutive placement rejections before giving up
};

struct Mesostructure {
    DomainRect domain;
    std::vector<PolygonAggregate> aggregates;
    double itz_width_mm = 0.0;
    std::optional<TendonDuct> duct;
    std::uint64_t seed = 0;
    double achieved_area_fraction = 0.0; // summed polygon area / domain area
    double target_area_fraction = 0.0;
};

enum class Material : std::uint8_t { mortar = 0, aggregate = 1, itz = 2, duct = 3 };

struct MaterialGrid {
    int nx = 0;
    int ny = 0;
    double h_mm = 0.0;
    DomainRect domain;
    std::vector<Material> codes; // row-major, index j*nx + i, row 0 at the exposed surface

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    Material at(int i, int j) const { return codes[index(i, j)]; }
    double cell_x(int i) const { return (i + 0.5) * h_mm; }
    double cell_depth(int j) const { return (j + 0.5) * h_mm; }
    bool active(int i, int j) const {
        const Material m = at(i, j);
        return m == Material::mortar || m == Material::itz;
    }
};

/// Cumulative passing fraction (d/d_max)^exponent of the ideal grading curve.
double fuller_fraction(double diameter_mm, double max_diameter_mm, double exponent = 0.5);

/// Radius drawn by inverse-transform sampling of the grading curve on
/// [d_min, d_max].
double sample_radius(Rng& rng, const GradingBand& grading);

/// True iff the candidate keeps eta*(r_n + r_j) clearance to every placed circle.
bool separation_ok(const CircleAggregate& candidate, std::span<const CircleAggregate> placed,
                   double eta);

/// Random sequential addition of circles, largest first, until their summed
/// area reaches target_fraction of the domain or the attempt budget is spent
/// (throws PackingIncomplete carrying the achieved fraction).
std::vector<CircleAggregate> place_circles(const DomainRect& domain, double target_fraction,
                                           const GradingBand& grading, double eta,
                                           std::uint64_t seed, int max_attempts);

/// Inscribed convex polygon with random central angles (each at least
/// rule.min_angle_deg, summing to a full turn) from a random start angle.
PolygonAggregate polygonize(const CircleAggregate& circle, const PolygonRule& rule, Rng& rng);

/// Full generation pass: placement and polygonization interleaved until the
/// summed polygon area reaches the target fraction, then the tendon duct.
Mesostructure build_mesostructure(const MesoConfig& config);

/// Classify every h-by-h cell by its center point: duct disc first, then
/// polygon interiors, then the ITZ band around polygon boundaries, else mortar.
MaterialGrid rasterize(const Mesostructure& meso, double h_mm);

// Geometry predicates shared with the tests.
bool point_in_convex_polygon(const Vec2& p, std::span<const Vec2> ccw_vertices);
double distance_to_polygon_boundary(const Vec2& p, std::span<const Vec2> vertices);

} // namespace chl
