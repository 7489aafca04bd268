#include "chl/mesostructure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace chl {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const GradingBand& g) {
    require(g.d_min_mm > 0.0 && g.d_max_mm >= g.d_min_mm, errc::config,
            "grading band requires 0 < d_min <= d_max");
    require(g.fuller_exponent > 0.0, errc::config, "fuller exponent must be positive");
}

void validate(const PolygonRule& r) {
    require(r.vertex_min >= 3, errc::config, "polygons need at least 3 vertices");
    require(r.vertex_max >= r.vertex_min, errc::config, "vertex_max must be >= vertex_min");
    require(r.min_angle_deg > 0.0, errc::config, "min_angle_deg must be positive");
    require(r.vertex_max * r.min_angle_deg <= 360.0, errc::config,
            "angle rule cannot sum to a full turn (n * min_angle > 360)");
}

void validate(const DomainRect& d) {
    require(d.width_mm > 0.0 && d.height_mm > 0.0, errc::config, "domain sides must be positive");
}

} // namespace

double PolygonAggregate::area() const {
    double s = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

double fuller_fraction(double diameter_mm, double max_diameter_mm, double exponent) {
    require(diameter_mm > 0.0 && max_diameter_mm > 0.0, errc::config, "diameters must be positive");
    require(diameter_mm <= max_diameter_mm, errc::config, "diameter exceeds max_diameter");
    return std::pow(diameter_mm / max_diameter_mm, exponent);
}

double sample_radius(Rng& rng, const GradingBand& g) {
    validate(g);
    const double f_lo = fuller_fraction(g.d_min_mm, g.d_max_mm, g.fuller_exponent);
    const double f = f_lo + rng.uniform() * (1.0 - f_lo);
    const double d = g.d_max_mm * std::pow(f, 1.0 / g.fuller_exponent);
    return 0.5 * std::clamp(d, g.d_min_mm, g.d_max_mm);
}

bool separation_ok(const CircleAggregate& c, std::span<const CircleAggregate> placed, double eta) {
    require(eta >= 1.0, errc::config, "eta must be >= 1");
    for (const CircleAggregate& p : placed) {
        const double dx = c.center.x - p.center.x;
        const double dy = c.center.y - p.center.y;
        const double min_dist = eta * (c.radius_mm + p.radius_mm);
        if (dx * dx + dy * dy < min_dist * min_dist) return false;
    }
    return true;
}

namespace {

// Shared placement loop. `on_accept` returns the area credited toward the
// target (circle area for place_circles, polygon area for the full build)
// and may consume further RNG draws; the stream order is therefore fixed:
// batch radii first, then per circle the position draws, then on acceptance
// whatever on_accept draws.
template <typename OnAccept>
std::vector<CircleAggregate> run_placement(const DomainRect& domain, double target_fraction,
                                           const GradingBand& grading, double eta,
                                           std::uint64_t seed, int max_attempts,
                                           double batch_area_ratio, OnAccept&& on_accept) {
    validate(domain);
    validate(grading);
    require(target_fraction > 0.0 && target_fraction < 1.0, errc::config,
            "target_fraction must be in (0, 1)");
    require(max_attempts > 0, errc::config, "max_attempts must be positive");
    require(eta >= 1.0, errc::config, "eta must be >= 1");
    require(grading.d_max_mm <= std::min(domain.width_mm, domain.height_mm), errc::config,
            "largest aggregate does not fit the domain");

    Rng rng(seed);
    const double domain_area = domain.width_mm * domain.height_mm;
    const double target_area = target_fraction * domain_area;

    std::vector<CircleAggregate> placed;
    std::vector<double> radii; // consumed back to front (descending batches)
    double credited = 0.0;
    int consecutive_rejections = 0;
    // A stuck radius is skipped after this many tries so smaller ones can
    // still fill the remaining gaps; the global consecutive budget decides
    // when the packing has truly jammed.
    const int per_radius_cap = std::max(200, max_attempts / 100);

    while (credited < target_area) {
        if (radii.empty()) {
            double batch_area = 0.0;
            const double need = (target_area - credited) / batch_area_ratio;
            while (batch_area < need) {
                const double r = sample_radius(rng, grading);
                radii.push_back(r);
                batch_area += kPi * r * r;
            }
            std::sort(radii.begin(), radii.end()); // back() is the largest
        }
        const double r = radii.back();
        radii.pop_back();

        bool accepted = false;
        for (int attempt = 0; attempt < per_radius_cap; ++attempt) {
            CircleAggregate cand;
            cand.radius_mm = r;
            cand.center.x = rng.uniform(r, domain.width_mm - r);
            cand.center.y = rng.uniform(r, domain.height_mm - r);
            if (separation_ok(cand, placed, eta)) {
                placed.push_back(cand);
                credited += on_accept(cand, rng);
                consecutive_rejections = 0;
                accepted = true;
                break;
            }
            if (++consecutive_rejections >= max_attempts) {
                throw PackingIncomplete("aggregate packing jammed before reaching the target "
                                        "fraction",
                                        credited / domain_area, target_fraction);
            }
        }
        (void)accepted;
    }
    return placed;
}

} // namespace

std::vector<CircleAggregate> place_circles(const DomainRect& domain, double target_fraction,
                                           const GradingBand& grading, double eta,
                                           std::uint64_t seed, int max_attempts) {
    return run_placement(domain, target_fraction, grading, eta, seed, max_attempts, 1.0,
                         [](const CircleAggregate& c, Rng&) {
                             return kPi * c.radius_mm * c.radius_mm;
                         });
}

PolygonAggregate polygonize(const CircleAggregate& circle, const PolygonRule& rule, Rng& rng) {
    validate(rule);
    require(circle.radius_mm > 0.0, errc::config, "circle radius must be positive");

    const int n = rng.uniform_int(rule.vertex_min, rule.vertex_max);
    const double min_angle = rule.min_angle_deg * kPi / 180.0;
    const double slack = std::max(2.0 * kPi - n * min_angle, 0.0);

    // Central angles: the guaranteed minimum plus a random share of the
    // slack (normalized exponentials give a symmetric split).
    std::vector<double> weights(n);
    double wsum = 0.0;
    for (double& w : weights) {
        w = -std::log(1.0 - rng.uniform()); // in [0, inf)
        wsum += w;
    }
    const double start = rng.uniform(0.0, 2.0 * kPi);

    PolygonAggregate poly;
    poly.circumscribed = circle;
    poly.vertices.resize(n);
    double angle = start;
    for (int k = 0; k < n; ++k) {
        poly.vertices[k] = {circle.center.x + circle.radius_mm * std::cos(angle),
                            circle.center.y + circle.radius_mm * std::sin(angle)};
        const double share = wsum > 0.0 ? weights[k] / wsum : 1.0 / n;
        angle += min_angle + slack * share;
    }
    return poly;
}

Mesostructure build_mesostructure(const MesoConfig& config) {
    validate(config.domain);
    require(config.itz_width_mm >= 0.0, errc::config, "itz_width must be >= 0");
    require(config.itz_multiplier >= 0.0, errc::config, "itz_multiplier must be >= 0");
    require(config.target_fraction >= 0.0 && config.target_fraction < 1.0, errc::config,
            "target_fraction must be in [0, 1)");

    Mesostructure meso;
    meso.domain = config.domain;
    meso.itz_width_mm = config.itz_width_mm;
    meso.seed = config.seed;
    meso.target_area_fraction = config.target_fraction;

    if (config.duct_enabled) {
        TendonDuct duct;
        duct.diameter_mm = config.duct_diameter_mm;
        duct.center = {0.5 * config.domain.width_mm, config.duct_depth_mm};
        const double r = 0.5 * duct.diameter_mm;
        require(duct.center.x - r >= 0.0 && duct.center.x + r <= config.domain.width_mm &&
                    duct.center.y - r >= 0.0 && duct.center.y + r <= config.domain.height_mm,
                errc::config, "tendon duct does not fit inside the domain");
        meso.duct = duct;
    }

    double polygon_area = 0.0;
    if (config.target_fraction > 0.0) {
        // Credit polygon area, not circle area: the random inscribed polygons
        // cover ~75-90% of their circles and the achieved-fraction contract is
        // on the polygons.
        run_placement(config.domain, config.target_fraction, config.grading, config.eta,
                      config.seed, config.max_attempts, 0.75,
                      [&](const CircleAggregate& c, Rng& rng) {
                          PolygonAggregate poly = polygonize(c, config.polygon, rng);
                          const double a = poly.area();
                          polygon_area += a;
                          meso.aggregates.push_back(std::move(poly));
                          return a;
                      });
    }
    meso.achieved_area_fraction = polygon_area / (config.domain.width_mm * config.domain.height_mm);
    return meso;
}

bool point_in_convex_polygon(const Vec2& p, std::span<const Vec2> v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (cross < 0.0) return false; // boundary counts as inside
    }
    return true;
}

double distance_to_polygon_boundary(const Vec2& p, std::span<const Vec2> v) {
    const std::size_t n = v.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        const double ex = b.x - a.x, ey = b.y - a.y;
        const double len2 = ex * ex + ey * ey;
        double t = len2 > 0.0 ? ((p.x - a.x) * ex + (p.y - a.y) * ey) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double dx = p.x - (a.x + t * ex);
        const double dy = p.y - (a.y + t * ey);
        best = std::min(best, std::sqrt(dx * dx + dy * dy));
    }
    return best;
}

MaterialGrid rasterize(const Mesostructure& meso, double h_mm) {
    require(h_mm > 0.0, errc::config, "cell size must be positive");
    double min_radius = std::numeric_limits<double>::infinity();
    for (const auto& a : meso.aggregates) min_radius = std::min(min_radius, a.circumscribed.radius_mm);
    require(meso.aggregates.empty() || h_mm <= min_radius, errc::config,
            "cell size exceeds the smallest aggregate radius");

    MaterialGrid grid;
    grid.h_mm = h_mm;
    grid.domain = meso.domain;
    grid.nx = static_cast<int>(std::lround(meso.domain.width_mm / h_mm));
    grid.ny = static_cast<int>(std::lround(meso.domain.height_mm / h_mm));
    require(grid.nx > 0 && grid.ny > 0, errc::config, "grid has no cells");
    grid.codes.assign(static_cast<std::size_t>(grid.nx) * grid.ny, Material::mortar);

    const auto clamp_cell_x = [&](double x) {
        return std::clamp(static_cast<int>(std::floor(x / h_mm)), 0, grid.nx - 1);
    };
    const auto clamp_cell_y = [&](double y) {
        return std::clamp(static_cast<int>(std::floor(y / h_mm)), 0, grid.ny - 1);
    };

    // Aggregate interiors, then the ITZ ring; both scans stay inside the
    // circumscribed circle's (inflated) bounding box.
    for (const auto& poly : meso.aggregates) {
        const CircleAggregate& c = poly.circumscribed;
        const double reach = c.radius_mm + meso.itz_width_mm;
        const int i0 = clamp_cell_x(c.center.x - reach), i1 = clamp_cell_x(c.center.x + reach);
        const int j0 = clamp_cell_y(c.center.y - reach), j1 = clamp_cell_y(c.center.y + reach);
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                const Vec2 p{grid.cell_x(i), grid.cell_depth(j)};
                if (point_in_convex_polygon(p, poly.vertices))
                    grid.codes[grid.index(i, j)] = Material::aggregate;
            }
        }
    }
    if (meso.itz_width_mm > 0.0) {
        for (const auto& poly : meso.aggregates) {
            const CircleAggregate& c = poly.circumscribed;
            const double reach = c.radius_mm + meso.itz_width_mm;
            const int i0 = clamp_cell_x(c.center.x - reach), i1 = clamp_cell_x(c.center.x + reach);
            const int j0 = clamp_cell_y(c.center.y - reach), j1 = clamp_cell_y(c.center.y + reach);
            for (int j = j0; j <= j1; ++j) {
                for (int i = i0; i <= i1; ++i) {
                    const std::size_t idx = grid.index(i, j);
                    if (grid.codes[idx] == Material::aggregate) continue;
                    const Vec2 p{grid.cell_x(i), grid.cell_depth(j)};
                    if (distance_to_polygon_boundary(p, poly.vertices) <= meso.itz_width_mm)
                        grid.codes[idx] = Material::itz;
                }
            }
        }
    }
    if (meso.duct) {
        const TendonDuct& d = *meso.duct;
        const double r = 0.5 * d.diameter_mm;
        const int i0 = clamp_cell_x(d.center.x - r), i1 = clamp_cell_x(d.center.x + r);
        const int j0 = clamp_cell_y(d.center.y - r), j1 = clamp_cell_y(d.center.y + r);
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                const double dx = grid.cell_x(i) - d.center.x;
                const double dy = grid.cell_depth(j) - d.center.y;
                if (dx * dx + dy * dy <= r * r) grid.codes[grid.index(i, j)] = Material::duct;
            }
        }
    }
    return grid;
}

} // namespace chl
