#include "chl/analytic.hpp"

#include <cmath>

namespace chl {

double erf_profile(const FickQuery& q) {
    require(q.diffusivity_mm2_per_year > 0.0, errc::analysis, "diffusivity must be positive");
    require(q.age_years > 0.0, errc::analysis, "age must be positive");
    require(q.depth_mm >= 0.0, errc::analysis, "depth must be >= 0");
    const double arg = q.depth_mm / (2.0 * std::sqrt(q.diffusivity_mm2_per_year * q.age_years));
    return q.initial_concentration +
           (q.surface_concentration - q.initial_concentration) * (1.0 - std::erf(arg));
}

namespace {

// Adaptive Simpson with the usual S/15 Richardson estimate.
inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(const F& f, double a, double fa, double b, double fb, double m, double fm,
             double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double rel_tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    const double scale = std::max(std::abs(whole), 1e-300);
    return adapt(f, a, fa, b, fb, m, fm, whole, rel_tol * scale, 48);
}

inline double harmonic(double a, double b) {
    if (a <= 0.0 || b <= 0.0) return 0.0;
    return 2.0 * a * b / (a + b);
}

} // namespace

double integrated_diffusivity(const ExposureScenario& scenario, double t_end_years,
                              double depth_mm) {
    validate(scenario);
    require(t_end_years >= 0.0, errc::analysis, "t_end must be >= 0");
    if (t_end_years == 0.0) return 0.0;
    const auto d = [&](double t) { return effective_diffusivity(scenario, t, depth_mm); };
    // The aging clamp puts a kink at the reference age; integrate each side.
    const double t0 = scenario.aging.reference_age_days / kDaysPerYear;
    constexpr double rel_tol = 1e-9;
    if (t_end_years <= t0) return integrate(d, 0.0, t_end_years, rel_tol);
    return integrate(d, 0.0, t0, rel_tol) + integrate(d, t0, t_end_years, rel_tol);
}

DepthProfile fd1d_reference(const ExposureScenario& scenario, double depth_extent_mm, double h_mm,
                            double dt_years, double t_end_years, const Fd1dOptions& opts) {
    validate(scenario);
    require(depth_extent_mm > 0.0 && h_mm > 0.0 && dt_years > 0.0, errc::config,
            "extent, h and dt must be positive");
    require(t_end_years >= 0.0, errc::config, "t_end must be >= 0");

    const int n = static_cast<int>(std::lround(depth_extent_mm / h_mm));
    require(n >= 2, errc::config, "column needs at least two cells");

    DepthProfile prof;
    prof.depth_mm.resize(n);
    for (int k = 0; k < n; ++k) prof.depth_mm[k] = (k + 0.5) * h_mm;
    prof.value_percent.assign(n, scenario.surface.initial_surface_concentration);
    prof.time_years = t_end_years;
    if (t_end_years == 0.0) return prof;

    const std::vector<double> ts = build_time_grid(t_end_years, dt_years, opts.startup_substeps,
                                                   opts.startup_window_years, {t_end_years});

    std::vector<double> d(n), lower(n), diag(n), upper(n), rhs(n);
    std::vector<double>& c = prof.value_percent;

    for (std::size_t s = 1; s < ts.size(); ++s) {
        const double dt = ts[s] - ts[s - 1];
        const double t_mid = ts[s - 1] + 0.5 * dt;
        const double lam = dt / (h_mm * h_mm);
        const double cs = surface_concentration(scenario.surface, ts[s]);

        for (int k = 0; k < n; ++k) d[k] = effective_diffusivity(scenario, t_mid, prof.depth_mm[k]);
        for (int k = 0; k < n; ++k) {
            const double t_up = (k > 0) ? harmonic(d[k], d[k - 1]) : 0.0;
            const double t_dn = (k + 1 < n) ? harmonic(d[k], d[k + 1]) : 0.0;
            diag[k] = 1.0 + lam * (t_up + t_dn);
            lower[k] = -lam * t_up;
            upper[k] = -lam * t_dn;
            rhs[k] = c[k];
        }
        // exposed surface: Dirichlet face at half-cell distance
        diag[0] += lam * 2.0 * d[0];
        rhs[0] += lam * 2.0 * d[0] * cs;

        // Thomas elimination
        for (int k = 1; k < n; ++k) {
            const double m = lower[k] / diag[k - 1];
            diag[k] -= m * upper[k - 1];
            rhs[k] -= m * rhs[k - 1];
        }
        c[n - 1] = rhs[n - 1] / diag[n - 1];
        for (int k = n - 2; k >= 0; --k) c[k] = (rhs[k] - upper[k] * c[k + 1]) / diag[k];
    }
    return prof;
}

} // namespace chl
