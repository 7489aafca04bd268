#include "chl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "chl/kernels.hpp"

namespace chl {

namespace {

// Vector with nx zero ghost cells on both ends so the five-point stencil can
// load every neighbor unconditionally.
class PaddedVec {
public:
    PaddedVec() = default;
    PaddedVec(std::size_t nx, std::size_t n) : buf_(n + 2 * nx, 0.0), nx_(nx), n_(n) {}

    double* data() { return buf_.data() + nx_; }
    const double* data() const { return buf_.data() + nx_; }
    std::size_t size() const { return n_; }

private:
    std::vector<double> buf_;
    std::size_t nx_ = 0;
    std::size_t n_ = 0;
};

struct StencilMatrix {
    std::size_t nx = 0, ny = 0;
    std::vector<double> diag, west, east, north, south;

    void resize(std::size_t nx_, std::size_t ny_) {
        nx = nx_;
        ny = ny_;
        const std::size_t n = nx * ny;
        diag.assign(n, 0.0);
        west.assign(n, 0.0);
        east.assign(n, 0.0);
        north.assign(n, 0.0);
        south.assign(n, 0.0);
    }

    void apply(const PaddedVec& x, double* y) const {
        kernels::stencil5(nx, ny, diag.data(), west.data(), east.data(), north.data(),
                          south.data(), x.data(), y);
    }
};

double harmonic_face(double a, double b) {
    if (a <= 0.0 || b <= 0.0) return 0.0;
    return 2.0 * a * b / (a + b);
}

class Stepper {
public:
    Stepper(const MaterialGrid& grid, const ExposureScenario& scenario, const SolverConfig& cfg)
        : grid_(grid), scenario_(scenario), cfg_(cfg) {
        validate(scenario);
        require(cfg.time_step_years > 0.0, errc::config, "time_step must be positive");
        require(cfg.linear_tolerance > 0.0, errc::config, "linear_tolerance must be positive");
        const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.ny;
        mat_.resize(grid.nx, grid.ny);
        rhs_.assign(n, 0.0);
        cell_d_.assign(n, 0.0);
        x_ = PaddedVec(grid.nx, n);
        p_ = PaddedVec(grid.nx, n);
        r_.assign(n, 0.0);
        q_.assign(n, 0.0);
    }

    // One backward-difference step of the live field.
    void advance(ConcentrationField& f, double dt) {
        require(dt > 0.0, errc::config, "dt must be positive");
        const double t_mid = f.time_years + 0.5 * dt;
        const double t_new = f.time_years + dt;
        assemble(f, dt, t_mid, t_new);
        solve(t_new);
        const std::size_t n = rhs_.size();
        double* xv = x_.data();
        for (std::size_t k = 0; k < n; ++k) f.values[k] = xv[k];
        f.time_years = t_new;
    }

private:
    void assemble(const ConcentrationField& f, double dt, double t_mid, double t_new) {
        const int nx = grid_.nx, ny = grid_.ny;
        const double lam = dt / (grid_.h_mm * grid_.h_mm);
        const double cs = surface_concentration(scenario_.surface, t_new);

        for (int j = 0; j < ny; ++j) {
            const double row_d = effective_diffusivity(scenario_, t_mid, grid_.cell_depth(j));
            for (int i = 0; i < nx; ++i) {
                const std::size_t k = grid_.index(i, j);
                switch (grid_.at(i, j)) {
                    case Material::mortar: cell_d_[k] = row_d; break;
                    case Material::itz: cell_d_[k] = row_d * cfg_.itz_multiplier; break;
                    default: cell_d_[k] = 0.0; break;
                }
            }
        }

        double* xv = x_.data();
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const std::size_t k = grid_.index(i, j);
                const double d = cell_d_[k];
                if (d <= 0.0) {
                    // excluded cell: identity row, value pinned at zero
                    mat_.diag[k] = 1.0;
                    mat_.west[k] = mat_.east[k] = mat_.north[k] = mat_.south[k] = 0.0;
                    rhs_[k] = 0.0;
                    xv[k] = 0.0;
                    continue;
                }
                const double tw = (i > 0) ? harmonic_face(d, cell_d_[k - 1]) : 0.0;
                const double te = (i + 1 < nx) ? harmonic_face(d, cell_d_[k + 1]) : 0.0;
                const double tn = (j > 0) ? harmonic_face(d, cell_d_[k - nx]) : 0.0;
                const double ts = (j + 1 < ny) ? harmonic_face(d, cell_d_[k + nx]) : 0.0;

                double diag = 1.0 + lam * (tw + te + tn + ts);
                double rhs = f.values[k];
                if (j == 0 && cfg_.surface_dirichlet) {
                    // exposed surface: Dirichlet face at half-cell distance
                    diag += lam * 2.0 * d;
                    rhs += lam * 2.0 * d * cs;
                }
                mat_.diag[k] = diag;
                mat_.west[k] = -lam * tw;
                mat_.east[k] = -lam * te;
                mat_.north[k] = -lam * tn;
                mat_.south[k] = -lam * ts;
                rhs_[k] = rhs;
                xv[k] = f.values[k]; // warm start from the previous field
            }
        }
    }

    // Plain conjugate gradients; the matrix is a symmetric M-matrix. All
    // reductions go through the fixed-order kernels, so results do not
    // depend on the selected backend.
    void solve(double t_new) {
        const std::size_t n = rhs_.size();
        double* r = r_.data();
        double* q = q_.data();
        const double bnorm2 = kernels::dot(rhs_.data(), rhs_.data(), n);
        if (bnorm2 == 0.0) {
            std::fill_n(x_.data(), n, 0.0);
            return;
        }
        const double target2 = cfg_.linear_tolerance * cfg_.linear_tolerance * bnorm2;

        mat_.apply(x_, q);
        std::memcpy(r, rhs_.data(), n * sizeof(double));
        kernels::axpy(-1.0, q, r, n);
        double rho = kernels::dot(r, r, n);
        if (rho <= target2) return;

        std::memcpy(p_.data(), r, n * sizeof(double));
        for (int it = 0; it < cfg_.max_linear_iterations; ++it) {
            mat_.apply(p_, q);
            const double pq = kernels::dot(p_.data(), q, n);
            if (!(pq > 0.0))
                throw LinearSolveFailure("conjugate gradient breakdown", t_new,
                                         std::sqrt(rho / bnorm2));
            const double alpha = rho / pq;
            kernels::axpy(alpha, p_.data(), x_.data(), n);
            kernels::axpy(-alpha, q, r, n);
            const double rho_new = kernels::dot(r, r, n);
            if (rho_new <= target2) return;
            kernels::xpay(r, rho_new / rho, p_.data(), n);
            rho = rho_new;
        }
        throw LinearSolveFailure("linear solver did not reach the residual target", t_new,
                                 std::sqrt(rho / bnorm2));
    }

    const MaterialGrid& grid_;
    const ExposureScenario& scenario_;
    const SolverConfig& cfg_;
    StencilMatrix mat_;
    std::vector<double> rhs_, cell_d_, r_, q_;
    PaddedVec x_, p_;
};

} // namespace

double cell_diffusivity(const ExposureScenario& scenario, const MaterialGrid& grid, int i, int j,
                        double time_years, double itz_multiplier) {
    switch (grid.at(i, j)) {
        case Material::aggregate:
        case Material::duct: return 0.0;
        case Material::itz:
            return itz_multiplier *
                   effective_diffusivity(scenario, time_years, grid.cell_depth(j));
        case Material::mortar:
        default: return effective_diffusivity(scenario, time_years, grid.cell_depth(j));
    }
}

ConcentrationField initial_field(const MaterialGrid& grid, const ExposureScenario& scenario) {
    validate(scenario);
    ConcentrationField f;
    f.grid = grid;
    f.time_years = 0.0;
    const double c0 = scenario.surface.initial_surface_concentration;
    f.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (grid.active(i, j)) f.values[grid.index(i, j)] = c0;
    return f;
}

ConcentrationField step(const ConcentrationField& field, const ExposureScenario& scenario,
                        double dt_years, const SolverConfig& config) {
    ConcentrationField out = field;
    Stepper stepper(out.grid, scenario, config);
    stepper.advance(out, dt_years);
    return out;
}

std::vector<double> build_time_grid(double end_time_years, double dt_years, int startup_substeps,
                                    double startup_window_years,
                                    const std::vector<double>& must_hit) {
    require(end_time_years >= 0.0, errc::config, "end_time must be >= 0");
    require(dt_years > 0.0, errc::config, "dt must be positive");
    require(startup_substeps >= 1, errc::config, "startup_substeps must be >= 1");

    std::vector<double> pts;
    for (double t : must_hit) {
        require(t >= 0.0 && t <= end_time_years + 1e-12, errc::config,
                "output time outside [0, end_time]");
        if (t > 0.0) pts.push_back(t);
    }
    pts.push_back(end_time_years);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    constexpr double eps = 1e-9;
    std::vector<double> ts{0.0};
    double t = 0.0;
    while (t < end_time_years - eps) {
        const bool in_window = startup_window_years > 0.0 && t < startup_window_years - eps;
        double tn = t + (in_window ? dt_years / startup_substeps : dt_years);
        if (in_window && tn > startup_window_years) tn = startup_window_years;
        if (tn > end_time_years) tn = end_time_years;
        for (double p : pts) {
            if (p > t + eps) {
                if (tn > p - eps) tn = p;
                break;
            }
        }
        ts.push_back(tn);
        t = tn;
    }
    return ts;
}

std::vector<ConcentrationField> run_simulation(const MaterialGrid& grid,
                                               const ExposureScenario& scenario,
                                               const SolverConfig& config,
                                               const StepObserver& observer) {
    require(config.end_time_years >= 0.0, errc::config, "end_time must be >= 0");

    ConcentrationField state = initial_field(grid, scenario);
    std::vector<ConcentrationField> outputs;

    auto want = config.output_times_years;
    std::sort(want.begin(), want.end());
    std::size_t next_out = 0;
    const auto emit_due = [&](const ConcentrationField& f) {
        while (next_out < want.size() && want[next_out] <= f.time_years + 1e-9) {
            outputs.push_back(f);
            ++next_out;
        }
    };

    if (config.end_time_years == 0.0) {
        outputs.push_back(state);
        return outputs;
    }

    emit_due(state);
    if (observer) observer(state);

    const std::vector<double> ts =
        build_time_grid(config.end_time_years, config.time_step_years, config.startup_substeps,
                        config.startup_window_years, want);
    Stepper stepper(grid, scenario, config);
    for (std::size_t k = 1; k < ts.size(); ++k) {
        stepper.advance(state, ts[k] - ts[k - 1]);
        state.time_years = ts[k]; // avoid accumulated drift
        if (observer) observer(state);
        emit_due(state);
    }
    return outputs;
}

} // namespace chl
