#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace chl {

inline constexpr const char* kVersion = "0.1.0";

// Canonical internal units: mm, years, mass-% of concrete.
inline constexpr double kSecondsPerYear = 3.1536e7;
// m^2/s -> mm^2/year
inline constexpr double kM2PerSecToMm2PerYear = 3.1536e13;
inline constexpr double kDaysPerYear = 365.0;

// Process exit codes, shared by the CLI and the error hierarchy.
enum class errc : int {
    ok = 0,
    config = 2,
    packing = 3,
    solver = 4,
    analysis = 5,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what, std::string context = {})
        : std::runtime_error(what), code_(code), context_(std::move(context)) {}

    errc code() const noexcept { return code_; }
    const std::string& context() const noexcept { return context_; }

private:
    errc code_;
    std::string context_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::string context = {})
        : Error(errc::config, what, std::move(context)) {}
};

class PackingIncomplete : public Error {
public:
    PackingIncomplete(const std::string& what, double achieved, double target)
        : Error(errc::packing, what), achieved_fraction(achieved), target_fraction(target) {}

    double achieved_fraction;
    double target_fraction;
};

class LinearSolveFailure : public Error {
public:
    LinearSolveFailure(const std::string& what, double time_years, double residual)
        : Error(errc::solver, what), time_years(time_years), residual(residual) {}

    double time_years;
    double residual;
};

class AnalysisError : public Error {
public:
    explicit AnalysisError(const std::string& what, std::string context = {})
        : Error(errc::analysis, what, std::move(context)) {}
};

inline void require(bool cond, errc code, const std::string& msg) {
    if (!cond) throw Error(code, msg);
}

// Deterministic uniform RNG. std::mt19937_64 has a fully specified sequence
// and the double conversion below is exact, so streams are identical across
// platforms and compilers (std::uniform_real_distribution is not, which is
// why the distributions are hand-rolled here).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // integer in [lo, hi], inclusive
    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int k = static_cast<int>(uniform() * span);
        if (k >= span) k = span - 1;
        return lo + k;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace chl
