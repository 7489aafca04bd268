#pragma once

#include <cstddef>
#include <string_view>

namespace chl::kernels {

// Data-parallel inner loops of the linear solver. Every backend implements
// the same fixed reduction order (4-lane blocked sums, scalar tail, fixed
// final combine), so results are bit-identical across backends and the
// equivalence tests assert exact equality. Built without FP contraction.
struct Table {
    const char* name;
    // sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y += a*x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y = x + a*y
    void (*xpay)(const double* x, double a, double* y, std::size_t n);
    // Five-point stencil y = A x on an nx-by-ny raster stored row-major.
    // Coefficient arrays carry the signed matrix entries; x must be padded
    // with nx zero ghost cells on both ends so every neighbor load is valid.
    void (*stencil5)(std::size_t nx, std::size_t ny, const double* diag, const double* west,
                     const double* east, const double* north, const double* south,
                     const double* x, double* y);
};

enum class Backend { scalar, avx2 };

/// Table for a backend, or nullptr when not compiled in / not supported here.
const Table* backend_table(Backend b);

/// True when the CPU (and OS) can run the given backend.
bool backend_available(Backend b);

Backend active();
std::string_view active_name();

/// Select a backend explicitly; returns false (and keeps the current one)
/// when unavailable.
bool select(Backend b);

/// "auto" picks the widest available backend; otherwise a backend name.
bool select_by_name(std::string_view name);

// Dispatched entry points.
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpay(const double* x, double a, double* y, std::size_t n);
void stencil5(std::size_t nx, std::size_t ny, const double* diag, const double* west,
              const double* east, const double* north, const double* south, const double* x,
              double* y);

} // namespace chl::kernels
