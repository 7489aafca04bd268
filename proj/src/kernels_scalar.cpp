#include "chl/kernels.hpp"

// Reference kernels. The dot product keeps four interleaved partial sums and
// combines them in a fixed order; the vector backends follow the identical
// order, which is what makes scalar/SIMD results bit-identical.

namespace chl::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 += x[i] * y[i];
        a1 += x[i + 1] * y[i + 1];
        a2 += x[i + 2] * y[i + 2];
        a3 += x[i + 3] * y[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i] * y[i];
    return ((a0 + a1) + (a2 + a3)) + tail;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay_scalar(const double* x, double a, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void stencil5_scalar(std::size_t nx, std::size_t ny, const double* diag, const double* west,
                     const double* east, const double* north, const double* south,
                     const double* x, double* y) {
    const std::size_t n = nx * ny;
    for (std::size_t i = 0; i < n; ++i) {
        double t = diag[i] * x[i];
        t += west[i] * x[i - 1];
        t += east[i] * x[i + 1];
        t += north[i] * x[i - nx];
        t += south[i] * x[i + nx];
        y[i] = t;
    }
}

} // namespace

const Table* scalar_table() {
    static const Table t{"scalar", dot_scalar, axpy_scalar, xpay_scalar, stencil5_scalar};
    return &t;
}

} // namespace chl::kernels
