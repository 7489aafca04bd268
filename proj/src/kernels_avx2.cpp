#include "chl/kernels.hpp"

// AVX2 kernels. Compiled with -mavx2 only (no FMA), so each lane performs
// the same IEEE mul/add sequence as the scalar reference and results match
// it bit for bit. Loads are unaligned; tails run the scalar loop.

#if defined(__AVX2__)

#include <immintrin.h>

namespace chl::kernels {
namespace {

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(vx, vy));
    }
    alignas(32) double a[4];
    _mm256_store_pd(a, vacc);
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i] * y[i];
    return ((a[0] + a[1]) + (a[2] + a[3])) + tail;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y + i);
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_avx2(const double* x, double a, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y + i);
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vx, _mm256_mul_pd(va, vy)));
    }
    for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void stencil5_avx2(std::size_t nx, std::size_t ny, const double* diag, const double* west,
                   const double* east, const double* north, const double* south, const double* x,
                   double* y) {
    const std::size_t n = nx * ny;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(_mm256_loadu_pd(diag + i), _mm256_loadu_pd(x + i));
        t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(west + i), _mm256_loadu_pd(x + i - 1)));
        t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(east + i), _mm256_loadu_pd(x + i + 1)));
        t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(north + i), _mm256_loadu_pd(x + i - nx)));
        t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_loadu_pd(south + i), _mm256_loadu_pd(x + i + nx)));
        _mm256_storeu_pd(y + i, t);
    }
    for (; i < n; ++i) {
        double t = diag[i] * x[i];
        t += west[i] * x[i - 1];
        t += east[i] * x[i + 1];
        t += north[i] * x[i - nx];
        t += south[i] * x[i + nx];
        y[i] = t;
    }
}

} // namespace

const Table* avx2_table() {
    static const Table t{"avx2", dot_avx2, axpy_avx2, xpay_avx2, stencil5_avx2};
    return &t;
}

} // namespace chl::kernels

#endif // __AVX2__
