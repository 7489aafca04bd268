#include "chl/kernels.hpp"

#include <atomic>

namespace chl::kernels {

const Table* scalar_table();

#if defined(CHL_HAVE_AVX2)
const Table* avx2_table();
#else
inline const Table* avx2_table() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(CHL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<const Table*> g_active{nullptr};

const Table* pick_auto() {
    if (cpu_has_avx2())
        if (const Table* t = avx2_table()) return t;
    return scalar_table();
}

const Table* current() {
    const Table* t = g_active.load(std::memory_order_relaxed);
    if (!t) {
        t = pick_auto();
        g_active.store(t, std::memory_order_relaxed);
    }
    return t;
}

} // namespace

const Table* backend_table(Backend b) {
    switch (b) {
        case Backend::scalar: return scalar_table();
        case Backend::avx2: return cpu_has_avx2() ? avx2_table() : nullptr;
    }
    return nullptr;
}

bool backend_available(Backend b) { return backend_table(b) != nullptr; }

Backend active() {
    return current() == avx2_table() && avx2_table() ? Backend::avx2 : Backend::scalar;
}

std::string_view active_name() { return current()->name; }

bool select(Backend b) {
    const Table* t = backend_table(b);
    if (!t) return false;
    g_active.store(t, std::memory_order_relaxed);
    return true;
}

bool select_by_name(std::string_view name) {
    if (name == "auto" || name.empty()) {
        g_active.store(pick_auto(), std::memory_order_relaxed);
        return true;
    }
    if (name == "scalar") return select(Backend::scalar);
    if (name == "avx2") return select(Backend::avx2);
    return false;
}

double dot(const double* x, const double* y, std::size_t n) { return current()->dot(x, y, n); }

void axpy(double a, const double* x, double* y, std::size_t n) { current()->axpy(a, x, y, n); }

void xpay(const double* x, double a, double* y, std::size_t n) { current()->xpay(x, a, y, n); }

void stencil5(std::size_t nx, std::size_t ny, const double* diag, const double* west,
              const double* east, const double* north, const double* south, const double* x,
              double* y) {
    current()->stencil5(nx, ny, diag, west, east, north, south, x, y);
}

} // namespace chl::kernels
