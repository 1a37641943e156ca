// kernels.cpp — runtime backend selection.
#include "snls/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace snls::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
bool avx2_available() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }
#else
bool avx2_available() { return false; }
#endif

namespace {
std::atomic<const Ops*> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const Ops* pick_default(Backend& out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) {
        out = Backend::avx2;
        return &avx2_ops();
    }
#endif
    out = Backend::scalar;
    return &scalar_ops();
}
}  // namespace

const Ops& ops() {
    const Ops* p = g_active.load(std::memory_order_acquire);
    if (!p) {
        Backend b;
        p = pick_default(b);
        g_backend.store(b);
        g_active.store(p, std::memory_order_release);
    }
    return *p;
}

Backend active() {
    ops();
    return g_backend.load();
}

void select(Backend b) {
    if (b == Backend::scalar) {
        g_active.store(&scalar_ops());
        g_backend.store(b);
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::avx2 && avx2_available()) {
        g_active.store(&avx2_ops());
        g_backend.store(b);
        return;
    }
#endif
    throw std::runtime_error("requested kernel backend not available on this CPU");
}

}  // namespace snls::kernels
