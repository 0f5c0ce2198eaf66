#include "prrtc/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace prrtc::kernels {
namespace {

std::atomic<const Ops*> g_active{nullptr};

const Ops* detect() {
    if (const Ops* a = avx2_ops(); a != nullptr && avx2_supported()) {
        return a;
    }
    return &scalar_ops();
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return avx2_ops() != nullptr && __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops& ops() {
    const Ops* p = g_active.load(std::memory_order_acquire);
    if (p == nullptr) {
        p = detect();
        g_active.store(p, std::memory_order_release);
    }
    return *p;
}

Backend active_backend() {
    return &ops() == &scalar_ops() ? Backend::Scalar : Backend::Avx2;
}

void force_backend(Backend b) {
    if (b == Backend::Scalar) {
        g_active.store(&scalar_ops(), std::memory_order_release);
        return;
    }
    if (!avx2_supported()) {
        throw std::invalid_argument("AVX2 backend is not available on this machine");
    }
    g_active.store(avx2_ops(), std::memory_order_release);
}

void reset_backend() {
    g_active.store(detect(), std::memory_order_release);
}

}  // namespace prrtc::kernels
