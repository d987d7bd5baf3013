#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace iafeas::numerics::kernels {

namespace {

const KernelTable kScalar{Backend::Scalar, "scalar", scalar::axpy, scalar::dotc, scalar::rotate,
                          scalar::sum_abs2};

#if defined(IAFEAS_HAVE_AVX2)
const KernelTable kAvx2{Backend::Avx2, "avx2", avx2::axpy, avx2::dotc, avx2::rotate, avx2::sum_abs2};

bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& table_for(Backend b) {
    if (b == Backend::Avx2) {
        if (const auto* t = avx2_kernels()) return *t;
        throw std::runtime_error("avx2 kernels are not available on this machine");
    }
    return kScalar;
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{&table_for(detect_backend())};
    return table;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#if defined(IAFEAS_HAVE_AVX2)
    static const bool available = cpu_has_avx2();
    return available ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

bool backend_available(Backend b) { return b == Backend::Scalar || avx2_kernels() != nullptr; }

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void set_backend(Backend b) { current().store(&table_for(b), std::memory_order_release); }

Backend detect_backend() {
    if (const char* env = std::getenv("IAFEAS_SIMD")) {
        if (auto b = parse_backend(env); b && backend_available(*b)) return *b;
    }
    return avx2_kernels() ? Backend::Avx2 : Backend::Scalar;
}

std::optional<Backend> parse_backend(std::string_view name) {
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2") return Backend::Avx2;
    return std::nullopt;
}

const char* to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

}  // namespace iafeas::numerics::kernels
