#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

// Complex level-1 kernels behind every dense operation in the numerics
// module. Each has a portable scalar reference and, on x86-64, an AVX2+FMA
// variant; the variant is picked once at startup from CPUID and can be
// overridden for testing or with IAFEAS_SIMD=scalar|avx2.

namespace iafeas::numerics::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// y[i] += alpha * x[i]
using AxpyFn = void (*)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
/// sum_i x[i] * conj(y[i])
using DotcFn = cplx (*)(std::size_t n, const cplx* x, const cplx* y);
/// (x, y) <- (a x + b y, c x + d y), elementwise
using RotateFn = void (*)(std::size_t n, cplx* x, cplx* y, cplx a, cplx b, cplx c, cplx d);
/// sum_i |x[i]|^2
using SumAbs2Fn = double (*)(std::size_t n, const cplx* x);

struct KernelTable {
    Backend backend;
    const char* name;
    AxpyFn axpy;
    DotcFn dotc;
    RotateFn rotate;
    SumAbs2Fn sum_abs2;
};

const KernelTable& scalar_kernels();

/// Null when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

bool backend_available(Backend b);

/// Table used by all numerics routines.
const KernelTable& active();

/// Throws std::runtime_error if `b` is unavailable on this machine.
void set_backend(Backend b);

/// Best available backend, honouring IAFEAS_SIMD.
Backend detect_backend();

std::optional<Backend> parse_backend(std::string_view name);
const char* to_string(Backend b);

}  // namespace iafeas::numerics::kernels
