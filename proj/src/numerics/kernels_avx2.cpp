// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace iafeas::numerics::kernels::avx2 {

namespace {

// Two complex doubles per register, interleaved [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// alpha * v for a broadcast complex alpha = (ar, ai).
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
    return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swap_re_im(v)));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(ar, ai, load2(x + i))));
    if (i < n) scalar::axpy(n - i, alpha, x + i, y + i);
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
    __m256d same = _mm256_setzero_pd();   // [xr*yr, xi*yi, ...]
    __m256d cross = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        const __m256d yv = load2(y + i);
        same = _mm256_fmadd_pd(xv, yv, same);
        cross = _mm256_fmadd_pd(xv, swap_re_im(yv), cross);
    }
    const __m256d odd_minus_even = _mm256_mul_pd(cross, _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0));
    cplx result{hsum(same), hsum(odd_minus_even)};
    if (i < n) result += scalar::dotc(n - i, x + i, y + i);
    return result;
}

void rotate(std::size_t n, cplx* x, cplx* y, cplx a, cplx b, cplx c, cplx d) {
    const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
    const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
    const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
    const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        const __m256d yv = load2(y + i);
        store2(x + i, _mm256_add_pd(cmul(ar, ai, xv), cmul(br, bi, yv)));
        store2(y + i, _mm256_add_pd(cmul(cr, ci, xv), cmul(dr, di, yv)));
    }
    if (i < n) scalar::rotate(n - i, x + i, y + i, a, b, c, d);
}

double sum_abs2(std::size_t n, const cplx* x) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = load2(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    if (i < n) s += scalar::sum_abs2(n - i, x + i);
    return s;
}

}  // namespace iafeas::numerics::kernels::avx2
