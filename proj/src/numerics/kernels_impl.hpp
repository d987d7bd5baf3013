#pragma once

#include "iafeas/numerics/kernels.hpp"

namespace iafeas::numerics::kernels {

namespace scalar {
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
void rotate(std::size_t n, cplx* x, cplx* y, cplx a, cplx b, cplx c, cplx d);
double sum_abs2(std::size_t n, const cplx* x);
}  // namespace scalar

#if defined(IAFEAS_HAVE_AVX2)
namespace avx2 {
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
void rotate(std::size_t n, cplx* x, cplx* y, cplx a, cplx b, cplx c, cplx d);
double sum_abs2(std::size_t n, const cplx* x);
}  // namespace avx2
#endif

}  // namespace iafeas::numerics::kernels
