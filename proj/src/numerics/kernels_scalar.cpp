#include "kernels_impl.hpp"

namespace iafeas::numerics::kernels::scalar {

// Written on real/imag parts so the reference does not depend on the
// library's complex multiply (which adds NaN recovery branches).

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xi * yr - xr * yi;
    }
    return {re, im};
}

void rotate(std::size_t n, cplx* x, cplx* y, cplx a, cplx b, cplx c, cplx d) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        x[i] = {a.real() * xr - a.imag() * xi + b.real() * yr - b.imag() * yi,
                a.real() * xi + a.imag() * xr + b.real() * yi + b.imag() * yr};
        y[i] = {c.real() * xr - c.imag() * xi + d.real() * yr - d.imag() * yi,
                c.real() * xi + c.imag() * xr + d.real() * yi + d.imag() * yr};
    }
}

double sum_abs2(std::size_t n, const cplx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

}  // namespace iafeas::numerics::kernels::scalar
