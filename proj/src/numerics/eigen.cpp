#include "iafeas/numerics/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "iafeas/numerics/kernels.hpp"

namespace iafeas::numerics {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
// on coordinates (p, q), where a(p,q) = |a(p,q)| e^{i phi}. Rows of `a` and
// rows of `zt` (eigenvectors stored transposed) are updated with the
// contiguous rotate kernel; the columns of `a` follow from Hermitian symmetry.
void rotate(ComplexMatrix& a, ComplexMatrix& zt, std::size_t p, std::size_t q,
            const kernels::KernelTable& k) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    const cplx phase = apq / mag;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.rows();
    // G† A on rows p, q.
    k.rotate(n, a.row(p).data(), a.row(q).data(), c, -s * phase, s, c * phase);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        a(i, p) = std::conj(a(p, i));
        a(i, q) = std::conj(a(q, i));
    }
    a(p, p) = app - t * mag;
    a(q, q) = aqq + t * mag;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    // V <- V G, i.e. rows of V^T.
    k.rotate(n, zt.row(p).data(), zt.row(q).data(), c, -s * std::conj(phase), s, c * std::conj(phase));
}

}  // namespace

EigenResult hermitian_eigen(const ComplexMatrix& input, const JacobiOptions& opts) {
    if (!input.square()) {
        throw ShapeError("hermitian_eigen: matrix is " + std::to_string(input.rows()) + "x" +
                         std::to_string(input.cols()));
    }
    const double scale = max_abs(input);
    if (hermitian_defect(input) > opts.hermitian_tolerance * (1.0 + scale))
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");

    const std::size_t n = input.rows();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = input(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix zt = ComplexMatrix::identity(n);
    const auto& k = kernels::active();

    const double threshold = opts.off_diagonal_tolerance * frobenius_norm(a);
    int sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (sweep++ >= opts.max_sweeps)
            throw ConvergenceError("hermitian_eigen: no convergence after " +
                                   std::to_string(opts.max_sweeps) + " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 0.0) rotate(a, zt, p, q, k);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    EigenResult result{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        result.values[col] = a(src, src).real();
        const auto z = zt.row(src);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(z[i]) > std::abs(z[peak])) peak = i;
        const cplx unphase = std::abs(z[peak]) > 0.0 ? std::conj(z[peak]) / std::abs(z[peak]) : cplx{1.0};
        for (std::size_t i = 0; i < n; ++i) result.vectors(i, col) = z[i] * unphase;
        result.vectors(peak, col) = std::abs(z[peak]);
    }
    return result;
}

ComplexMatrix smallest_eigenvectors(const EigenResult& eig, std::size_t count) {
    return eig.vectors.columns(0, count);
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    auto eig = hermitian_eigen(adjoint_matmul(a, a));
    for (auto& v : eig.values) v = std::sqrt(std::max(v, 0.0));
    return eig.values;
}

}  // namespace iafeas::numerics
