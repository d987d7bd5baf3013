#include "iafeas/numerics/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "iafeas/numerics/kernels.hpp"

namespace iafeas::numerics {

namespace {

std::string shape(const ComplexMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw ShapeError("entry count does not match shape");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::column(std::size_t c) const { return columns(c, 1); }

ComplexMatrix ComplexMatrix::columns(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw ShapeError("column range out of bounds");
    ComplexMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_ + first), count,
                    out.data_.begin() + static_cast<std::ptrdiff_t>(r * count));
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "add");
    kernels::active().axpy(data_.size(), 1.0, other.data_.data(), data_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "subtract");
    kernels::active().axpy(data_.size(), -1.0, other.data_.data(), data_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: " + shape(a) + " * " + shape(b));
    const auto& k = kernels::active();
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t l = 0; l < a.cols(); ++l) k.axpy(b.cols(), a(i, l), b.row(l).data(), out.data());
    }
    return c;
}

ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("adjoint_matmul: " + shape(a) + "^H * " + shape(b));
    const auto& k = kernels::active();
    ComplexMatrix c(a.cols(), b.cols());
    for (std::size_t l = 0; l < a.rows(); ++l) {
        const auto brow = b.row(l);
        for (std::size_t i = 0; i < a.cols(); ++i)
            k.axpy(b.cols(), std::conj(a(l, i)), brow.data(), c.row(i).data());
    }
    return c;
}

ComplexMatrix matmul_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols()) throw ShapeError("matmul_adjoint: " + shape(a) + " * " + shape(b) + "^H");
    const auto& k = kernels::active();
    ComplexMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) c(i, j) = k.dotc(a.cols(), a.row(i).data(), b.row(j).data());
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
    return out;
}

double frobenius_norm(const ComplexMatrix& a) {
    return std::sqrt(kernels::active().sum_abs2(a.data().size(), a.data().data()));
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

cplx trace(const ComplexMatrix& a) {
    if (!a.square()) throw ShapeError("trace of non-square " + shape(a));
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double hermitian_defect(const ComplexMatrix& a) {
    if (!a.square()) throw ShapeError("hermitian check of non-square " + shape(a));
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

ComplexMatrix orthonormalize(const ComplexMatrix& a) {
    if (a.cols() > a.rows()) throw ShapeError("orthonormalize needs cols <= rows, got " + shape(a));
    const auto& k = kernels::active();
    // Work on rows of the transpose so every column is contiguous.
    ComplexMatrix qt(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) qt(c, r) = a(r, c);

    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < qt.rows(); ++c) {
        cplx* v = qt.row(c).data();
        const double original = std::sqrt(k.sum_abs2(n, v));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                const cplx* q = qt.row(p).data();
                k.axpy(n, -k.dotc(n, v, q), q, v);
            }
        }
        const double norm = std::sqrt(k.sum_abs2(n, v));
        if (!(norm > 1e-10 * original) || norm == 0.0)
            throw std::domain_error("orthonormalize: column " + std::to_string(c) + " is rank deficient");
        for (std::size_t i = 0; i < n; ++i) v[i] /= norm;
    }
    ComplexMatrix q(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) q(r, c) = qt(c, r);
    return q;
}

}  // namespace iafeas::numerics
