#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace iafeas::numerics {

using cplx = std::complex<double>;

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major complex matrix. Small sizes (a few tens) are the target.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    ComplexMatrix column(std::size_t c) const;
    /// Columns [first, first + count).
    ComplexMatrix columns(std::size_t first, std::size_t count) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scale);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

/// A * B.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
/// A† * B.
ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b);
/// A * B†.
ComplexMatrix matmul_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

/// max |A - A†|.
double hermitian_defect(const ComplexMatrix& a);

/// Modified Gram-Schmidt with one reorthogonalization pass. Throws
/// std::domain_error when a column is (numerically) dependent on earlier ones.
ComplexMatrix orthonormalize(const ComplexMatrix& a);

}  // namespace iafeas::numerics
