#pragma once

#include <stdexcept>
#include <vector>

#include "iafeas/numerics/complex_matrix.hpp"

namespace iafeas::numerics {

struct EigenResult {
    /// Ascending.
    std::vector<double> values;
    /// Column i is the unit eigenvector of values[i]; its largest-magnitude
    /// component is real and positive.
    ComplexMatrix vectors;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct JacobiOptions {
    int max_sweeps = 100;
    /// Stop once the off-diagonal Frobenius norm is below this times ||A||_F.
    double off_diagonal_tolerance = 1e-12;
    /// Allowed max|A - A†| relative to 1 + max|A|.
    double hermitian_tolerance = 1e-9;
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
/// Throws ShapeError (non-square), std::invalid_argument (not Hermitian)
/// or ConvergenceError (sweep cap reached).
EigenResult hermitian_eigen(const ComplexMatrix& a, const JacobiOptions& opts = {});

/// Columns of the eigenvectors belonging to the `count` smallest eigenvalues.
ComplexMatrix smallest_eigenvectors(const EigenResult& eig, std::size_t count);

/// Singular values of a (ascending), via the eigenvalues of A†A.
std::vector<double> singular_values(const ComplexMatrix& a);

}  // namespace iafeas::numerics
