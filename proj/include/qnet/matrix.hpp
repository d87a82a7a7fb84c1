#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qnet {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

inline double max_abs(const ComplexMatrix& m) {
    return m.cwiseAbs().maxCoeff();
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double tol = 1e-10) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return max_abs(a - b) <= tol;
}

inline ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

inline double hermiticity_deviation(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

/// Kronecker product with the left factor on the most significant index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out the first factor (dimension dim_left) of a square matrix on a
/// bipartite space of dimension dim_left * dim_right.
ComplexMatrix partial_trace_left(const ComplexMatrix& m, Eigen::Index dim_left);

/// Trace out the second factor (dimension dim_right).
ComplexMatrix partial_trace_right(const ComplexMatrix& m, Eigen::Index dim_right);

/// Eigenvalues of the Hermitian part, ascending. Throws if the matrix is
/// not Hermitian within tol.
RealVector hermitian_eigenvalues(const ComplexMatrix& m, double tol = kDefaultTol);

}  // namespace qnet
