#include "qnet/qstate.hpp"

#include <cmath>

namespace qnet {

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix partial_trace_left(const ComplexMatrix& m, Eigen::Index dim_left) {
    if (m.rows() != m.cols()) throw std::invalid_argument("partial_trace_left: matrix not square");
    if (dim_left <= 0 || m.rows() % dim_left != 0)
        throw std::invalid_argument("partial_trace_left: dimension mismatch");
    const Eigen::Index dr = m.rows() / dim_left;
    ComplexMatrix out = ComplexMatrix::Zero(dr, dr);
    for (Eigen::Index k = 0; k < dim_left; ++k)
        out += m.block(k * dr, k * dr, dr, dr);
    return out;
}

ComplexMatrix partial_trace_right(const ComplexMatrix& m, Eigen::Index dim_right) {
    if (m.rows() != m.cols()) throw std::invalid_argument("partial_trace_right: matrix not square");
    if (dim_right <= 0 || m.rows() % dim_right != 0)
        throw std::invalid_argument("partial_trace_right: dimension mismatch");
    const Eigen::Index dl = m.rows() / dim_right;
    ComplexMatrix out = ComplexMatrix::Zero(dl, dl);
    for (Eigen::Index i = 0; i < dl; ++i)
        for (Eigen::Index j = 0; j < dl; ++j) {
            Complex s = 0.0;
            for (Eigen::Index k = 0; k < dim_right; ++k)
                s += m(i * dim_right + k, j * dim_right + k);
            out(i, j) = s;
        }
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
    if (hermiticity_deviation(m) > tol)
        throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

QuantumState::QuantumState(ComplexMatrix density, double tol) : matrix_(std::move(density)) {
    if (matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("QuantumState: matrix not square");
    if (hermiticity_deviation(matrix_) > tol)
        throw std::invalid_argument("QuantumState: matrix not Hermitian within tolerance");
    if (std::abs(matrix_.trace().real() - 1.0) > tol || std::abs(matrix_.trace().imag()) > tol)
        throw std::invalid_argument("QuantumState: trace != 1 within tolerance");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("QuantumState: negative eigenvalue beyond tolerance");
}

ComplexMatrix projector(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("projector: non-finite angle");
    Eigen::Vector2cd v;
    v << std::cos(theta), std::sin(theta);
    return v * v.adjoint();
}

QuantumState singlet() {
    Eigen::Vector4cd psi;
    psi << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    return QuantumState(psi * psi.adjoint());
}

QuantumState werner(double nu) {
    if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("werner: nu outside [0,1]");
    ComplexMatrix m = (1.0 - nu) * singlet().matrix() +
                      (nu / 4.0) * ComplexMatrix::Identity(4, 4);
    return QuantumState(std::move(m));
}

PovmReport validate_povm(const Povm& p) {
    PovmReport r;
    ComplexMatrix sum = ComplexMatrix::Zero(p.dim, p.dim);
    for (const auto& el : p.elements) {
        r.hermiticity_deviation = std::max(r.hermiticity_deviation, hermiticity_deviation(el));
        ComplexMatrix herm = 0.5 * (el + el.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
        r.min_eigenvalue = std::min(r.min_eigenvalue, es.eigenvalues().minCoeff());
        sum += el;
    }
    r.completeness_deviation = max_abs(sum - ComplexMatrix::Identity(p.dim, p.dim));
    return r;
}

ComplexMatrix purification_amplitudes(const QuantumState& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("purify: input not positive semidefinite");
    RealVector lam = es.eigenvalues().cwiseMax(0.0);
    // sqrt(rho); columns of the amplitude matrix are the ancilla index
    return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

QuantumState purify(const QuantumState& rho) {
    const Eigen::Index d = rho.dim();
    ComplexMatrix amp = purification_amplitudes(rho);
    Eigen::VectorXcd psi(d * d);
    for (Eigen::Index s = 0; s < d; ++s)
        for (Eigen::Index e = 0; e < d; ++e)
            psi(s * d + e) = amp(s, e);
    psi.normalize();  // unit trace input makes this a no-op up to rounding
    return QuantumState(psi * psi.adjoint());
}

}  // namespace qnet
