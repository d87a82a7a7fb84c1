#pragma once

#include <string>
#include <vector>

#include "qnet/matrix.hpp"

namespace qnet {

/// Density operator with validated invariants: Hermitian, unit trace,
/// eigenvalues >= -1e-9.
class QuantumState {
  public:
    QuantumState() : matrix_(ComplexMatrix::Identity(1, 1)) {}
    QuantumState(ComplexMatrix density, double tol = kDefaultTol);

    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    ComplexMatrix matrix_;
};

struct PovmReport {
    double hermiticity_deviation = 0.0;
    double min_eigenvalue = 0.0;        // most negative eigenvalue over elements
    double completeness_deviation = 0.0;  // max-norm of (sum - identity)
    bool ok(double tol = kDefaultTol) const {
        return hermiticity_deviation <= tol && min_eigenvalue >= -tol &&
               completeness_deviation <= tol;
    }
};

/// Outcome-labelled POVM on a stated dimension.
struct Povm {
    Eigen::Index dim = 0;
    std::vector<ComplexMatrix> elements;
    std::vector<std::string> labels;  // optional, parallel to elements
};

/// Rank-1 projector onto cos(theta)|0> + sin(theta)|1>.
ComplexMatrix projector(double theta);

/// (|01> - |10>)/sqrt(2) as a density operator.
QuantumState singlet();

/// (1-nu) |psi-><psi-| + nu I/4.
QuantumState werner(double nu);

/// Hermiticity, positivity and completeness report; never throws.
PovmReport validate_povm(const Povm& p);

/// Purification of rho on a dim^2 space; the ancilla has the same dimension
/// as the input and the partial trace over it returns rho.
QuantumState purify(const QuantumState& rho);

/// Purification as a dim x dim amplitude matrix psi[s][e] (system index s,
/// ancilla index e); equals sqrt(rho) in the computational basis.
ComplexMatrix purification_amplitudes(const QuantumState& rho);

}  // namespace qnet
