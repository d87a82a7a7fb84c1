#pragma once

#include <array>
#include <optional>

#include "qnet/qstate.hpp"

namespace qnet {

/// The ten single-qubit projection angles of one network strategy, radians.
/// Central-node conventions: in the B0->B1 feedback direction B0 is measured
/// at b0_free and the outcome selects b1_given_b0[b0]; the B1->B0 direction
/// mirrors this with b1_free and b0_given_b1[b1].
struct AngleSet {
    double a1 = 0.0, a2 = 0.0;                       // Alice settings x=1,2
    double b0_free = 0.0;
    std::array<double, 2> b1_given_b0{0.0, 0.0};
    double b1_free = 0.0;
    std::array<double, 2> b0_given_b1{0.0, 0.0};
    double c1 = 0.0, c2 = 0.0;                       // Carol settings z=1,2

    std::array<double, 10> to_array() const;
    static AngleSet from_array(const std::array<double, 10>& v);
    bool all_finite() const;
};

/// Angle preset reproducing the optimal separable feedback strategy on two
/// singlets (rational multiples of pi; evaluates to FNN1 = FNN2 = sqrt(5)/2).
AngleSet optimal_separable_angles();

enum class CentralMode { feedback, explicit_povm };

struct CentralConfig {
    CentralMode mode = CentralMode::feedback;
    double p = 0.5;        // mixture proportion of the two feedback directions
    double alpha0 = 1.0;   // noise coefficients per coarse outcome
    double alpha1 = 1.0;
    std::optional<Povm> povm;  // explicit mode: binary POVM on dimension 4

    static CentralConfig feedback(double p, double alpha0 = 1.0, double alpha1 = 1.0);
    static CentralConfig explicit_binary(Povm povm);
};

struct Strategy {
    QuantumState rho1;  // A-B0 source
    QuantumState rho2;  // B1-C source
    AngleSet angles;
    CentralConfig central;
};

/// p(a,b,c|x,z) with a,b,c in {0,1}; settings x,z are 0-based here (1,2 in
/// witness notation).
class Behavior {
  public:
    double& at(int x, int z, int a, int b, int c) { return table_[index(x, z, a, b, c)]; }
    double at(int x, int z, int a, int b, int c) const { return table_[index(x, z, a, b, c)]; }

    double normalization_deviation() const;
    double nosignaling_deviation() const;
    double min_entry() const;
    /// Throws std::invalid_argument when an invariant fails.
    void validate(double tol = kDefaultTol) const;
    /// Entries clipped into [0,1]; used on export.
    Behavior clipped() const;

    double marginal_a(int x, int a) const;  // P(a|x)
    double marginal_c(int z, int c) const;  // P(c|z)

    static Behavior uniform();

  private:
    static int index(int x, int z, int a, int b, int c) {
        return (((x * 2 + z) * 2 + a) * 2 + b) * 2 + c;
    }
    std::array<double, 32> table_{};
};

/// Four-outcome double-feedback POVM: element (b0,b1) equals
/// p * M^{B0}_{b0} (x) M^{B1}_{b1|b0} + (1-p) * M^{B0}_{b0|b1} (x) M^{B1}_{b1}.
/// Elements are labelled "b0b1" in order (0,0),(0,1),(1,0),(1,1).
Povm feedback_povm_fine(const AngleSet& angles, double p);

/// Two-outcome noisy feedback POVM: the fine elements are damped per coarse
/// outcome with coefficients alpha0, alpha1, coarse-grained over b0 xor b1 = b
/// and renormalized by the scalar s = 2 - (alpha0+alpha1)/2 so the pair sums
/// to the identity.
Povm feedback_povm_coarse(const AngleSet& angles, const CentralConfig& cfg);

/// Central binary POVM implied by a strategy's config.
Povm central_povm(const Strategy& s);

Behavior behavior(const Strategy& s);

/// Measurement operators for the outer nodes: outcome 0 is the projector at
/// the setting's angle, outcome 1 its complement.
ComplexMatrix outer_element(double theta, int outcome);

// ---------------------------------------------------------------------------
// Extended behaviors with eavesdroppers on the purifying registers.
// Registers are ordered (A, B0, B1, C, E0, E1); E0 and E1 purify the two
// sources and have dimension 4 each.
// ---------------------------------------------------------------------------

struct PurifiedSources {
    // amplitude tensors psi[system][ancilla] reshaped as (2,2,4): [i][j][k]
    ComplexMatrix psi1;  // 4x4 amplitude matrix on (A,B0) x E0
    ComplexMatrix psi2;  // 4x4 amplitude matrix on (B1,C) x E1
};

PurifiedSources purify_sources(const Strategy& s);

struct EveMeasurement {
    enum class Kind { joint, product };
    Kind kind = Kind::joint;
    std::vector<ComplexMatrix> joint_elements;  // 16x16 on (E0,E1)
    std::vector<ComplexMatrix> left_elements;   // 4x4 on E0
    std::vector<ComplexMatrix> right_elements;  // 4x4 on E1
    std::size_t outcome_count() const;
};

/// Joint table p(a,b,c,k|x,z) for one setting pair; k enumerates the
/// eavesdropper outcomes (product kind: k = e * |F| + f).
struct JointTable {
    int ne = 1, nf = 1;
    std::vector<double> p;  // [a][b][c][k], k = ne*nf entries
    double& at(int a, int b, int c, int k) { return p[((a * 2 + b) * 2 + c) * (ne * nf) + k]; }
    double at(int a, int b, int c, int k) const { return p[((a * 2 + b) * 2 + c) * (ne * nf) + k]; }
};

JointTable behavior_with_eavesdroppers(const Strategy& s, const PurifiedSources& src,
                                       const EveMeasurement& eve, int x, int z);

}  // namespace qnet
