#include "qnet/bilocal.hpp"

#include <cmath>
#include <numbers>

namespace qnet {

namespace {

ComplexMatrix measurement_element(double theta, int outcome) {
    ComplexMatrix p = projector(theta);
    if (outcome == 0) return p;
    return ComplexMatrix::Identity(2, 2) - p;
}

}  // namespace

ComplexMatrix outer_element(double theta, int outcome) {
    return measurement_element(theta, outcome);
}

std::array<double, 10> AngleSet::to_array() const {
    return {a1, a2, b0_free, b1_given_b0[0], b1_given_b0[1],
            b1_free, b0_given_b1[0], b0_given_b1[1], c1, c2};
}

AngleSet AngleSet::from_array(const std::array<double, 10>& v) {
    AngleSet s;
    s.a1 = v[0]; s.a2 = v[1];
    s.b0_free = v[2]; s.b1_given_b0 = {v[3], v[4]};
    s.b1_free = v[5]; s.b0_given_b1 = {v[6], v[7]};
    s.c1 = v[8]; s.c2 = v[9];
    return s;
}

bool AngleSet::all_finite() const {
    for (double v : to_array())
        if (!std::isfinite(v)) return false;
    return true;
}

AngleSet optimal_separable_angles() {
    // Built from the rational pi-fraction 78/183 = arccos(-2/sqrt(5))/pi to
    // 4 decimals; the preset evaluates to min(FNN1, FNN2) > 1.1180 on singlets.
    const double pi = std::numbers::pi;
    const double u = 78.0 / 183.0 * pi;
    AngleSet s;
    s.a1 = 0.0;
    s.a2 = pi / 4.0;
    s.b0_free = 0.0;
    s.b1_given_b0 = {u, -u};
    s.b1_free = 0.0;
    s.b0_given_b1 = {u, -u};
    s.c1 = -pi / 4.0;
    s.c2 = 0.0;
    return s;
}

CentralConfig CentralConfig::feedback(double p, double alpha0, double alpha1) {
    CentralConfig c;
    c.mode = CentralMode::feedback;
    c.p = p; c.alpha0 = alpha0; c.alpha1 = alpha1;
    return c;
}

CentralConfig CentralConfig::explicit_binary(Povm povm) {
    CentralConfig c;
    c.mode = CentralMode::explicit_povm;
    c.povm = std::move(povm);
    return c;
}

Povm feedback_povm_fine(const AngleSet& angles, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("feedback_povm_fine: p outside [0,1]");
    if (!angles.all_finite()) throw std::invalid_argument("feedback_povm_fine: non-finite angle");
    Povm out;
    out.dim = 4;
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
            ComplexMatrix forward = tensor(measurement_element(angles.b0_free, b0),
                                           measurement_element(angles.b1_given_b0[b0], b1));
            ComplexMatrix backward = tensor(measurement_element(angles.b0_given_b1[b1], b0),
                                            measurement_element(angles.b1_free, b1));
            out.elements.push_back(p * forward + (1.0 - p) * backward);
            out.labels.push_back(std::to_string(b0) + std::to_string(b1));
        }
    return out;
}

Povm feedback_povm_coarse(const AngleSet& angles, const CentralConfig& cfg) {
    if (cfg.mode != CentralMode::feedback)
        throw std::invalid_argument("feedback_povm_coarse: config not in feedback mode");
    if (!(cfg.alpha0 >= 0.0 && cfg.alpha0 <= 1.0 && cfg.alpha1 >= 0.0 && cfg.alpha1 <= 1.0))
        throw std::invalid_argument("feedback_povm_coarse: alpha outside [0,1]");
    const Povm fine = feedback_povm_fine(angles, cfg.p);
    const double alpha[2] = {cfg.alpha0, cfg.alpha1};
    const double damp = (cfg.alpha0 + cfg.alpha1) / 2.0;
    const double scale = 2.0 - damp;  // sum of the noisy elements is scale * I
    Povm out;
    out.dim = 4;
    out.elements = {ComplexMatrix::Zero(4, 4), ComplexMatrix::Zero(4, 4)};
    out.labels = {"0", "1"};
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
            const int b = b0 ^ b1;
            out.elements[b] += damp * fine.elements[b0 * 2 + b1] +
                               0.5 * (1.0 - alpha[b]) * ComplexMatrix::Identity(4, 4);
        }
    out.elements[0] /= scale;
    out.elements[1] /= scale;
    return out;
}

Povm central_povm(const Strategy& s) {
    if (s.central.mode == CentralMode::feedback)
        return feedback_povm_coarse(s.angles, s.central);
    if (!s.central.povm || s.central.povm->dim != 4 || s.central.povm->elements.size() != 2)
        throw std::invalid_argument("central_povm: explicit mode needs a binary POVM on dim 4");
    return *s.central.povm;
}

namespace {

// Reduced central-node state for outer outcome operators:
//  sigma = Tr_A[(Aop (x) I2) rho1],  tau = Tr_C[(I2 (x) Cop) rho2].
ComplexMatrix reduce_alice(const ComplexMatrix& rho1, const ComplexMatrix& a_op) {
    ComplexMatrix m = tensor(a_op, ComplexMatrix::Identity(2, 2)) * rho1;
    return partial_trace_left(m, 2);
}

ComplexMatrix reduce_carol(const ComplexMatrix& rho2, const ComplexMatrix& c_op) {
    ComplexMatrix m = tensor(ComplexMatrix::Identity(2, 2), c_op) * rho2;
    return partial_trace_right(m, 2);
}

}  // namespace

Behavior behavior(const Strategy& s) {
    if (s.rho1.dim() != 4 || s.rho2.dim() != 4)
        throw std::runtime_error("behavior: sources must be two-qubit states");
    const Povm pi = central_povm(s);
    const double ax[2] = {s.angles.a1, s.angles.a2};
    const double cz[2] = {s.angles.c1, s.angles.c2};
    Behavior out;
    for (int x = 0; x < 2; ++x) {
        ComplexMatrix sig[2];
        for (int a = 0; a < 2; ++a)
            sig[a] = reduce_alice(s.rho1.matrix(), measurement_element(ax[x], a));
        for (int z = 0; z < 2; ++z) {
            ComplexMatrix tau[2];
            for (int c = 0; c < 2; ++c)
                tau[c] = reduce_carol(s.rho2.matrix(), measurement_element(cz[z], c));
            for (int a = 0; a < 2; ++a)
                for (int c = 0; c < 2; ++c) {
                    ComplexMatrix st = tensor(sig[a], tau[c]);
                    for (int b = 0; b < 2; ++b)
                        out.at(x, z, a, b, c) = (st.transpose().cwiseProduct(pi.elements[b])).sum().real();
                }
        }
    }
    return out;
}

double Behavior::normalization_deviation() const {
    double dev = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            double s = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c) s += at(x, z, a, b, c);
            dev = std::max(dev, std::abs(s - 1.0));
        }
    return dev;
}

double Behavior::nosignaling_deviation() const {
    double dev = 0.0;
    // sum over a independent of x
    for (int z = 0; z < 2; ++z)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                double s0 = at(0, z, 0, b, c) + at(0, z, 1, b, c);
                double s1 = at(1, z, 0, b, c) + at(1, z, 1, b, c);
                dev = std::max(dev, std::abs(s0 - s1));
            }
    // sum over c independent of z
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double s0 = at(x, 0, a, b, 0) + at(x, 0, a, b, 1);
                double s1 = at(x, 1, a, b, 0) + at(x, 1, a, b, 1);
                dev = std::max(dev, std::abs(s0 - s1));
            }
    return dev;
}

double Behavior::min_entry() const {
    double m = 1.0;
    for (double v : table_) m = std::min(m, v);
    return m;
}

void Behavior::validate(double tol) const {
    if (min_entry() < -1e-12)
        throw std::invalid_argument("Behavior: negative entry beyond tolerance");
    if (normalization_deviation() > tol)
        throw std::invalid_argument("Behavior: (x,z)-slice not normalized");
    if (nosignaling_deviation() > tol)
        throw std::invalid_argument("Behavior: no-signaling violated");
}

Behavior Behavior::clipped() const {
    Behavior b = *this;
    for (double& v : b.table_) v = std::clamp(v, 0.0, 1.0);
    return b;
}

double Behavior::marginal_a(int x, int a) const {
    double s = 0.0;
    for (int z = 0; z < 2; ++z)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) s += at(x, z, a, b, c);
    return s / 2.0;
}

double Behavior::marginal_c(int z, int c) const {
    double s = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += at(x, z, a, b, c);
    return s / 2.0;
}

Behavior Behavior::uniform() {
    Behavior b;
    for (double& v : b.table_) v = 1.0 / 8.0;
    return b;
}

PurifiedSources purify_sources(const Strategy& s) {
    PurifiedSources out;
    out.psi1 = purification_amplitudes(s.rho1);
    out.psi2 = purification_amplitudes(s.rho2);
    return out;
}

std::size_t EveMeasurement::outcome_count() const {
    if (kind == Kind::joint) return joint_elements.size();
    return left_elements.size() * right_elements.size();
}

JointTable behavior_with_eavesdroppers(const Strategy& s, const PurifiedSources& src,
                                       const EveMeasurement& eve, int x, int z) {
    const Povm pi = central_povm(s);
    const double ax[2] = {s.angles.a1, s.angles.a2};
    const double cz[2] = {s.angles.c1, s.angles.c2};

    std::vector<ComplexMatrix> eve_joint;
    int ne = 1, nf = 1;
    if (eve.kind == EveMeasurement::Kind::joint) {
        eve_joint = eve.joint_elements;
        ne = static_cast<int>(eve.joint_elements.size());
        for (const auto& el : eve_joint)
            if (el.rows() != 16 || el.cols() != 16)
                throw std::invalid_argument("behavior_with_eavesdroppers: joint element not 16x16");
    } else {
        ne = static_cast<int>(eve.left_elements.size());
        nf = static_cast<int>(eve.right_elements.size());
        for (const auto& el : eve.left_elements)
            if (el.rows() != 4 || el.cols() != 4)
                throw std::invalid_argument("behavior_with_eavesdroppers: E element not 4x4");
        for (const auto& el : eve.right_elements)
            if (el.rows() != 4 || el.cols() != 4)
                throw std::invalid_argument("behavior_with_eavesdroppers: F element not 4x4");
        for (const auto& e : eve.left_elements)
            for (const auto& f : eve.right_elements)
                eve_joint.push_back(tensor(e, f));
    }
    {
        Povm check{16, eve_joint, {}};
        PovmReport rep = validate_povm(check);
        if (!rep.ok(1e-7))
            throw std::invalid_argument("behavior_with_eavesdroppers: eavesdropper POVM invalid");
    }

    // amplitude tensors psi1[i][j][k] (A,B0,E0), psi2[l][m][n] (B1,C,E1);
    // psiX(s, anc) with s = 2*first + second
    auto psi1 = [&](int i, int j, int k) { return src.psi1(i * 2 + j, k); };
    auto psi2 = [&](int l, int m, int n) { return src.psi2(l * 2 + m, n); };

    JointTable out;
    out.ne = ne; out.nf = nf;
    out.p.assign(8 * ne * nf, 0.0);

    for (int a = 0; a < 2; ++a) {
        ComplexMatrix a_op = measurement_element(ax[x], a);
        // g1[(j,J)][(k,K)] = sum_{i,I} psi1[i,j,k] conj(psi1[I,J,K]) A[I,i]
        Eigen::Matrix<Complex, 4, 16> g1;
        for (int j = 0; j < 2; ++j)
            for (int J = 0; J < 2; ++J)
                for (int k = 0; k < 4; ++k)
                    for (int K = 0; K < 4; ++K) {
                        Complex v = 0.0;
                        for (int i = 0; i < 2; ++i)
                            for (int I = 0; I < 2; ++I)
                                v += psi1(i, j, k) * std::conj(psi1(I, J, K)) * a_op(I, i);
                        g1(j * 2 + J, k * 4 + K) = v;
                    }
        for (int c = 0; c < 2; ++c) {
            ComplexMatrix c_op = measurement_element(cz[z], c);
            Eigen::Matrix<Complex, 4, 16> g2;
            for (int l = 0; l < 2; ++l)
                for (int L = 0; L < 2; ++L)
                    for (int n = 0; n < 4; ++n)
                        for (int N = 0; N < 4; ++N) {
                            Complex v = 0.0;
                            for (int m = 0; m < 2; ++m)
                                for (int M = 0; M < 2; ++M)
                                    v += psi2(l, m, n) * std::conj(psi2(L, M, N)) * c_op(M, m);
                            g2(l * 2 + L, n * 4 + N) = v;
                        }
            for (int b = 0; b < 2; ++b)
                for (int e = 0; e < ne * nf; ++e) {
                    const ComplexMatrix& eop = eve_joint[e];
                    Complex total = 0.0;
                    for (int j = 0; j < 2; ++j)
                        for (int J = 0; J < 2; ++J)
                            for (int l = 0; l < 2; ++l)
                                for (int L = 0; L < 2; ++L) {
                                    const Complex pib = pi.elements[b](J * 2 + L, j * 2 + l);
                                    if (pib == Complex(0.0, 0.0)) continue;
                                    Complex inner = 0.0;
                                    for (int k = 0; k < 4; ++k)
                                        for (int K = 0; K < 4; ++K)
                                            for (int n = 0; n < 4; ++n)
                                                for (int N = 0; N < 4; ++N)
                                                    inner += g1(j * 2 + J, k * 4 + K) *
                                                             g2(l * 2 + L, n * 4 + N) *
                                                             eop(K * 4 + N, k * 4 + n);
                                    total += pib * inner;
                                }
                    out.at(a, b, c, e) = total.real();
                }
        }
    }
    return out;
}

}  // namespace qnet
