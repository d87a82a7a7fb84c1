#include "qnet/witness.hpp"

#include <cmath>

namespace qnet {

CorrelatorSet correlators(const Behavior& p) {
    CorrelatorSet s{};
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c) {
                        const double v = p.at(x, z, a, b, c);
                        const int sa = 1 - 2 * a, sb = 1 - 2 * b, sc = 1 - 2 * c;
                        s.tri[x][z] += sa * sb * sc * v;
                        // marginals averaged over the dropped party's settings
                        s.ab[x] += sa * sb * v / 2.0;
                        s.bc[z] += sb * sc * v / 2.0;
                        s.a[x] += sa * v / 2.0;
                        s.c[z] += sc * v / 2.0;
                        s.b += sb * v / 4.0;
                    }
    return s;
}

WitnessResult fnn_values(const Behavior& b) {
    const CorrelatorSet s = correlators(b);
    WitnessResult r;
    r.fnn1 = -s.tri[0][1] - s.ab[1] + s.c[1] * (s.ab[0] + s.tri[1][1] + s.c[1]);
    r.fnn2 = -s.tri[0][1] + s.bc[0] + s.a[0] * (s.bc[1] - s.tri[0][0] + s.a[0]);
    r.margin1 = r.fnn1 - 1.0;
    r.margin2 = r.fnn2 - 1.0;
    r.violated1 = r.fnn1 > 1.0;
    r.violated2 = r.fnn2 > 1.0;
    r.simultaneous = r.violated1 && r.violated2;
    return r;
}

FactorizationReport check_oneway_factorization(const Strategy& s) {
    if (s.central.mode != CentralMode::feedback)
        throw std::invalid_argument("check_oneway_factorization: feedback mode required");
    const double p = s.central.p;
    if (p != 0.0 && p != 1.0)
        throw std::invalid_argument("check_oneway_factorization: p must be 0 or 1");
    if (s.central.alpha0 != 1.0 || s.central.alpha1 != 1.0)
        throw std::invalid_argument("check_oneway_factorization: alpha0 = alpha1 = 1 required");

    const Behavior direct = behavior(s);
    const double ax[2] = {s.angles.a1, s.angles.a2};
    const double cz[2] = {s.angles.c1, s.angles.c2};

    auto pair_prob = [](const ComplexMatrix& rho, const ComplexMatrix& left,
                        const ComplexMatrix& right) {
        return (rho.transpose().cwiseProduct(tensor(left, right))).sum().real();
    };

    FactorizationReport rep;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c) {
                        double sum = 0.0;
                        for (int b0 = 0; b0 < 2; ++b0) {
                            const int b1 = b ^ b0;
                            double left, right;
                            if (p == 1.0) {
                                // B0 measured first, outcome feeds B1
                                left = pair_prob(s.rho1.matrix(), outer_element(ax[x], a),
                                                 outer_element(s.angles.b0_free, b0));
                                right = pair_prob(s.rho2.matrix(),
                                                  outer_element(s.angles.b1_given_b0[b0], b1),
                                                  outer_element(cz[z], c));
                            } else {
                                // B1 measured first, outcome feeds B0
                                right = pair_prob(s.rho2.matrix(),
                                                  outer_element(s.angles.b1_free, b1),
                                                  outer_element(cz[z], c));
                                left = pair_prob(s.rho1.matrix(), outer_element(ax[x], a),
                                                 outer_element(s.angles.b0_given_b1[b1], b0));
                            }
                            sum += left * right;
                        }
                        rep.max_deviation = std::max(rep.max_deviation,
                                                     std::abs(sum - direct.at(x, z, a, b, c)));
                    }
    return rep;
}

}  // namespace qnet
