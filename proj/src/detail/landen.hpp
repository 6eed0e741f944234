#pragma once

#include <array>
#include <cmath>

#include "flatring/elliptic.hpp"

namespace flatring::detail {

// Descending Gauss/Landen sequence for a fixed complementary parameter k'^2.
// Shared by the scalar and vector Jacobi kernels so both walk the same table.
struct LandenTable {
    std::array<double, 16> mean{};
    std::array<double, 16> geo{};
    int last = 0;
    double scale = 1.0;  // AGM(1, k'), multiplies the reduced argument
};

inline LandenTable make_landen_table(double kc2) {
    constexpr double kAgmTol = 1e-8;  // quadratic convergence squares this
    LandenTable t;
    double a = 1.0;
    double emc = kc2;
    double c = 1.0;
    for (int i = 0; i < 16; ++i) {
        t.last = i;
        t.mean[i] = a;
        emc = std::sqrt(emc);
        t.geo[i] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= kAgmTol * a) break;
        emc *= a;
        a = c;
    }
    t.scale = c;
    return t;
}

// (sn, cn, dn)(u) for 0 <= u <= K/2 given sin and cos of u * table.scale.
inline JacobiTriple landen_ascend(const LandenTable& t, double s, double co) {
    if (s == 0.0) return {0.0, co, 1.0};
    double a = co / s;
    double c = t.scale * a;
    double dn = 1.0;
    for (int i = t.last; i >= 0; --i) {
        const double b = t.mean[i];
        a *= c;
        c *= dn;
        dn = (t.geo[i] + a) / (b + a);
        a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    const double sn = s >= 0.0 ? a : -a;
    return {sn, c * sn, dn};
}

inline JacobiTriple landen_core(const LandenTable& t, double u) {
    const double arg = u * t.scale;
    return landen_ascend(t, std::sin(arg), std::cos(arg));
}

// Full-range evaluation: reduction modulo 4K, reflection about K, and the
// quarter-period complement for arguments past K/2.
inline JacobiTriple jacobi_reduced(const LandenTable& t, double u, double K, double kp) {
    const double r = std::remainder(u, 4.0 * K);
    const double sn_sign = r < 0.0 ? -1.0 : 1.0;
    double v = std::abs(r);
    double cn_sign = 1.0;
    if (v > K) {
        v = 2.0 * K - v;
        cn_sign = -1.0;
    }
    JacobiTriple out;
    if (v > 0.5 * K) {
        const JacobiTriple c = landen_core(t, K - v);
        out = {c.cn / c.dn, kp * c.sn / c.dn, kp / c.dn};
    } else {
        out = landen_core(t, v);
    }
    out.sn *= sn_sign;
    out.cn *= cn_sign;
    return out;
}

}  // namespace flatring::detail
