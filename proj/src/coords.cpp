#include "flatring/coords.hpp"

#include <boost/math/special_functions/ellint_rf.hpp>
#include <cmath>
#include <numbers>

#include "flatring/error.hpp"

namespace flatring {

namespace {

constexpr double kCutGuard = 1e-10;

double rf(double x, double y, double z) { return boost::math::ellint_rf(x, y, z); }

// First-quadrant (s, t, K' - t) of the meridian point (R, z) with z >= 0.
struct QuadrantCoords {
    double s;
    double t;
    double tau_c;
};

QuadrantCoords invert_first_quadrant(double R, double z, const Modulus& m) {
    const double k = m.k();
    const double a = 1.0 / (k * k);
    const AlgebraicFlatRing alg = cartesian_to_algebraic(CartesianPoint{R, 0.0, z}, a);
    const double r2 = R * R + z * z;
    const double four_x2 = 4.0 * R * R;

    // rho = sn^2(s0), with the complements from the factored forms of F(1), F(a).
    const double rho = alg.rho;
    const double one_minus_rho = (a - 1.0) * (r2 - 1.0) * (r2 - 1.0) / (four_x2 * (1.0 - alg.mu));
    const double a_minus_rho = a * (a - 1.0) * (r2 + 1.0) * (r2 + 1.0) / (four_x2 * (a - alg.mu));
    const double dn2 = k * k * a_minus_rho;
    const double s0 = std::sqrt(rho) * rf(one_minus_rho, dn2, 1.0);
    const double s = r2 > 1.0 ? 2.0 * m.quarter_K() - s0 : s0;

    // mu = -sc^2(t, k'); the shorter of t and K' - t is computed directly.
    const double u = -alg.mu;
    const double Kp = m.quarter_Kp();
    if (u <= 1.0 / k) {
        const double t = std::sqrt(u) * rf(1.0, 1.0 + k * k * u, 1.0 + u);
        return {s, t, Kp - t};
    }
    const double v2 = 1.0 / (k * k * u);
    const double tau_c = std::sqrt(v2) * rf(1.0, 1.0 + k * k * v2, 1.0 + v2);
    return {s, Kp - tau_c, tau_c};
}

FlatRingPoint make_point(const QuadrantCoords& c, double z, double phi, const Modulus& m, Variant variant) {
    FlatRingPoint p{c.s, c.t, phi, m, variant, c.tau_c};
    if (z < 0.0) {
        switch (variant) {
            case Variant::V1: p.s = -c.s; break;
            case Variant::V2: p.t = -c.t; break;
            case Variant::V3: p.s = 4.0 * m.quarter_K() - c.s; break;
        }
    }
    return p;
}

}  // namespace

FlatRingPoint FlatRingPoint::from_st(double s, double t, double phi, const Modulus& m, Variant v) {
    const double tau_c = m.quarter_Kp() - std::abs(t);
    if (!(tau_c > 0.0)) throw DomainError("flat-ring point: |t| must be below K'");
    return FlatRingPoint{s, t, phi, m, v, tau_c};
}

FlatRingPoint FlatRingPoint::from_s_tau(double s, double tau_c, double phi, const Modulus& m, Variant v) {
    if (!(tau_c > 0.0) || !(tau_c <= m.quarter_Kp())) throw DomainError("flat-ring point: K' - t must lie in (0, K']");
    return FlatRingPoint{s, m.quarter_Kp() - tau_c, phi, m, v, tau_c};
}

double cylindrical_radius(const CartesianPoint& q) { return std::hypot(q.x, q.y); }

double cut_radius(const Modulus& m) { return (1.0 - m.k()) / m.k_prime(); }

CartesianPoint algebraic_to_cartesian(const AlgebraicFlatRing& p, Quadrant quadrant) {
    if (!(p.a > 1.0) || !(p.mu < 0.0) || !(p.rho > 0.0) || !(p.rho < 1.0)) {
        throw DomainError("algebraic flat-ring coordinates require mu < 0 < rho < 1 and a > 1");
    }
    const double outer_root = std::sqrt((p.a - p.mu) * (p.a - p.rho) / (p.a * (p.a - 1.0)));
    double inner_root = std::sqrt((1.0 - p.mu) * (1.0 - p.rho) / (p.a - 1.0));
    double z_root = std::sqrt(-p.mu * p.rho / p.a);
    if (quadrant == Quadrant::OuterUpper || quadrant == Quadrant::OuterLower) inner_root = -inner_root;
    if (quadrant == Quadrant::OuterLower || quadrant == Quadrant::InnerLower) z_root = -z_root;
    const double T = outer_root + inner_root;
    return {std::cos(p.phi) / T, std::sin(p.phi) / T, z_root / T};
}

Quadrant quadrant_of(const CartesianPoint& q) {
    const double r2 = q.x * q.x + q.y * q.y + q.z * q.z;
    const bool outer = r2 > 1.0;
    if (q.z < 0.0) return outer ? Quadrant::OuterLower : Quadrant::InnerLower;
    return outer ? Quadrant::OuterUpper : Quadrant::InnerUpper;
}

AlgebraicFlatRing cartesian_to_algebraic(const CartesianPoint& q, double a) {
    if (!(a > 1.0)) throw DomainError("cartesian_to_algebraic requires a > 1");
    const double R = cylindrical_radius(q);
    if (!(R > 0.0)) throw DomainError("cartesian_to_algebraic: point on the z-axis");
    const double r2 = R * R + q.z * q.z;
    const double four_x2 = 4.0 * R * R;
    const double A = (r2 + 1.0) * (r2 + 1.0);
    const double B = (r2 - 1.0) * (r2 - 1.0);
    const double C = 4.0 * q.z * q.z;
    // F(tau) / (4 R^2) = tau^2 - sum tau + product, with F(0) <= 0 < F(1) away from the circle.
    const double sum = (A - a * B - (1.0 + a) * C) / four_x2;
    const double product = -a * q.z * q.z / (R * R);
    const double root = std::sqrt(sum * sum - 4.0 * product);
    double mu;
    double rho;
    if (sum >= 0.0) {
        rho = 0.5 * (sum + root);
        mu = rho > 0.0 ? product / rho : 0.0;
    } else {
        mu = 0.5 * (sum - root);
        rho = product / mu;
    }
    return {mu, rho, std::atan2(q.y, q.x), a};
}

double coordline_residual(double x, double z, double a, double tau) {
    const double r2 = x * x + z * z;
    return (r2 + 1.0) * (r2 + 1.0) / (tau - a) - (r2 - 1.0) * (r2 - 1.0) / (tau - 1.0) - 4.0 * z * z / tau;
}

FlatRingJacobi flatring_jacobi(const FlatRingPoint& p) {
    const Modulus comp = p.modulus.complement();
    const double at = std::abs(p.t);
    JacobiTriple jt = p.tau_c < at ? jacobi_complement(p.tau_c, comp) : jacobi_real(at, comp);
    if (p.t < 0.0) jt.sn = -jt.sn;
    return {jacobi_real(p.s, p.modulus), jt};
}

CartesianPoint flatring_to_cartesian(const FlatRingPoint& p) {
    const FlatRingJacobi j = flatring_jacobi(p);
    const double k = p.modulus.k();
    const double kp = p.modulus.k_prime();
    const double D = j.s.dn * j.t.dn + k * j.s.cn;
    if (!(D > 0.0) || !(j.t.cn > 0.0)) throw PoleError("flat-ring point maps to infinity");
    const double R = kp * j.t.cn / D;
    const double z = k * kp * j.s.sn * j.t.sn / D;
    return {R * std::cos(p.phi), R * std::sin(p.phi), z};
}

FlatRingPoint cartesian_to_flatring(const CartesianPoint& q, const Modulus& m, Variant variant) {
    const double R = cylindrical_radius(q);
    if (!(R > 0.0)) throw DomainError("cartesian_to_flatring: point on the z-axis");
    const double b = cut_radius(m);
    if (std::abs(q.z) <= kCutGuard) {
        bool on_cut = false;
        switch (variant) {
            case Variant::V1: on_cut = R >= b - kCutGuard; break;
            case Variant::V2: on_cut = R <= b + kCutGuard || R >= 1.0 / b - kCutGuard; break;
            case Variant::V3: on_cut = R <= 1.0 / b + kCutGuard; break;
        }
        if (on_cut) throw DomainError("cartesian_to_flatring: point lies on the coordinate cut");
    }
    const QuadrantCoords c = invert_first_quadrant(R, std::abs(q.z), m);
    return make_point(c, q.z, std::atan2(q.y, q.x), m, variant);
}

FlatRingPoint locate_lenient(const CartesianPoint& q, const Modulus& m) {
    const double R = cylindrical_radius(q);
    if (!(R > 0.0)) throw DomainError("locate_lenient: point on the z-axis");
    const QuadrantCoords c = invert_first_quadrant(R, std::abs(q.z), m);
    return make_point(c, q.z, std::atan2(q.y, q.x), m, Variant::V1);
}

double coordinate_surface_residual(const CartesianPoint& q, const Modulus& m, CoordinateSurface surface) {
    const double k = m.k();
    const double r2 = q.x * q.x + q.y * q.y + q.z * q.z;
    const double plus = (r2 + 1.0) * (r2 + 1.0);
    const double minus = (r2 - 1.0) * (r2 - 1.0);
    const double z2 = q.z * q.z;
    if (surface.kind == CoordinateSurface::Kind::S) {
        const JacobiTriple j = jacobi_real(surface.value, m);
        const double sn2 = j.sn * j.sn, cn2 = j.cn * j.cn, dn2 = j.dn * j.dn;
        return (k * k * sn2 * cn2 * plus - sn2 * dn2 * minus + 4.0 * z2 * cn2 * dn2) / plus;
    }
    const JacobiTriple j = jacobi_real(surface.value, m.complement());
    const double sn2 = j.sn * j.sn, dn2 = j.dn * j.dn;
    return (k * k * sn2 * plus - sn2 * dn2 * minus - 4.0 * z2 * dn2) / plus;
}

MetricCoefficients metric_h(const FlatRingPoint& p) {
    const FlatRingJacobi j = flatring_jacobi(p);
    const double k = p.modulus.k();
    const double kp = p.modulus.k_prime();
    const double D = j.s.dn * j.t.dn + k * j.s.cn;
    const double a = j.s.sn * j.t.cn;
    const double h = k * kp * std::sqrt(a * a + j.t.sn * j.t.sn) / D;
    return {h, h, kp * j.t.cn / D};
}

CartesianPoint toroidal_to_cartesian(const ToroidalPoint& p) {
    if (!(p.tau > 0.0)) throw DomainError("toroidal coordinates require tau > 0");
    const double d = std::cosh(p.tau) - std::cos(p.psi);
    const double R = std::sinh(p.tau) / d;
    return {R * std::cos(p.phi), R * std::sin(p.phi), std::sin(p.psi) / d};
}

ToroidalPoint cartesian_to_toroidal(const CartesianPoint& q) {
    const double R = cylindrical_radius(q);
    if (!(R > 0.0)) throw DomainError("toroidal coordinates: point on the z-axis");
    const double d2 = (R - 1.0) * (R - 1.0) + q.z * q.z;
    if (!(d2 > 0.0)) throw DomainError("toroidal coordinates: point on the unit circle");
    const double tau = 0.5 * std::log1p(4.0 * R / d2);
    const double psi = std::atan2(2.0 * q.z, R * R + q.z * q.z - 1.0);
    return {tau, psi, std::atan2(q.y, q.x)};
}

double chi_cylindrical(double R, double z, double R_star, double z_star) {
    if (!(R > 0.0) || !(R_star > 0.0)) throw DomainError("chi: point on the z-axis");
    const double dz = z - z_star;
    return (R * R + R_star * R_star + dz * dz) / (2.0 * R * R_star);
}

double chi_flatring(const FlatRingPoint& p, const FlatRingPoint& q) {
    const FlatRingJacobi a = flatring_jacobi(p);
    const FlatRingJacobi b = flatring_jacobi(q);
    const double k2 = p.modulus.k() * p.modulus.k();
    const double kp2 = p.modulus.k_prime() * p.modulus.k_prime();
    const double num = -k2 * a.s.sn * b.s.sn * a.t.sn * b.t.sn - (k2 / kp2) * a.s.cn * b.s.cn +
                       a.s.dn * b.s.dn * a.t.dn * b.t.dn / kp2;
    const double den = a.t.cn * b.t.cn;
    if (!(den > 0.0)) throw DomainError("chi: point on the z-axis");
    return num / den;
}

}  // namespace flatring
