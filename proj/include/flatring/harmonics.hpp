#pragma once

#include <complex>
#include <span>
#include <vector>

#include "flatring/coords.hpp"
#include "flatring/lame.hpp"

namespace flatring {

// Internal (G) and external (H) flat-ring harmonics, cosine- (Ec) and
// sine-type (Es).
enum class HarmonicKind { Gc, Gs, Hc, Hs };

struct HarmonicIndex {
    int m;            // azimuthal order; nu = |m| - 1/2
    int superscript;  // Ec superscript n >= 0, Es superscript n + 1 >= 1
    HarmonicKind kind;
};

struct Truncation {
    int m_max;
    int n_max;
};

struct ExpansionResult {
    double value;
    double tail_estimate;
    // Envelope of each n-shell: sum over m of |W(t) F(t*)| for both kinds.
    // The real-axis factors are bounded independently of n, so geometric decay
    // of this sequence is the decay of the series.
    std::vector<double> shell_envelope;
    // Signed contribution of each n-shell to value.
    std::vector<double> shell_value;
};

// Harmonics with odd Lame factors carry a factor i (internal) or -i
// (external) relative to the real representatives, so values are complex.
// Evaluation uses variant-1 coordinates and is continuous across the cuts.
std::complex<double> internal_harmonic(const LameTable& table, HarmonicIndex idx, const CartesianPoint& q);
std::complex<double> external_harmonic(const LameTable& table, HarmonicIndex idx, const CartesianPoint& q);

// Distance from q to the set where the harmonic kind is not smooth: the
// z-axis for internal harmonics, the closed annulus b <= R <= 1/b, z = 0 for
// external ones.
double singular_set_distance(HarmonicKind kind, const Modulus& modulus, const CartesianPoint& q);

// Truncated flat-ring expansion of 1 / |r - r*|. Requires t(r) < t(r*) and
// both points off the variant-1 cuts; the table must cover the truncation.
ExpansionResult green_expansion(const LameTable& table, const CartesianPoint& r, const CartesianPoint& r_star,
                                Truncation tr);

// Summand of the toroidal expansion for one (m, n) with n >= 0, combining the
// n and -n terms: (1/pi) (cosh tau - cos psi)^(1/2) (cosh tau* - cos psi*)^(1/2)
// eps_n cos(n (psi - psi*)) (-1)^m Gamma(n-m+1/2)/Gamma(n+m+1/2) Q^m P^m.
double toroidal_summand(int m, int n, const ToroidalPoint& p, const ToroidalPoint& p_star);

// Truncated toroidal expansion of 1 / |r - r*|; requires tau(r) > tau(r*).
ExpansionResult toroidal_green_expansion(const CartesianPoint& r, const CartesianPoint& r_star, Truncation tr);

// m-th azimuthal Fourier coefficient of 1 / |r - r*|: Q_{|m|-1/2}(chi) / (pi sqrt(R R*)).
double azimuthal_coefficient(int m, const CartesianPoint& r, const CartesianPoint& r_star);

struct SeriesSum {
    double value;
    std::vector<double> terms;  // per n
};

// (pi/2) sum_n [Ec Ec W F + Es Es W F] for nu = m - 1/2, which converges to
// Q_{m-1/2}(chi). Requires 0 < t < t* < K'.
SeriesSum addition_theorem_rhs(const Modulus& modulus, int m, double s, double s_star, double t, double t_star,
                               int n_max);
double addition_theorem_lhs(const Modulus& modulus, int m, double s, double s_star, double t, double t_star);

struct IntegralRelation {
    double lhs;  // Gauss-Legendre integral of Q_nu(chi(s)) E(s) over [-2K, 2K]
    double rhs;  // 2 pi E(s*) W(t) F(t*)
};

// Integral relation for one Lame function of real degree nu >= -1/2.
IntegralRelation integral_relation_check(const Modulus& modulus, LameKind kind, double nu, int superscript,
                                         double s_star, double t, double t_star, int nodes = 512);

struct LimitRow {
    double k;
    double flatring;  // A_{m,n}
    double toroidal;  // B_{m,n}
    double difference;
};

// Flat-ring summand A_{m,n} at s = 2K - psi, t = K' - tau (and starred).
double flatring_summand(int m, int n, double tau, double tau_star, double psi, double psi_star, const Modulus& modulus);

// A_{m,n} against its toroidal limit B_{m,n} along a sequence of moduli.
std::vector<LimitRow> limit_comparison(int m, int n, double tau, double tau_star, double psi, double psi_star,
                                       std::span<const double> k_sequence);

}  // namespace flatring
