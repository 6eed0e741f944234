#include "flatring/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatring/error.hpp"
#include "flatring/legendre.hpp"
#include "flatring/quadrature.hpp"

namespace flatring {

namespace {

using namespace std::complex_literals;

constexpr double kAnnulusGuard = 1e-10;
constexpr double kMaxRatio = 0.99;

LameKind lame_kind(HarmonicKind kind) {
    return kind == HarmonicKind::Gc || kind == HarmonicKind::Hc ? LameKind::Ec : LameKind::Es;
}

void check_index(const HarmonicIndex& idx) {
    if (lame_kind(idx.kind) == LameKind::Es && idx.superscript < 1) {
        throw DomainError("harmonic: sine-type superscript must be at least 1");
    }
    if (idx.superscript < 0) throw DomainError("harmonic: negative superscript");
}

std::complex<double> azimuth(int m, double phi) { return std::polar(1.0, static_cast<double>(m) * phi); }

// Geometric extrapolation of the remainder after the last entry of a
// nonnegative, eventually decaying sequence.
double geometric_tail(const std::vector<double>& seq) {
    if (seq.size() < 2) return seq.empty() ? 0.0 : seq.back();
    const std::size_t last = seq.size() - 1;
    const std::size_t lag = std::min<std::size_t>(4, last);
    const double head = seq[last - lag];
    const double tail = seq[last];
    if (tail == 0.0) return 0.0;
    double ratio = head > 0.0 ? std::pow(tail / head, 1.0 / static_cast<double>(lag)) : kMaxRatio;
    ratio = std::min(ratio, kMaxRatio);
    return tail * ratio / (1.0 - ratio);
}

// Order 0 < t < t* < K' with OrderingError for t >= t*.
void check_imaginary_pair(const Modulus& modulus, double t, double t_star) {
    if (!(t > 0.0) || !(t_star < modulus.quarter_Kp())) throw DomainError("requires 0 < t and t* < K'");
    if (!(t < t_star)) throw OrderingError("requires t < t*");
}

LameSecondKind build(LameKind kind, double nu, int superscript, const Modulus& modulus) {
    return LameSecondKind(solve_eigenpair(family_of(kind, superscript), nu, zeros_of(kind, superscript), modulus));
}

// E(s) E(s*) W(t) F(t*) for one second-kind object.
double quadruple(const LameSecondKind& f, double s, double s_star, double t, double t_star) {
    const LameEigenpair& e = f.base();
    return e(s) * e(s_star) * e.eval_imag(t).value * f.eval_imag(t_star).value;
}

// Toroidal summand without its cos(n (psi - psi*)) factor.
double toroidal_radial(int m, int n, const ToroidalPoint& p, const ToroidalPoint& p_star) {
    if (n < 0) throw DomainError("toroidal_summand: n must be non-negative");
    const double nu = n - 0.5;
    const double order = static_cast<double>(m);
    const double metric =
        std::sqrt((std::cosh(p.tau) - std::cos(p.psi)) * (std::cosh(p_star.tau) - std::cos(p_star.psi)));
    const double eps = n == 0 ? 1.0 : 2.0;
    const double sign = (std::abs(m) % 2 == 0) ? 1.0 : -1.0;
    const double ratio = gamma_ratio(n - order + 0.5, n + order + 0.5);
    const double q = legendre_Q({nu, order}, std::cosh(p.tau));
    const double pp = legendre_P({nu, order}, std::cosh(p_star.tau));
    return metric / std::numbers::pi * eps * sign * ratio * q * pp;
}

}  // namespace

std::complex<double> internal_harmonic(const LameTable& table, HarmonicIndex idx, const CartesianPoint& q) {
    if (idx.kind != HarmonicKind::Gc && idx.kind != HarmonicKind::Gs) {
        throw DomainError("internal_harmonic takes a Gc or Gs index");
    }
    check_index(idx);
    const FlatRingPoint p = locate_lenient(q, table.modulus());
    const LameSecondKind& f = table.get(std::abs(idx.m), lame_kind(idx.kind), idx.superscript);
    const LameEigenpair& e = f.base();
    const double real = e(p.s) * e.eval_imag(p.t).value / std::sqrt(cylindrical_radius(q));
    const std::complex<double> value = e.odd() ? 1i * real : std::complex<double>(real);
    return value * azimuth(idx.m, p.phi);
}

std::complex<double> external_harmonic(const LameTable& table, HarmonicIndex idx, const CartesianPoint& q) {
    if (idx.kind != HarmonicKind::Hc && idx.kind != HarmonicKind::Hs) {
        throw DomainError("external_harmonic takes an Hc or Hs index");
    }
    check_index(idx);
    const Modulus& modulus = table.modulus();
    const double R = cylindrical_radius(q);
    const double b = cut_radius(modulus);
    if (std::abs(q.z) <= kAnnulusGuard && R >= b - kAnnulusGuard && R <= 1.0 / b + kAnnulusGuard) {
        throw DomainError("external_harmonic: point on the closed annulus");
    }
    const FlatRingPoint p = locate_lenient(q, modulus);
    const LameSecondKind& f = table.get(std::abs(idx.m), lame_kind(idx.kind), idx.superscript);
    const LameEigenpair& e = f.base();
    const double real = e(p.s) * f.eval_tau(p.tau_c).value / std::sqrt(R);
    const std::complex<double> value = e.odd() ? -1i * real : std::complex<double>(real);
    return value * azimuth(idx.m, p.phi);
}

double singular_set_distance(HarmonicKind kind, const Modulus& modulus, const CartesianPoint& q) {
    const double R = cylindrical_radius(q);
    if (kind == HarmonicKind::Gc || kind == HarmonicKind::Gs) return R;
    const double b = cut_radius(modulus);
    const double radial_gap = R < b ? b - R : (R > 1.0 / b ? R - 1.0 / b : 0.0);
    return std::hypot(radial_gap, q.z);
}

ExpansionResult green_expansion(const LameTable& table, const CartesianPoint& r, const CartesianPoint& r_star,
                                Truncation tr) {
    if (tr.m_max < 0 || tr.n_max < 0) throw DomainError("green_expansion: negative truncation");
    if (tr.m_max > table.m_max() || tr.n_max > table.n_max()) {
        throw DomainError("green_expansion: truncation exceeds the Lame table");
    }
    const Modulus& modulus = table.modulus();
    const FlatRingPoint p = cartesian_to_flatring(r, modulus, Variant::V1);
    const FlatRingPoint ps = cartesian_to_flatring(r_star, modulus, Variant::V1);
    if (!(p.tau_c > ps.tau_c)) throw OrderingError("green_expansion requires t(r) < t(r*)");

    const double prefactor = 0.5 / std::sqrt(cylindrical_radius(r) * cylindrical_radius(r_star));
    const double dphi = p.phi - ps.phi;
    ExpansionResult out{0.0, 0.0, std::vector<double>(tr.n_max + 1, 0.0), std::vector<double>(tr.n_max + 1, 0.0)};
    std::vector<double> m_envelope(tr.m_max + 1, 0.0);
    for (int am = 0; am <= tr.m_max; ++am) {
        const double weight = am == 0 ? 1.0 : 2.0 * std::cos(am * dphi);
        const double multiplicity = am == 0 ? 1.0 : 2.0;
        for (int n = 0; n <= tr.n_max; ++n) {
            double term = 0.0;
            double envelope = 0.0;
            for (const auto& [kind, sup] : {std::pair{LameKind::Ec, n}, std::pair{LameKind::Es, n + 1}}) {
                const LameSecondKind& f = table.get(am, kind, sup);
                const LameEigenpair& e = f.base();
                const double wf = e.eval_imag(p.t).value * f.eval_tau(ps.tau_c).value;
                term += e(p.s) * e(ps.s) * wf;
                envelope += std::abs(wf);
            }
            out.shell_value[n] += prefactor * weight * term;
            out.shell_envelope[n] += prefactor * multiplicity * envelope;
            m_envelope[am] += prefactor * multiplicity * envelope;
        }
    }
    for (double v : out.shell_value) out.value += v;
    out.tail_estimate = geometric_tail(out.shell_envelope) + geometric_tail(m_envelope);
    return out;
}

double toroidal_summand(int m, int n, const ToroidalPoint& p, const ToroidalPoint& p_star) {
    return toroidal_radial(m, n, p, p_star) * std::cos(n * (p.psi - p_star.psi));
}

ExpansionResult toroidal_green_expansion(const CartesianPoint& r, const CartesianPoint& r_star, Truncation tr) {
    if (tr.m_max < 0 || tr.n_max < 0) throw DomainError("toroidal_green_expansion: negative truncation");
    const ToroidalPoint p = cartesian_to_toroidal(r);
    const ToroidalPoint ps = cartesian_to_toroidal(r_star);
    if (!(p.tau > ps.tau)) throw OrderingError("toroidal expansion requires tau(r) > tau(r*)");
    const double dphi = p.phi - ps.phi;
    ExpansionResult out{0.0, 0.0, std::vector<double>(tr.n_max + 1, 0.0), std::vector<double>(tr.n_max + 1, 0.0)};
    std::vector<double> m_envelope(tr.m_max + 1, 0.0);
    for (int m = 0; m <= tr.m_max; ++m) {
        // The -m summand equals the m summand, so both fold into 2 cos(m dphi).
        const double weight = m == 0 ? 1.0 : 2.0 * std::cos(m * dphi);
        const double multiplicity = m == 0 ? 1.0 : 2.0;
        for (int n = 0; n <= tr.n_max; ++n) {
            const double radial = toroidal_radial(m, n, p, ps);
            // The envelope drops cos(n dpsi), which can vanish by accident.
            const double bound = std::abs(radial);
            out.shell_value[n] += weight * radial * std::cos(n * (p.psi - ps.psi));
            out.shell_envelope[n] += multiplicity * bound;
            m_envelope[m] += multiplicity * bound;
        }
    }
    for (double v : out.shell_value) out.value += v;
    out.tail_estimate = geometric_tail(out.shell_envelope) + geometric_tail(m_envelope);
    return out;
}

double azimuthal_coefficient(int m, const CartesianPoint& r, const CartesianPoint& r_star) {
    const double R = cylindrical_radius(r);
    const double Rs = cylindrical_radius(r_star);
    const double chi = chi_cylindrical(R, r.z, Rs, r_star.z);
    return legendre_Q({std::abs(m) - 0.5, 0.0}, chi) / (std::numbers::pi * std::sqrt(R * Rs));
}

SeriesSum addition_theorem_rhs(const Modulus& modulus, int m, double s, double s_star, double t, double t_star,
                               int n_max) {
    if (m < 0 || n_max < 0) throw DomainError("addition_theorem_rhs: m and n_max must be non-negative");
    check_imaginary_pair(modulus, t, t_star);
    const double nu = m - 0.5;
    SeriesSum out{0.0, {}};
    out.terms.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double term = quadruple(build(LameKind::Ec, nu, n, modulus), s, s_star, t, t_star) +
                            quadruple(build(LameKind::Es, nu, n + 1, modulus), s, s_star, t, t_star);
        out.terms.push_back(0.5 * std::numbers::pi * term);
        out.value += out.terms.back();
    }
    return out;
}

double addition_theorem_lhs(const Modulus& modulus, int m, double s, double s_star, double t, double t_star) {
    if (m < 0) throw DomainError("addition_theorem_lhs: m must be non-negative");
    check_imaginary_pair(modulus, t, t_star);
    const double chi =
        chi_flatring(FlatRingPoint::from_st(s, t, 0.0, modulus), FlatRingPoint::from_st(s_star, t_star, 0.0, modulus));
    return legendre_Q({m - 0.5, 0.0}, chi);
}

IntegralRelation integral_relation_check(const Modulus& modulus, LameKind kind, double nu, int superscript,
                                         double s_star, double t, double t_star, int nodes) {
    check_imaginary_pair(modulus, t, t_star);
    if (nodes < 2) throw DomainError("integral_relation_check: need at least two nodes");
    const LameSecondKind f = build(kind, nu, superscript, modulus);
    const LameEigenpair& e = f.base();
    const double two_K = 2.0 * modulus.quarter_K();
    const FlatRingPoint fixed = FlatRingPoint::from_st(s_star, t_star, 0.0, modulus);
    const QuadratureRule rule = gauss_legendre(nodes, -two_K, two_K);
    double lhs = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = rule.nodes[i];
        const double chi = chi_flatring(FlatRingPoint::from_st(s, t, 0.0, modulus), fixed);
        lhs += rule.weights[i] * legendre_Q({nu, 0.0}, chi) * e(s);
    }
    const double rhs = 2.0 * std::numbers::pi * e(s_star) * e.eval_imag(t).value * f.eval_imag(t_star).value;
    return {lhs, rhs};
}

double flatring_summand(int m, int n, double tau, double tau_star, double psi, double psi_star, const Modulus& modulus) {
    if (n < 0) throw DomainError("flatring_summand: n must be non-negative");
    const double Kp = modulus.quarter_Kp();
    if (!(tau_star > 0.0) || !(tau > tau_star) || !(tau < Kp)) {
        throw DomainError("flatring_summand requires 0 < tau* < tau < K'");
    }
    const double two_K = 2.0 * modulus.quarter_K();
    const Modulus comp = modulus.complement();
    const auto inverse_radius = [&](double tau_c, double angle) {
        const JacobiTriple a = jacobi_real(angle, modulus);
        const JacobiTriple b = jacobi_real(tau_c, comp);
        return (a.dn - a.cn * b.dn) / (modulus.k_prime() * b.sn);
    };
    const double weight = 0.5 * std::sqrt(inverse_radius(tau, psi) * inverse_radius(tau_star, psi_star));
    const double nu = std::abs(m) - 0.5;
    const double s = two_K - psi;
    const double s_star = two_K - psi_star;
    const auto product = [&](LameKind kind) {
        const LameSecondKind f = build(kind, nu, n, modulus);
        const LameEigenpair& e = f.base();
        return e(s) * e(s_star) * e.eval_imag(Kp - tau).value * f.eval_tau(tau_star).value;
    };
    double sum = product(LameKind::Ec);
    if (n >= 1) sum += product(LameKind::Es);
    return weight * sum;
}

std::vector<LimitRow> limit_comparison(int m, int n, double tau, double tau_star, double psi, double psi_star,
                                       std::span<const double> k_sequence) {
    const double toroidal = toroidal_summand(m, n, {tau, psi, 0.0}, {tau_star, psi_star, 0.0});
    std::vector<LimitRow> rows;
    rows.reserve(k_sequence.size());
    for (double k : k_sequence) {
        const double a = flatring_summand(m, n, tau, tau_star, psi, psi_star, Modulus(k));
        rows.push_back({k, a, toroidal, std::abs(a - toroidal)});
    }
    return rows;
}

}  // namespace flatring
