#include "flatring/dirichlet.hpp"

#include <cmath>
#include <numbers>

#include "flatring/error.hpp"
#include "flatring/quadrature.hpp"

namespace flatring {

namespace {

using namespace std::complex_literals;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// E(it) in the harmonic convention: W for even functions, i W for odd ones.
std::complex<double> imaginary_value(const LameEigenpair& e, double t) {
    const double w = e.eval_imag(t).value;
    return e.odd() ? 1i * w : std::complex<double>(w);
}

std::vector<double> trapezoid_nodes(int n) {
    std::vector<double> phi(n);
    for (int j = 0; j < n; ++j) phi[j] = -std::numbers::pi + kTwoPi * j / n;
    return phi;
}

void check_truncation(const LameTable& table, const FlatRingDomain& domain, Truncation tr) {
    if (tr.m_max < 0 || tr.n_max < 0) throw DomainError("dirichlet: negative truncation");
    if (tr.m_max > table.m_max() || tr.n_max > table.n_max()) {
        throw DomainError("dirichlet: truncation exceeds the Lame table");
    }
    if (!(table.modulus() == domain.modulus())) throw DomainError("dirichlet: table and domain moduli differ");
}

}  // namespace

FlatRingDomain::FlatRingDomain(const Modulus& modulus, double t0) : modulus_(modulus), t0_(t0) {
    if (!(t0 > 0.0) || !(t0 < modulus.quarter_Kp())) throw DomainError("flat-ring domain requires 0 < t0 < K'");
}

CartesianPoint FlatRingDomain::boundary_point(double s, double phi) const {
    return flatring_to_cartesian(FlatRingPoint::from_st(s, t0_, phi, modulus_));
}

DirichletCoefficients::DirichletCoefficients(Truncation tr, double t0) : tr_(tr), t0_(t0) {
    const std::size_t size = static_cast<std::size_t>(2 * tr.m_max + 1) * static_cast<std::size_t>(tr.n_max + 1);
    c_.assign(size, 0.0);
    d_.assign(size, 0.0);
}

std::size_t DirichletCoefficients::slot(int m, int n) const {
    if (std::abs(m) > tr_.m_max || n < 0 || n > tr_.n_max) throw DomainError("coefficient index outside the truncation");
    return static_cast<std::size_t>(m + tr_.m_max) * static_cast<std::size_t>(tr_.n_max + 1) +
           static_cast<std::size_t>(n);
}

double DirichletCoefficients::parseval_residual() const {
    if (sampled_norm2 == 0.0) return parseval_sum;
    return std::abs(sampled_norm2 - parseval_sum) / sampled_norm2;
}

DirichletCoefficients dirichlet_coefficients(const LameTable& table, const FlatRingDomain& domain,
                                             const BoundaryData& data, Truncation tr, double parseval_tol) {
    check_truncation(table, domain, tr);
    if (!data.g) throw DomainError("dirichlet: boundary sampler is empty");
    if (data.n_s < 2 || data.n_phi < 1) throw DomainError("dirichlet: quadrature orders too small");
    const double two_K = 2.0 * domain.modulus().quarter_K();
    const QuadratureRule rule = gauss_legendre(data.n_s, -two_K, two_K);
    const std::vector<double> phi = trapezoid_nodes(data.n_phi);
    const double dphi = kTwoPi / data.n_phi;
    const std::size_t ns = rule.nodes.size();

    // Fourier coefficients in phi at each s node: row m holds sum_j g e^{-i m phi_j} dphi.
    std::vector<std::vector<std::complex<double>>> fourier(2 * tr.m_max + 1,
                                                           std::vector<std::complex<double>>(ns, 0.0));
    DirichletCoefficients out(tr, domain.t0());
    for (std::size_t i = 0; i < ns; ++i) {
        for (int j = 0; j < data.n_phi; ++j) {
            const double g = data.g(rule.nodes[i], phi[j]);
            if (!std::isfinite(g)) throw DomainError("dirichlet: boundary data is not finite");
            out.sampled_norm2 += rule.weights[i] * dphi * g * g;
            for (int m = -tr.m_max; m <= tr.m_max; ++m) {
                fourier[m + tr.m_max][i] += g * std::polar(dphi, -static_cast<double>(m) * phi[j]);
            }
        }
    }

    std::vector<double> values(ns);
    for (int am = 0; am <= tr.m_max; ++am) {
        for (int n = 0; n <= tr.n_max; ++n) {
            for (LameKind kind : {LameKind::Ec, LameKind::Es}) {
                const LameEigenpair& e = table.get(am, kind, kind == LameKind::Ec ? n : n + 1).base();
                e.eval_batch(rule.nodes, values);
                const std::complex<double> at_boundary = imaginary_value(e, domain.t0());
                for (int m : {am, -am}) {
                    std::complex<double> integral = 0.0;
                    for (std::size_t i = 0; i < ns; ++i) integral += rule.weights[i] * values[i] * fourier[m + tr.m_max][i];
                    const std::complex<double> coeff = integral / (8.0 * std::numbers::pi * at_boundary);
                    (kind == LameKind::Ec ? out.c(m, n) : out.d(m, n)) = coeff;
                    out.parseval_sum += 8.0 * std::numbers::pi * std::norm(coeff * at_boundary);
                    if (am == 0) break;
                }
            }
        }
    }
    if (out.parseval_residual() > parseval_tol) {
        out.warning = "boundary data under-resolved: relative Parseval residual " +
                      std::to_string(out.parseval_residual()) + " exceeds " + std::to_string(parseval_tol);
    }
    return out;
}

double solve_interior(const LameTable& table, const FlatRingDomain& domain, const DirichletCoefficients& coeffs,
                      const CartesianPoint& q) {
    const Truncation tr = coeffs.truncation();
    check_truncation(table, domain, tr);
    const FlatRingPoint p = locate_lenient(q, domain.modulus());
    if (!(p.t <= domain.t0() - domain.margin())) throw DomainError("solve_interior: point outside the flat-ring interior");
    std::complex<double> sum = 0.0;
    for (int am = 0; am <= tr.m_max; ++am) {
        for (int n = 0; n <= tr.n_max; ++n) {
            for (LameKind kind : {LameKind::Ec, LameKind::Es}) {
                const LameEigenpair& e = table.get(am, kind, kind == LameKind::Ec ? n : n + 1).base();
                const std::complex<double> radial = e(p.s) * imaginary_value(e, p.t);
                for (int m : {am, -am}) {
                    const std::complex<double> coeff = kind == LameKind::Ec ? coeffs.c(m, n) : coeffs.d(m, n);
                    sum += coeff * radial * std::polar(1.0, m * p.phi);
                    if (am == 0) break;
                }
            }
        }
    }
    return sum.real() / std::sqrt(cylindrical_radius(q));
}

std::complex<double> external_from_boundary(const LameTable& table, const FlatRingDomain& domain, HarmonicIndex idx,
                                            const CartesianPoint& r_star, int n_s, int n_phi) {
    if (idx.kind != HarmonicKind::Hc && idx.kind != HarmonicKind::Hs) {
        throw DomainError("external_from_boundary takes an Hc or Hs index");
    }
    if (!(table.modulus() == domain.modulus())) throw DomainError("dirichlet: table and domain moduli differ");
    const FlatRingPoint ps = locate_lenient(r_star, domain.modulus());
    if (!(ps.t > domain.t0())) throw DomainError("external_from_boundary: r* must lie outside the closed flat-ring");
    const LameKind kind = idx.kind == HarmonicKind::Hc ? LameKind::Ec : LameKind::Es;
    const LameEigenpair& e = table.get(std::abs(idx.m), kind, idx.superscript).base();
    const std::complex<double> at_boundary = imaginary_value(e, domain.t0());

    const double two_K = 2.0 * domain.modulus().quarter_K();
    const QuadratureRule rule = gauss_legendre(n_s, -two_K, two_K);
    const std::vector<double> phi = trapezoid_nodes(n_phi);
    const double dphi = kTwoPi / n_phi;
    std::vector<double> values(rule.nodes.size());
    e.eval_batch(rule.nodes, values);
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (int j = 0; j < n_phi; ++j) {
            const CartesianPoint r = domain.boundary_point(rule.nodes[i], phi[j]);
            const double R = cylindrical_radius(r);
            const double dist = std::hypot(r.x - r_star.x, r.y - r_star.y, r.z - r_star.z);
            // h_phi = R, so h_phi R^(-1/2) = R^(1/2).
            const std::complex<double> harmonic =
                std::sqrt(R) * values[i] * at_boundary * std::polar(1.0, idx.m * phi[j]);
            sum += rule.weights[i] * dphi * harmonic / dist;
        }
    }
    return sum / (4.0 * std::numbers::pi * at_boundary * at_boundary);
}

}  // namespace flatring
