#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatring/coords.hpp"
#include "flatring/harmonics.hpp"
#include "flatring/lame.hpp"

namespace flatring {

// Interior of the flat-ring t = t0: all points with t < t0.
class FlatRingDomain {
public:
    FlatRingDomain(const Modulus& modulus, double t0);

    const Modulus& modulus() const noexcept { return modulus_; }
    double t0() const noexcept { return t0_; }
    // Required gap between t(q) and t0 for interior evaluation.
    double margin() const noexcept { return 1e-3 * modulus_.quarter_Kp(); }
    // Point of the boundary surface with parameters (s, phi).
    CartesianPoint boundary_point(double s, double phi) const;

private:
    Modulus modulus_;
    double t0_;
};

// g(s, phi) = R^(1/2) f on the boundary, sampled on (-2K, 2K) x (-pi, pi).
struct BoundaryData {
    std::function<double(double s, double phi)> g;
    int n_s = 256;    // Gauss-Legendre nodes in s
    int n_phi = 64;   // trapezoid nodes in phi
};

// Coefficients of u = sum_m sum_n [c_m^n Gc_m^n + d_m^(n+1) Gs_m^(n+1)],
// stored with the same complex convention as the harmonics so that the
// products are real for real data.
class DirichletCoefficients {
public:
    DirichletCoefficients(Truncation tr, double t0);

    Truncation truncation() const noexcept { return tr_; }
    double t0() const noexcept { return t0_; }
    std::complex<double>& c(int m, int n) { return c_[slot(m, n)]; }
    std::complex<double> c(int m, int n) const { return c_[slot(m, n)]; }
    // Sine-type coefficient d_m^(n+1), addressed by n.
    std::complex<double>& d(int m, int n) { return d_[slot(m, n)]; }
    std::complex<double> d(int m, int n) const { return d_[slot(m, n)]; }

    // Sampled integral of g^2 and the Parseval sum 8 pi sum |c E(it0)|^2 + |d E(it0)|^2.
    double sampled_norm2 = 0.0;
    double parseval_sum = 0.0;
    double parseval_residual() const;
    // Set when the relative Parseval residual exceeds the requested tolerance.
    std::optional<std::string> warning;

private:
    std::size_t slot(int m, int n) const;

    Truncation tr_;
    double t0_;
    std::vector<std::complex<double>> c_;
    std::vector<std::complex<double>> d_;
};

// Projects the boundary data on the products E(s) e^(i m phi). The table
// fixes the modulus and must cover the truncation.
DirichletCoefficients dirichlet_coefficients(const LameTable& table, const FlatRingDomain& domain,
                                             const BoundaryData& data, Truncation tr, double parseval_tol = 1e-6);

// Value of the truncated series at q; q must satisfy t(q) <= t0 - margin.
double solve_interior(const LameTable& table, const FlatRingDomain& domain, const DirichletCoefficients& coeffs,
                      const CartesianPoint& q);

// External harmonic at r* from its integral over the boundary surface:
// (1 / (4 pi E(it0)^2)) ∬ h_phi G(r) / |r - r*| ds dphi with G the internal
// harmonic of the same index. r* must lie outside the closed flat-ring.
std::complex<double> external_from_boundary(const LameTable& table, const FlatRingDomain& domain, HarmonicIndex idx,
                                            const CartesianPoint& r_star, int n_s = 256, int n_phi = 64);

}  // namespace flatring
