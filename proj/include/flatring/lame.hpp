#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string_view>
#include <tuple>
#include <vector>

#include "flatring/elliptic.hpp"

namespace flatring {

// Boundary families of the simply-periodic Lame problem on [0, K]:
//   EcEven  E'(0) = E'(K) = 0   even,  2K-periodic
//   EcOdd   E(0)  = E'(K) = 0   odd,   2K-antiperiodic
//   EsOdd   E'(0) = E(K)  = 0   even,  2K-antiperiodic
//   EsEven  E(0)  = E(K)  = 0   odd,   2K-periodic
enum class LameFamily { EcEven, EcOdd, EsOdd, EsEven };

std::string_view family_name(LameFamily f);

// Superscript notation: Ec^(2n) and Ec^(2n+1) are EcEven and EcOdd with n
// zeros in (0, K); Es^(2n+1) and Es^(2n+2) are EsOdd and EsEven with n zeros.
enum class LameKind { Ec, Es };
LameFamily family_of(LameKind kind, int superscript);
int zeros_of(LameKind kind, int superscript);
int superscript_of(LameFamily family, int zeros);
LameKind kind_of(LameFamily family);

// True when E(0) = 0 (odd about s = 0).
bool family_is_odd(LameFamily f);

struct EigenBracket {
    double lo;
    double hi;
};

// Two-sided eigenvalue bounds: pi^2 N^2 / (4 K^2) shifted by nu(nu+1) k^2 on
// the side fixed by the sign of nu(nu+1); N is the superscript.
EigenBracket eigen_bracket(LameFamily family, double nu, int zeros, const Modulus& m);

// Value and derivative of a solution at one abscissa.
struct LameValue {
    double value;
    double derivative;
};

// One eigenvalue of E'' = (h - nu(nu+1) k^2 sn^2(s, k)) ... written here as
// E'' + (h - nu(nu+1) k^2 sn^2) E = 0 and its normalized eigenfunction
// (integral of E^2 over [0, K] equal to 1).
class LameEigenpair {
public:
    LameFamily family() const noexcept { return family_; }
    double nu() const noexcept { return nu_; }
    int zeros() const noexcept { return zeros_; }
    int superscript() const noexcept { return superscript_of(family_, zeros_); }
    double h() const noexcept { return h_; }
    const Modulus& modulus() const noexcept { return modulus_; }
    // Factor applied to the raw shooting solution to reach unit norm.
    double norm_scale() const noexcept { return norm_scale_; }
    // E(0) and E'(0) after normalization.
    LameValue boundary_data() const noexcept { return {e0_, de0_}; }
    // Zero count in (0, K) from the Pruefer angle at the converged eigenvalue.
    int pruefer_zero_count() const noexcept { return pruefer_zeros_; }
    bool odd() const noexcept { return family_is_odd(family_); }
    int chebyshev_degree() const noexcept { return static_cast<int>(value_coeffs_.size()) - 1; }

    // E(s) and E'(s) for any real s through parity and (anti)periodicity.
    LameValue eval(double s) const;
    double operator()(double s) const { return eval(s).value; }
    void eval_batch(std::span<const double> s, std::span<double> out) const;

    // Real representative W(t) of E on the imaginary axis: W'' = (h + nu(nu+1)
    // k^2 sc^2(t, k')) W with W(0) = E(0), W'(0) = E'(0). E(it) = W(t) for even
    // families and i W(t) for odd ones. Requires 0 <= t < K'.
    LameValue eval_imag(double t) const;

private:
    friend LameEigenpair solve_eigenpair(LameFamily, double, int, const Modulus&);

    LameEigenpair(LameFamily f, double nu, int zeros, const Modulus& m)
        : family_(f), nu_(nu), zeros_(zeros), modulus_(m) {}

    LameFamily family_;
    double nu_;
    int zeros_;
    double h_ = 0.0;
    Modulus modulus_;
    double norm_scale_ = 1.0;
    double e0_ = 0.0;
    double de0_ = 0.0;
    int pruefer_zeros_ = -1;
    std::vector<double> value_coeffs_;
    std::vector<double> slope_coeffs_;
};

// Solves the n-th eigenpair of a family (n = zeros in (0, K)). Throws
// BracketError if the shooting residual has no sign change in the widened
// bracket.
LameEigenpair solve_eigenpair(LameFamily family, double nu, int zeros, const Modulus& m);

// Second solution of the modified equation, recessive at t = K' and scaled so
// that F W' - W F' = 1 (Wronskian in the t variable, sign fixed by F(it) being
// the solution that vanishes at the axis).
class LameSecondKind {
public:
    explicit LameSecondKind(LameEigenpair base);

    const LameEigenpair& base() const noexcept { return base_; }
    // Series coefficients c_j of w(tau) = tau^(nu+1) sum_j c_j tau^(2j), c_0 = 1.
    std::span<const double> frobenius_coeffs() const noexcept { return coeffs_; }
    // F = wronskian_scale * w.
    double wronskian_scale() const noexcept { return scale_; }
    double handoff_tau() const noexcept { return tau0_; }
    // Indicial exponents nu+1 and -nu coincide (nu = -1/2); only the power branch is built.
    bool degenerate_exponents() const noexcept { return nu_half_; }

    // Real representative F^(t) at distance tau = K' - t from the axis, with
    // its derivative in t. E(it) F(it*) = W(t) F^(t*) for every family.
    LameValue eval_tau(double tau) const;
    LameValue eval_imag(double t) const { return eval_tau(base_.modulus().quarter_Kp() - t); }

    // Unscaled Frobenius solution w(tau) and dw/dtau.
    LameValue frobenius(double tau) const;

private:
    LameValue series(double tau) const;

    LameEigenpair base_;
    std::vector<double> coeffs_;
    double tau0_ = 0.0;
    double scale_ = 1.0;
    bool nu_half_ = false;
    LameValue handoff_{};
};

// Eigen-objects for nu = |m| - 1/2, |m| <= m_max, and superscripts 0..n_max
// (Ec) and 1..n_max+1 (Es) at one modulus. Everything is built in the
// constructor; afterwards the table is read-only and safe to share.
class LameTable {
public:
    LameTable(const Modulus& m, int m_max, int n_max, int threads = 0);

    const Modulus& modulus() const noexcept { return modulus_; }
    int m_max() const noexcept { return m_max_; }
    int n_max() const noexcept { return n_max_; }

    const LameSecondKind& get(int abs_m, LameKind kind, int superscript) const;

private:
    std::size_t index(int abs_m, LameKind kind, int superscript) const;

    Modulus modulus_;
    int m_max_;
    int n_max_;
    std::vector<std::unique_ptr<const LameSecondKind>> entries_;
};

}  // namespace flatring
