#include "flatring/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "detail/landen.hpp"
#include "flatring/error.hpp"

namespace flatring {

namespace {

double letter_value(char letter, const JacobiTriple& j) {
    switch (letter) {
        case 's': return j.sn;
        case 'c': return j.cn;
        case 'd': return j.dn;
        case 'n': return 1.0;
        default: throw DomainError(std::string("unknown Jacobi function letter '") + letter + "'");
    }
}

}  // namespace

double agm(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("agm requires positive arguments");
    for (int i = 0; i < 64; ++i) {
        const double mean = 0.5 * (a + b);
        const double geo = std::sqrt(a * b);
        if (std::abs(mean - geo) <= 4.0 * std::numeric_limits<double>::epsilon() * mean) return mean;
        a = mean;
        b = geo;
    }
    return 0.5 * (a + b);
}

double complete_K(double k) {
    if (!(k >= 0.0) || !(k < 1.0)) throw DomainError("complete_K requires 0 <= k < 1");
    if (k == 0.0) return std::numbers::pi / 2.0;
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    return std::numbers::pi / (2.0 * agm(1.0, kp));
}

Modulus::Modulus(double k) : k_(k) {
    if (!(k > 0.0) || !(k < 1.0)) throw DomainError("modulus k must lie in (0, 1), got " + std::to_string(k));
    kp_ = std::sqrt((1.0 - k) * (1.0 + k));
    K_ = std::numbers::pi / (2.0 * agm(1.0, kp_));
    Kp_ = std::numbers::pi / (2.0 * agm(1.0, k_));
}

Modulus Modulus::complement() const noexcept { return Modulus(kp_, k_, Kp_, K_); }

JacobiTriple jacobi_real(double u, const Modulus& m) {
    if (!std::isfinite(u)) throw DomainError("jacobi_real: non-finite argument");
    const detail::LandenTable table = detail::make_landen_table(m.k_prime() * m.k_prime());
    return detail::jacobi_reduced(table, u, m.quarter_K(), m.k_prime());
}

JacobiTriple jacobi_complement(double v, const Modulus& m) {
    const JacobiTriple j = jacobi_real(v, m);
    return {j.cn / j.dn, m.k_prime() * j.sn / j.dn, m.k_prime() / j.dn};
}

ImaginaryTriple jacobi_imag(double t, const Modulus& m) {
    if (!std::isfinite(t)) throw DomainError("jacobi_imag: non-finite argument");
    if (std::abs(t) >= m.quarter_Kp() - kPoleGuard) throw PoleError("jacobi_imag: |t| within the guard band of the pole at K'");
    const JacobiTriple j = jacobi_real(t, m.complement());
    return {j.sn / j.cn, 1.0 / j.cn, j.dn / j.cn};
}

double glaisher(double u, double k, std::string_view code) {
    if (code.size() != 2) throw DomainError("Glaisher code must have two letters");
    const JacobiTriple j = jacobi_real(u, Modulus(k));
    const double num = letter_value(code[0], j);
    const double den = letter_value(code[1], j);
    if (std::abs(den) < kPoleGuard) throw PoleError("glaisher: argument at a pole of " + std::string(code));
    return num / den;
}

std::vector<double> ns2_series_coeffs(const Modulus& m, int count) {
    if (count < 1) throw DomainError("ns2_series_coeffs: count must be positive");
    if (count > kNs2MaxTerms) throw DomainError("ns2_series_coeffs: at most 64 coefficients are supported");
    const double kappa = m.k_prime() * m.k_prime();
    const auto n = static_cast<std::size_t>(count);

    // sn(tau, k') = tau * sum_j s[j] tau^(2j), from sn'' = -(1+kappa) sn + 2 kappa sn^3.
    std::vector<double> s(n, 0.0);
    std::vector<double> sq(n, 0.0);
    std::vector<double> cube(n, 0.0);
    s[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= j; ++i) acc += s[i] * s[j - i];
        sq[j] = acc;
        acc = 0.0;
        for (std::size_t i = 0; i <= j; ++i) acc += sq[i] * s[j - i];
        cube[j] = acc;
        if (j + 1 < n) {
            const double prev_cube = j >= 1 ? cube[j - 1] : 0.0;
            const double jd = static_cast<double>(j);
            s[j + 1] = (-(1.0 + kappa) * s[j] + 2.0 * kappa * prev_cube) / ((2.0 * jd + 3.0) * (2.0 * jd + 2.0));
        }
    }

    std::vector<double> recip(n, 0.0);
    recip[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= j; ++i) acc += s[i] * recip[j - i];
        recip[j] = -acc;
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= j; ++i) acc += recip[i] * recip[j - i];
        out[j] = acc;
    }
    return out;
}

double ns2_safe_radius(const Modulus& m) { return std::min(m.quarter_K(), m.quarter_Kp()); }

}  // namespace flatring
