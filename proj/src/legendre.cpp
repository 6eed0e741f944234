#include "flatring/legendre.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "flatring/error.hpp"
#include "flatring/ode.hpp"

namespace flatring {

namespace {

constexpr int kMaxTerms = 100'000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double c) { return c <= 0.0 && std::nearbyint(c) == c; }
bool is_integer(double v) { return std::nearbyint(v) == v; }

struct LogGamma {
    double log_abs;
    double sign;
};

LogGamma log_gamma(double x) {
    int sign = 1;
    const double lg = ::lgamma_r(x, &sign);
    return {lg, static_cast<double>(sign)};
}

// Sums sum_{j >= j0} term_j with term_{j+1} = term_j * (a+j)(b+j)/((c+j)(j+1)) * x.
SeriesResult sum_from(double a, double b, double c, double x, int j0, double first) {
    double term = first;
    double sum = first;
    int small_run = 0;
    for (int j = j0; j < j0 + kMaxTerms; ++j) {
        const double jd = static_cast<double>(j);
        const double ratio = (a + jd) * (b + jd) / ((c + jd) * (jd + 1.0)) * x;
        term *= ratio;
        sum += term;
        if (term == 0.0) return {sum, 0.0, j - j0 + 1};
        if (std::abs(term) <= kEps * std::abs(sum) && std::abs(ratio) < 1.0) {
            if (++small_run >= 2) return {sum, std::abs(term) / (1.0 - std::abs(ratio)), j - j0 + 1};
        } else {
            small_run = 0;
        }
    }
    throw ConvergenceError("hypergeometric series did not converge within 1e5 terms", std::abs(term));
}

// P_nu^mu(z) for 1 < z <= kOdeSwitch from the two hypergeometric forms.
double legendre_P_series(double nu, double mu, double z) {
    const double pref = std::pow((z + 1.0) / (z - 1.0), 0.5 * mu);
    if (z < 3.0) return pref * hyp2f1_regularized(-nu, nu + 1.0, 1.0 - mu, 0.5 * (1.0 - z));
    return pref * std::pow(0.5 * (1.0 + z), nu) *
           hyp2f1_regularized(-nu, -mu - nu, 1.0 - mu, (z - 1.0) / (z + 1.0));
}

constexpr double kOdeSwitch = 64.0;

// Q_nu^mu(z) from the 1/z^2 hypergeometric form, z >= kQOdeStart or so.
double legendre_Q_series(double nu, double mu, double z) {
    const LogGamma g = log_gamma(nu + mu + 1.0);
    const double log_pref = 0.5 * std::log(std::numbers::pi) + g.log_abs + 0.5 * mu * std::log((z - 1.0) * (z + 1.0)) -
                            (nu + 1.0) * std::numbers::ln2 - (nu + mu + 1.0) * std::log(z);
    double phase = 1.0;
    if (is_integer(mu) && !is_integer(0.5 * mu)) phase = -1.0;
    const double series = hyp2f1_regularized(0.5 * (nu + mu) + 1.0, 0.5 * (nu + mu + 1.0), nu + 1.5, 1.0 / (z * z));
    return phase * g.sign * std::exp(log_pref) * series;
}

// Below the floor the 1/z^2 series needs thousands of terms; continue by ODE.
constexpr double kQSeriesFloor = 1.2;
constexpr double kQOdeStart = 1.5;

}  // namespace

SeriesResult hyp2f1_series(double a, double b, double c, double x) {
    if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c is a non-positive integer");
    if (!(std::abs(x) < 1.0)) throw DomainError("hyp2f1: series requires |x| < 1");
    if (a == 0.0 || b == 0.0 || x == 0.0) return {1.0, 0.0, 1};
    return sum_from(a, b, c, x, 0, 1.0);
}

double hyp2f1(double a, double b, double c, double x) { return hyp2f1_series(a, b, c, x).value; }

double hyp2f1_regularized(double a, double b, double c, double x) {
    if (!(std::abs(x) < 1.0)) throw DomainError("hyp2f1_regularized: series requires |x| < 1");
    if (!is_nonpositive_integer(c)) {
        const LogGamma g = log_gamma(c);
        const double inv_gamma = g.sign * std::exp(-g.log_abs);
        return inv_gamma * hyp2f1(a, b, c, x);
    }
    // Terms with j <= -c vanish; the first survivor has Gamma(c + j0) = 1.
    const int j0 = static_cast<int>(-c) + 1;
    double first = 1.0;
    for (int j = 0; j < j0; ++j) {
        const double jd = static_cast<double>(j);
        first *= (a + jd) * (b + jd) / (jd + 1.0) * x;
    }
    if (first == 0.0) return 0.0;
    return sum_from(a, b, c, x, j0, first).value;
}

double gamma_ratio(double a, double b) {
    const bool a_pole = is_nonpositive_integer(a);
    const bool b_pole = is_nonpositive_integer(b);
    if (a_pole && b_pole) {
        // Limit of Gamma(-p + e) / Gamma(-q + e) = (-1)^(q-p) q! / p!.
        const double p = -a;
        const double q = -b;
        const double sign = is_integer(0.5 * (q - p)) ? 1.0 : -1.0;
        return sign * std::exp(std::lgamma(q + 1.0) - std::lgamma(p + 1.0));
    }
    if (a_pole) throw DomainError("gamma_ratio: numerator at a pole of Gamma");
    if (b_pole) return 0.0;
    const LogGamma ga = log_gamma(a);
    const LogGamma gb = log_gamma(b);
    return ga.sign * gb.sign * std::exp(ga.log_abs - gb.log_abs);
}

double legendre_P(LegendreIndex idx, double z) {
    if (!std::isfinite(z) || !(z > 1.0)) throw DomainError("legendre_P requires z > 1");
    const double nu = idx.degree;
    const double mu = idx.order;
    if (z <= kOdeSwitch) return legendre_P_series(nu, mu, z);

    // Continue u = sqrt(sinh xi) P(cosh xi), u'' = ((nu+1/2)^2 + (mu^2-1/4)/sinh^2 xi) u.
    const double z0 = kOdeSwitch;
    const double xi0 = std::acosh(z0);
    const double xi1 = std::acosh(z);
    const double p0 = legendre_P_series(nu, mu, z0);
    const double p1 = legendre_P_series(nu + 1.0, mu, z0);
    const double dp_dz = ((nu - mu + 1.0) * p1 - (nu + 1.0) * z0 * p0) / (z0 * z0 - 1.0);
    const double sh0 = std::sinh(xi0);
    const double root = std::sqrt(sh0);
    const LinearState start{root * p0, z0 / (2.0 * root) * p0 + root * sh0 * dp_dz};
    const double lead = (nu + 0.5) * (nu + 0.5);
    const double tail = mu * mu - 0.25;
    const Coefficient q = [lead, tail](double xi) {
        const double sh = std::sinh(xi);
        return lead + tail / (sh * sh);
    };
    const LinearState end = integrate_linear(q, xi0, xi1, start, {1e-14, 1e-14});
    return end[0] / std::sqrt(std::sinh(xi1));
}

double legendre_Q(LegendreIndex idx, double z) {
    if (!std::isfinite(z) || !(z > 1.0)) throw DomainError("legendre_Q requires z > 1");
    const double nu = idx.degree;
    const double mu = idx.order;
    if (is_nonpositive_integer(nu + mu + 1.0)) throw DomainError("legendre_Q: nu + mu is a negative integer");
    if (z >= kQSeriesFloor) return legendre_Q_series(nu, mu, z);

    // Q is dominant toward z = 1, so the same Liouville form integrated inward
    // from the series region is stable.
    const double z0 = kQOdeStart;
    const double xi0 = std::acosh(z0);
    const double xi1 = std::acosh(z);
    const double q0 = legendre_Q_series(nu, mu, z0);
    const double q1 = legendre_Q_series(nu + 1.0, mu, z0);
    const double dq_dz = ((nu - mu + 1.0) * q1 - (nu + 1.0) * z0 * q0) / (z0 * z0 - 1.0);
    const double sh0 = std::sinh(xi0);
    const double root = std::sqrt(sh0);
    const LinearState start{root * q0, z0 / (2.0 * root) * q0 + root * sh0 * dq_dz};
    const double lead = (nu + 0.5) * (nu + 0.5);
    const double tail = mu * mu - 0.25;
    const Coefficient q = [lead, tail](double xi) {
        const double sh = std::sinh(xi);
        return lead + tail / (sh * sh);
    };
    const LinearState end = integrate_linear(q, xi0, xi1, start, {1e-14, 1e-14});
    return end[0] / std::sqrt(std::sinh(xi1));
}

}  // namespace flatring
