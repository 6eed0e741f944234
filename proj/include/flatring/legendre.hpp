#pragma once

namespace flatring {

// Degree nu and order mu of an associated Legendre function on (1, inf).
struct LegendreIndex {
    double degree;
    double order;
};

struct SeriesResult {
    double value;
    double error_estimate;  // magnitude of the last term added
    int terms;
};

// Gauss hypergeometric series 2F1(a, b; c; x) for |x| < 1, c not a
// non-positive integer. Throws ConvergenceError after 1e5 terms.
SeriesResult hyp2f1_series(double a, double b, double c, double x);
double hyp2f1(double a, double b, double c, double x);

// 2F1(a, b; c; x) / Gamma(c), finite for every real c.
double hyp2f1_regularized(double a, double b, double c, double x);

// Gamma(a) / Gamma(b) through log-gamma with sign tracking; zero when a is
// a pole of Gamma and b is not.
double gamma_ratio(double a, double b);

// P_nu^mu(z), z > 1.
double legendre_P(LegendreIndex idx, double z);

// Q_nu^mu(z), z > 1, nu + mu not a negative integer. For integer mu the
// factor e^{i mu pi} = (-1)^mu is part of the returned value; for non-integer
// mu the phase is omitted so the value stays real.
double legendre_Q(LegendreIndex idx, double z);

}  // namespace flatring
