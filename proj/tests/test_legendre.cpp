#include <cmath>
#include <numbers>

#include "doctest.h"
#include "flatring/elliptic.hpp"
#include "flatring/error.hpp"
#include "flatring/legendre.hpp"

using namespace flatring;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Frozen {
    double nu;
    double mu;
    double z;
    double value;
};

// Reference values from an arbitrary-precision evaluation (30 digits).
constexpr Frozen kP[] = {
    {0.5, 0, 1.5, 1.17467242944553851463274917543},
    {1.5, 1, 3.0, 8.87593620611449054018048698653},
    {2.5, 2, 10.0, 2255.56523289344044269640465216},
    {-0.5, 0, 2.0, 0.901286299360447298735939030908},
    {0.5, 3, 1.1, 0.00860355779530229514319098919681},
    {1.5, -1, 7.0, 8.81248625541663527912639361126},
    {4.5, 2, 100.0, 92181010990.0768210297574735374},
    {0.5, 1, 1000.0, 14.2352073412101601395076821281},
    {2.5, 0, 1e4, 19206747987.9866311733320925132},
    {-0.5, 0.3, 2.5, 0.714960327547073373125154268597},
    {3.5, 0, 50.0, 2909413.00608945499897358101799},
};

constexpr Frozen kQ[] = {
    {0.5, 0, 1.5, 0.393175148372004731040692685554},
    {1.5, 1, 3.0, -0.0367279096701827703766789667459},
    {2.5, 2, 10.0, 0.000437583540930434510636761794825},
    {-0.5, 0, 2.0, 1.65663817023659416644846837293},
    {0.5, 3, 1.1, -94.3668882935872053133881355187},
    {1.5, -1, 7.0, -0.00108902070936070470017866230768},
    {4.5, 2, 100.0, 6.10848427057361961886095324888e-12},
    {-0.5, 1, 1.2, -1.73489098836596568520633007195},
};

}  // namespace

TEST_CASE("hyp2f1 closed forms") {
    CHECK(hyp2f1(0.0, 2.0, 3.0, 0.7) == 1.0);
    CHECK(hyp2f1(1.5, 2.0, 3.0, 0.0) == 1.0);
    CHECK(rel(hyp2f1(1.0, 1.0, 2.0, 0.5), -std::log(0.5) / 0.5) <= 1e-13);
    // (1 - x)^(-a) = 2F1(a, b; b; x)
    CHECK(rel(hyp2f1(0.7, 1.3, 1.3, -0.6), std::pow(1.6, -0.7)) <= 1e-13);
    // arcsin(x)/x = 2F1(1/2, 1/2; 3/2; x^2)
    CHECK(rel(hyp2f1(0.5, 0.5, 1.5, 0.25), std::asin(0.5) / 0.5) <= 1e-13);
    const SeriesResult r = hyp2f1_series(1.0, 1.0, 2.0, 0.5);
    CHECK(r.error_estimate <= 1e-15);
    CHECK(r.terms > 10);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.5), DomainError);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.0), DomainError);
}

TEST_CASE("regularized hypergeometric at non-positive integer c") {
    // F~(a,b;-1;x) = (a)_2 (b)_2 x^2 / 2! * 2F1(a+2, b+2; 3; x)
    const double a = 0.3, b = 1.7, x = 0.4;
    const double expect = a * (a + 1) * b * (b + 1) * x * x / 2.0 * hyp2f1(a + 2, b + 2, 3.0, x);
    CHECK(rel(hyp2f1_regularized(a, b, -1.0, x), expect) <= 1e-13);
    CHECK(rel(hyp2f1_regularized(a, b, 2.5, x), hyp2f1(a, b, 2.5, x) / std::tgamma(2.5)) <= 1e-14);
}

TEST_CASE("gamma ratio in log space") {
    CHECK(rel(gamma_ratio(5.5, 2.5), std::tgamma(5.5) / std::tgamma(2.5)) <= 1e-14);
    CHECK(rel(gamma_ratio(-0.5, 1.5), std::tgamma(-0.5) / std::tgamma(1.5)) <= 1e-14);
    CHECK(rel(gamma_ratio(200.5, 198.5), 199.5 * 198.5) <= 1e-12);
    CHECK(gamma_ratio(1.0, -3.0) == 0.0);
    CHECK(rel(gamma_ratio(-2.0, -4.0), 12.0) <= 1e-14);
    CHECK_THROWS_AS(gamma_ratio(-1.0, 2.0), DomainError);
}

TEST_CASE("legendre_P against frozen reference values") {
    for (const Frozen& f : kP) {
        CAPTURE(f.nu);
        CAPTURE(f.mu);
        CAPTURE(f.z);
        CHECK(rel(legendre_P({f.nu, f.mu}, f.z), f.value) <= 1e-11);
    }
    for (double z : {1.01, 2.0, 7.0, 300.0}) CHECK(std::abs(legendre_P({0.0, 0.0}, z) - 1.0) <= 1e-13);
    CHECK_THROWS_AS(legendre_P({0.5, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(legendre_P({0.5, 0.0}, 0.3), DomainError);
}

TEST_CASE("legendre_P at degree -1/2 near z = 1") {
    // P_{-1/2}(z) = (2/pi) sqrt(2/(z+1)) K(sqrt((z-1)/(z+1)))
    for (double z : {1.0 + 1e-9, 1.01, 1.5, 2.0}) {
        const double kk = std::sqrt((z - 1.0) / (z + 1.0));
        const double expect = 2.0 / std::numbers::pi * std::sqrt(2.0 / (z + 1.0)) * complete_K(kk);
        CHECK(rel(legendre_P({-0.5, 0.0}, z), expect) <= 1e-10);
    }
    CHECK(std::abs(legendre_P({-0.5, 0.0}, 1.0 + 1e-14) - 1.0) <= 1e-12);
}

TEST_CASE("connection identity between orders m and -m") {
    for (int m = 0; m <= 4; ++m) {
        for (int n = 0; n <= 4; ++n) {
            const double nu = n - 0.5;
            for (double z : {1.1, 2.0, 10.0}) {
                const double lhs = legendre_P({nu, double(m)}, z) * gamma_ratio(nu - m + 1.0, nu + m + 1.0);
                const double rhs = legendre_P({nu, -double(m)}, z);
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(z);
                CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
                const double q_lhs = legendre_Q({nu, double(m)}, z);
                const double q_rhs = gamma_ratio(nu + m + 1.0, nu - m + 1.0) * legendre_Q({nu, -double(m)}, z);
                CHECK(std::abs(q_lhs - q_rhs) <= 1e-11 * std::abs(q_lhs));
            }
        }
    }
}

TEST_CASE("legendre_Q against frozen values and the elliptic closed form") {
    for (const Frozen& f : kQ) {
        CAPTURE(f.nu);
        CAPTURE(f.mu);
        CAPTURE(f.z);
        CHECK(rel(legendre_Q({f.nu, f.mu}, f.z), f.value) <= 1e-11);
    }
    for (double z : {1.5, 3.0, 10.0}) {
        const double kk = std::sqrt(2.0 / (z + 1.0));
        CHECK(rel(legendre_Q({-0.5, 0.0}, z), kk * complete_K(kk)) <= 1e-12);
    }
    CHECK_THROWS_AS(legendre_Q({0.5, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(legendre_Q({-1.5, -0.5}, 3.0), DomainError);
}

TEST_CASE("legendre_Q near z = 1 continues the series") {
    // mpmath legenq(type=3), real part, 30 digits.
    const Frozen near_one[] = {
        {0.5, 0.0, 1.02, 1.7139841518503237},  {0.5, 0.0, 1.001, 3.1885653771920874},
        {2.5, 1.0, 1.1, -1.0639859517155397},  {-0.5, 0.0, 1.0001, 6.3379714137292903},
        {4.5, 2.0, 1.03, 25.120683437723268},  {0.75, 0.0, 1.15, 0.65247599723615165},
    };
    for (const Frozen& f : near_one) {
        CAPTURE(f.nu);
        CAPTURE(f.z);
        CHECK(rel(legendre_Q({f.nu, f.mu}, f.z), f.value) <= 1e-11);
    }
    for (double z : {1.01, 1.1, 1.19}) {
        const double kk = std::sqrt(2.0 / (z + 1.0));
        CHECK(rel(legendre_Q({-0.5, 0.0}, z), kk * complete_K(kk)) <= 1e-11);
    }
}

TEST_CASE("|Q| decays and |P| grows along z = cosh tau") {
    for (int m = 0; m <= 3; ++m) {
        for (int n = 0; n <= 4; ++n) {
            const double nu = n - 0.5;
            double prev_q = std::abs(legendre_Q({nu, double(m)}, 10.0));
            for (double z = 12.0; z <= 60.0; z += 2.0) {
                const double q = std::abs(legendre_Q({nu, double(m)}, z));
                CHECK(q < prev_q);
                prev_q = q;
            }
            if (n >= 1) {
                double prev_p = std::abs(legendre_P({nu, double(m)}, std::cosh(0.5)));
                for (double tau = 0.6; tau <= 3.0; tau += 0.1) {
                    const double p = std::abs(legendre_P({nu, double(m)}, std::cosh(tau)));
                    CHECK(p > prev_p);
                    prev_p = p;
                }
            }
        }
    }
}

TEST_CASE("Wronskian of P and Q") {
    const double nu = 1.5, mu = 1.0, x = 2.0, h = 1e-4;
    auto P = [&](double z) { return legendre_P({nu, mu}, z); };
    auto Q = [&](double z) { return legendre_Q({nu, mu}, z); };
    auto d = [h](auto f, double z) { return (f(z - 2 * h) - 8 * f(z - h) + 8 * f(z + h) - f(z + 2 * h)) / (12 * h); };
    const double w = P(x) * d(Q, x) - Q(x) * d(P, x);
    const double expect = -1.0 * gamma_ratio(nu + mu + 1.0, nu - mu + 1.0) / (1.0 - x * x);
    CHECK(std::abs(w - expect) <= 1e-8 * std::abs(expect));
}
