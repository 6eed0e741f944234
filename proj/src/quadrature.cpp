#include "flatring/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "flatring/error.hpp"

namespace flatring {

namespace {

QuadratureRule build_gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double nd = static_cast<double>(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        const double theta = std::numbers::pi * (i + 0.75) / (nd + 0.5);
        double x = std::cos(theta) * (1.0 - (nd - 1.0) / (8.0 * nd * nd * nd));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double jd = static_cast<double>(j);
                const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16) break;
        }
        {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double jd = static_cast<double>(j);
                const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const QuadratureRule>> rules;
    const std::lock_guard lock(mutex);
    auto& slot = rules[n];
    if (!slot) slot = std::make_unique<const QuadratureRule>(build_gauss_legendre(n));
    return *slot;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    const QuadratureRule& ref = gauss_legendre(n);
    QuadratureRule out = ref;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        out.nodes[i] = mid + half * ref.nodes[i];
        out.weights[i] = half * ref.weights[i];
    }
    return out;
}

std::vector<double> chebyshev_lobatto_points(int degree, double lo, double hi) {
    std::vector<double> x(static_cast<std::size_t>(degree) + 1);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int j = 0; j <= degree; ++j) {
        x[static_cast<std::size_t>(j)] = mid - half * std::cos(std::numbers::pi * j / degree);
    }
    x.front() = lo;
    x.back() = hi;
    return x;
}

std::vector<double> chebyshev_coefficients(std::span<const double> values) {
    // Values are ordered by increasing x, i.e. x_j = -cos(j pi / N); in the
    // standard ordering T_i(x_j) = (-1)^i cos(i j pi / N).
    const std::size_t n1 = values.size();
    if (n1 < 2) throw DomainError("Chebyshev fit needs at least two samples");
    const std::size_t N = n1 - 1;
    const double Nd = static_cast<double>(N);
    std::vector<double> c(n1, 0.0);
    for (std::size_t i = 0; i <= N; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= N; ++j) {
            const double w = (j == 0 || j == N) ? 0.5 : 1.0;
            const auto phase = static_cast<double>((i * j) % (2 * N));
            acc += w * values[j] * std::cos(std::numbers::pi * phase / Nd);
        }
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double scale = (i == 0 || i == N) ? 1.0 / Nd : 2.0 / Nd;
        c[i] = sign * scale * acc;
    }
    return c;
}

std::vector<double> chebyshev_derivative(std::span<const double> coeffs, double lo, double hi) {
    const std::size_t n = coeffs.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    // d_{i-1} = d_{i+1} + 2 i c_i, with d_0 halved at the end.
    for (std::size_t i = n - 1; i >= 1; --i) {
        const double next = (i + 1 < n) ? d[i + 1] : 0.0;
        d[i - 1] = next + 2.0 * static_cast<double>(i) * coeffs[i];
    }
    d[0] *= 0.5;
    const double scale = 2.0 / (hi - lo);
    for (double& v : d) v *= scale;
    return d;
}

}  // namespace flatring
