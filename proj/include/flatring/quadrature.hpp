#pragma once

#include <span>
#include <vector>

namespace flatring {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]. Rules are computed once per n and
// shared; the returned reference stays valid for the program lifetime.
const QuadratureRule& gauss_legendre(int n);

// Gauss-Legendre rule affinely mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Chebyshev-Lobatto points x_j = mid - half*cos(j*pi/degree), j = 0..degree,
// listed in increasing order on [lo, hi].
std::vector<double> chebyshev_lobatto_points(int degree, double lo, double hi);

// Coefficients c_j of the interpolant sum_j c_j T_j through values sampled at
// chebyshev_lobatto_points(degree, ...).
std::vector<double> chebyshev_coefficients(std::span<const double> values);

// Coefficients of the derivative series on [lo, hi].
std::vector<double> chebyshev_derivative(std::span<const double> coeffs, double lo, double hi);

}  // namespace flatring
