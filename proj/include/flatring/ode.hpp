#pragma once

#include <array>
#include <functional>
#include <span>

namespace flatring {

// Value and first derivative of a solution of y'' = q(x) y.
using LinearState = std::array<double, 2>;

struct OdeTolerance {
    double abs = 1e-13;
    double rel = 1e-13;
};

using Coefficient = std::function<double(double)>;

// Advances y'' = q(x) y from x0 to x1 (either direction) with an adaptive
// embedded Runge-Kutta-Fehlberg 7(8) pair.
LinearState integrate_linear(const Coefficient& q, double x0, double x1, LinearState y0,
                             OdeTolerance tol = {});

// Same system sampled at abscissae xs ordered away from x0 (xs[0] may equal x0).
void integrate_linear_at(const Coefficient& q, double x0, LinearState y0,
                         std::span<const double> xs, std::span<LinearState> out,
                         OdeTolerance tol = {});

// Scalar first-order problem y' = f(x, y) from x0 to x1.
double integrate_scalar(const std::function<double(double, double)>& f, double x0, double x1,
                        double y0, OdeTolerance tol = {});

}  // namespace flatring
