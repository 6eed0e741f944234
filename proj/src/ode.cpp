#include "flatring/ode.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <vector>

#include "flatring/error.hpp"

namespace flatring {

namespace odeint = boost::numeric::odeint;

namespace {

// Bulirsch-Stoer: the Fehlberg 7(8) error estimate degenerates on nearly
// quadrature-like right-hand sides such as a scaled Pruefer angle. Its step
// controller only grows steps for positive dt, so every integration runs in
// the forward variable sigma = |x - x0| and maps back.
using Stepper2 = odeint::bulirsch_stoer<LinearState>;
using Stepper1 = odeint::bulirsch_stoer<double>;
using DenseStepper2 = odeint::bulirsch_stoer_dense_out<LinearState>;

constexpr std::size_t kMaxSteps = 2'000'000;

double initial_step(double span) { return std::min(1e-3, 0.01 * span); }

// y = (E, E') in the original variable; derivatives taken in sigma.
auto linear_system(const Coefficient& q, double x0, double dir) {
    return [&q, x0, dir](const LinearState& y, LinearState& dy, double sigma) {
        dy[0] = dir * y[1];
        dy[1] = dir * q(x0 + dir * sigma) * y[0];
    };
}

}  // namespace

LinearState integrate_linear(const Coefficient& q, double x0, double x1, LinearState y0, OdeTolerance tol) {
    if (x0 == x1) return y0;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    const double span = std::abs(x1 - x0);
    Stepper2 stepper(tol.abs, tol.rel);
    const std::size_t steps =
        odeint::integrate_adaptive(stepper, linear_system(q, x0, dir), y0, 0.0, span, initial_step(span));
    if (steps > kMaxSteps) throw ConvergenceError("ODE integration exceeded the step budget", x1);
    return y0;
}

void integrate_linear_at(const Coefficient& q, double x0, LinearState y0, std::span<const double> xs,
                         std::span<LinearState> out, OdeTolerance tol) {
    if (xs.size() != out.size()) throw DomainError("integrate_linear_at: output size mismatch");
    if (xs.empty()) return;
    const double dir = xs.back() >= x0 ? 1.0 : -1.0;
    std::vector<double> times;
    times.reserve(xs.size() + 1);
    const bool prepend = xs.front() != x0;
    if (prepend) times.push_back(0.0);
    for (double x : xs) times.push_back(dir * (x - x0));
    if (times.back() == 0.0) {
        for (auto& o : out) o = y0;
        return;
    }
    std::size_t seen = 0;
    auto observer = [&](const LinearState& y, double) {
        if (prepend && seen == 0) {
            ++seen;
            return;
        }
        out[seen - (prepend ? 1 : 0)] = y;
        ++seen;
    };
    DenseStepper2 stepper(tol.abs, tol.rel);
    odeint::integrate_times(stepper, linear_system(q, x0, dir), y0, times.begin(), times.end(),
                            initial_step(times.back()), observer);
}

double integrate_scalar(const std::function<double(double, double)>& f, double x0, double x1, double y0,
                        OdeTolerance tol) {
    if (x0 == x1) return y0;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    const double span = std::abs(x1 - x0);
    auto system = [&f, x0, dir](const double& y, double& dy, double sigma) { dy = dir * f(x0 + dir * sigma, y); };
    Stepper1 stepper(tol.abs, tol.rel);
    double y = y0;
    odeint::integrate_adaptive(stepper, system, y, 0.0, span, initial_step(span));
    return y;
}

}  // namespace flatring
