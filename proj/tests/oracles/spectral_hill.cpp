#include "oracles/spectral_hill.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numbers>

namespace oracle {

std::vector<double> hill_eigenvalues(flatring::LameFamily family, double nu, const flatring::Modulus& m, int count,
                                     int basis) {
    using flatring::LameFamily;
    const double K = m.quarter_K();
    const double coef = nu * (nu + 1.0) * m.k() * m.k();
    // x = pi s / (2K); basis functions cos(w x) or sin(w x) with w of fixed parity.
    const bool cosine = family == LameFamily::EcEven || family == LameFamily::EsOdd;
    auto wavenumber = [&](int j) {
        switch (family) {
            case LameFamily::EcEven: return 2 * j;
            case LameFamily::EcOdd: return 2 * j + 1;
            case LameFamily::EsOdd: return 2 * j + 1;
            case LameFamily::EsEven: return 2 * j + 2;
        }
        return 0;
    };
    const int samples = 8 * basis + 64;
    std::vector<double> xs(samples);
    std::vector<double> pot(samples);
    for (int i = 0; i < samples; ++i) {
        xs[i] = 2.0 * std::numbers::pi * i / samples;
        const double sn = boost::math::jacobi_sn(m.k(), xs[i] * 2.0 * K / std::numbers::pi);
        pot[i] = coef * sn * sn;
    }
    auto phi = [&](int j, double x) {
        const double w = wavenumber(j);
        if (cosine && w == 0) return std::sqrt(0.5);
        return cosine ? std::cos(w * x) : std::sin(w * x);
    };
    Eigen::MatrixXd A(basis, basis);
    const double scale = std::numbers::pi / (2.0 * K);
    for (int a = 0; a < basis; ++a) {
        for (int b = a; b < basis; ++b) {
            double acc = 0.0;
            for (int i = 0; i < samples; ++i) acc += phi(a, xs[i]) * pot[i] * phi(b, xs[i]);
            acc *= 2.0 / samples;  // (1/pi) * integral over [0, 2 pi]
            if (a == b) acc += scale * scale * wavenumber(a) * wavenumber(a);
            A(a, b) = acc;
            A(b, a) = acc;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

}  // namespace oracle
