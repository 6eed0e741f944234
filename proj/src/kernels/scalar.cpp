#include <cassert>

#include "detail/landen.hpp"
#include "flatring/kernels.hpp"

namespace flatring::kernels::scalar {

void jacobi_batch(std::span<const double> u, const Modulus& m, std::span<double> sn,
                  std::span<double> cn, std::span<double> dn) {
    assert(sn.size() == u.size() && cn.size() == u.size() && dn.size() == u.size());
    const detail::LandenTable table = detail::make_landen_table(m.k_prime() * m.k_prime());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const JacobiTriple j = detail::jacobi_reduced(table, u[i], m.quarter_K(), m.k_prime());
        sn[i] = j.sn;
        cn[i] = j.cn;
        dn[i] = j.dn;
    }
}

void clenshaw_batch(std::span<const double> coeffs, double lo, double hi,
                    std::span<const double> x, std::span<double> out) {
    assert(out.size() == x.size());
    const double mid = 0.5 * (lo + hi);
    const double inv_half = 2.0 / (hi - lo);
    const std::size_t n = coeffs.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (n == 0) {
            out[i] = 0.0;
            continue;
        }
        const double y = (x[i] - mid) * inv_half;
        const double y2 = 2.0 * y;
        double b1 = 0.0;
        double b2 = 0.0;
        for (std::size_t j = n - 1; j >= 1; --j) {
            const double b0 = coeffs[j] + y2 * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        out[i] = coeffs[0] + y * b1 - b2;
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    assert(a.size() == b.size() && w.size() == a.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * a[i] * b[i];
    return acc;
}

}  // namespace flatring::kernels::scalar
