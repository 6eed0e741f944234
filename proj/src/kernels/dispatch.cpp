#include <cstdlib>
#include <string_view>

#include "flatring/kernels.hpp"

namespace flatring::kernels {

bool avx2_available() {
#if defined(FLATRING_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Isa active_isa() {
    static const Isa isa = [] {
        if (const char* forced = std::getenv("FLATRING_ISA"); forced != nullptr && std::string_view(forced) == "scalar") {
            return Isa::Scalar;
        }
        return avx2_available() ? Isa::Avx2 : Isa::Scalar;
    }();
    return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void jacobi_batch(std::span<const double> u, const Modulus& m, std::span<double> sn,
                  std::span<double> cn, std::span<double> dn) {
    if (active_isa() == Isa::Avx2) return avx2::jacobi_batch(u, m, sn, cn, dn);
    scalar::jacobi_batch(u, m, sn, cn, dn);
}

void clenshaw_batch(std::span<const double> coeffs, double lo, double hi,
                    std::span<const double> x, std::span<double> out) {
    if (active_isa() == Isa::Avx2) return avx2::clenshaw_batch(coeffs, lo, hi, x, out);
    scalar::clenshaw_batch(coeffs, lo, hi, x, out);
}

double dot(std::span<const double> a, std::span<const double> b) {
    return active_isa() == Isa::Avx2 ? avx2::dot(a, b) : scalar::dot(a, b);
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    return active_isa() == Isa::Avx2 ? avx2::weighted_dot(w, a, b) : scalar::weighted_dot(w, a, b);
}

}  // namespace flatring::kernels
