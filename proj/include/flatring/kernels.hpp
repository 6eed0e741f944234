#pragma once

#include <span>
#include <string_view>

#include "flatring/elliptic.hpp"

// Batched hot loops with a scalar reference implementation and an AVX2/FMA
// variant chosen once at runtime. Both variants agree to a few ulp.
namespace flatring::kernels {

enum class Isa { Scalar, Avx2 };

// Instruction set used by the dispatching entry points. Detected from the CPU
// on first use; FLATRING_ISA=scalar in the environment forces the reference path.
Isa active_isa();
std::string_view isa_name(Isa isa);
bool avx2_available();

// sn, cn, dn at every u (any finite value). All spans have equal length.
void jacobi_batch(std::span<const double> u, const Modulus& m, std::span<double> sn,
                  std::span<double> cn, std::span<double> dn);

// Chebyshev series sum_j coeffs[j] T_j(x') with x' the affine image of x from
// [lo, hi] onto [-1, 1]. out.size() == x.size().
void clenshaw_batch(std::span<const double> coeffs, double lo, double hi,
                    std::span<const double> x, std::span<double> out);

// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

// sum_i w[i] * a[i] * b[i]
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);

namespace scalar {
void jacobi_batch(std::span<const double> u, const Modulus& m, std::span<double> sn,
                  std::span<double> cn, std::span<double> dn);
void clenshaw_batch(std::span<const double> coeffs, double lo, double hi,
                    std::span<const double> x, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
}  // namespace scalar

namespace avx2 {
void jacobi_batch(std::span<const double> u, const Modulus& m, std::span<double> sn,
                  std::span<double> cn, std::span<double> dn);
void clenshaw_batch(std::span<const double> coeffs, double lo, double hi,
                    std::span<const double> x, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
}  // namespace avx2

}  // namespace flatring::kernels
