#pragma once

#include <vector>

#include "flatring/elliptic.hpp"
#include "flatring/lame.hpp"

namespace oracle {

// Eigenvalues of -E'' + nu(nu+1) k^2 sn^2(s) E = h E restricted to one Lame
// family, from a truncated Fourier basis (cosines or sines of the family's
// parity and period). The potential comes from Boost's Jacobi functions, so the
// result is independent of the library's own elliptic code. Sorted ascending;
// entry n has n zeros in (0, K).
std::vector<double> hill_eigenvalues(flatring::LameFamily family, double nu, const flatring::Modulus& m, int count,
                                     int basis = 96);

}  // namespace oracle
