#pragma once

#include <string_view>
#include <vector>

namespace flatring {

// Elliptic modulus k with its complement and both quarter periods.
// Immutable after construction; K and K' are computed by the AGM.
class Modulus {
public:
    explicit Modulus(double k);

    double k() const noexcept { return k_; }
    double k_prime() const noexcept { return kp_; }
    double quarter_K() const noexcept { return K_; }
    double quarter_Kp() const noexcept { return Kp_; }

    // Modulus k' (roles of k and k' exchanged, so K and K' swap too).
    Modulus complement() const noexcept;

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    Modulus(double k, double kp, double K, double Kp) : k_(k), kp_(kp), K_(K), Kp_(Kp) {}

    double k_;
    double kp_;
    double K_;
    double Kp_;
};

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

// Real quantities (-i sn(it,k), cn(it,k), dn(it,k)) = (sc, nc, dc)(t, k').
struct ImaginaryTriple {
    double sc;
    double nc;
    double dc;
};

// Arithmetic-geometric mean of positive a and b.
double agm(double a, double b);

// Complete elliptic integral of the first kind, 0 <= k < 1.
double complete_K(double k);

// (sn, cn, dn)(u, k) for any finite u.
JacobiTriple jacobi_real(double u, const Modulus& m);

// (sn, cn, dn)(K - v, k), accurate when v is small.
JacobiTriple jacobi_complement(double v, const Modulus& m);

// Values on the imaginary axis; |t| must stay 1e-10 away from K'.
ImaginaryTriple jacobi_imag(double t, const Modulus& m);

// Quotient function named by a two-letter Glaisher code ("sc", "nd", "ds",
// ...) at argument u and modulus k. Throws PoleError at zeros of the
// denominator.
double glaisher(double u, double k, std::string_view code);

// Even Taylor coefficients of tau^2 ns^2(tau, k') about tau = 0, so that
// tau^2 ns^2 = sum_j c[j] tau^(2j). count is limited to 64.
std::vector<double> ns2_series_coeffs(const Modulus& m, int count);

inline constexpr int kNs2MaxTerms = 64;

// Disc radius on which the ns2 series may be summed: half the distance to the
// nearest singularity of ns^2(tau, k').
double ns2_safe_radius(const Modulus& m);

inline constexpr double kPoleGuard = 1e-10;

}  // namespace flatring
