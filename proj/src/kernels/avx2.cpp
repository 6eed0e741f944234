#include <cassert>

#include "detail/landen.hpp"
#include "flatring/kernels.hpp"

#if defined(FLATRING_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace flatring::kernels::avx2 {

#if defined(FLATRING_HAVE_AVX2)

namespace {

// Minimax coefficients for sin and cos on [-pi/4, pi/4] (Cephes sin.c).
constexpr double kSin[] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                           2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                           8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCos[] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                           -2.75573141792967388112e-7,  2.48015872888517045348e-5,
                           -1.38888888888730564116e-3,  4.16666666666665929218e-2};

inline __m256d poly6(__m256d z, const double* c) {
    __m256d p = _mm256_set1_pd(c[0]);
    for (int i = 1; i < 6; ++i) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[i]));
    return p;
}

// |x| <= pi/4 (slightly beyond is harmless); no range reduction needed.
inline void sincos_small(__m256d x, __m256d& s, __m256d& c) {
    const __m256d z = _mm256_mul_pd(x, x);
    s = _mm256_fmadd_pd(_mm256_mul_pd(x, z), poly6(z, kSin), x);
    const __m256d half = _mm256_set1_pd(0.5);
    c = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6(z, kCos),
                        _mm256_fnmadd_pd(half, z, _mm256_set1_pd(1.0)));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void jacobi_batch(std::span<const double> u, const Modulus& m, std::span<double> sn,
                  std::span<double> cn, std::span<double> dn) {
    assert(sn.size() == u.size() && cn.size() == u.size() && dn.size() == u.size());
    const detail::LandenTable table = detail::make_landen_table(m.k_prime() * m.k_prime());
    const double K = m.quarter_K();
    const __m256d vK = _mm256_set1_pd(K);
    const __m256d vHalfK = _mm256_set1_pd(0.5 * K);
    const __m256d v2K = _mm256_set1_pd(2.0 * K);
    const __m256d v4K = _mm256_set1_pd(4.0 * K);
    const __m256d vKp = _mm256_set1_pd(m.k_prime());
    const __m256d vScale = _mm256_set1_pd(table.scale);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sign_bit = _mm256_set1_pd(-0.0);

    std::size_t i = 0;
    for (; i + 4 <= u.size(); i += 4) {
        const __m256d U = _mm256_loadu_pd(&u[i]);
        const __m256d q = _mm256_round_pd(_mm256_div_pd(U, v4K), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        const __m256d R = _mm256_fnmadd_pd(q, v4K, U);
        const __m256d sn_neg = _mm256_and_pd(R, sign_bit);
        __m256d V = _mm256_andnot_pd(sign_bit, R);
        const __m256d fold = _mm256_cmp_pd(V, vK, _CMP_GT_OQ);
        V = _mm256_blendv_pd(V, _mm256_sub_pd(v2K, V), fold);
        const __m256d comp = _mm256_cmp_pd(V, vHalfK, _CMP_GT_OQ);
        const __m256d Y = _mm256_blendv_pd(V, _mm256_sub_pd(vK, V), comp);

        __m256d S;
        __m256d C;
        sincos_small(_mm256_mul_pd(Y, vScale), S, C);
        const __m256d at_zero = _mm256_cmp_pd(S, zero, _CMP_EQ_OQ);
        const __m256d S_safe = _mm256_blendv_pd(S, one, at_zero);

        __m256d a = _mm256_div_pd(C, S_safe);
        __m256d c = _mm256_mul_pd(vScale, a);
        __m256d d = one;
        for (int j = table.last; j >= 0; --j) {
            const __m256d b = _mm256_set1_pd(table.mean[j]);
            a = _mm256_mul_pd(a, c);
            c = _mm256_mul_pd(c, d);
            d = _mm256_div_pd(_mm256_add_pd(_mm256_set1_pd(table.geo[j]), a), _mm256_add_pd(b, a));
            a = _mm256_div_pd(c, b);
        }
        const __m256d r = _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_fmadd_pd(c, c, one)));
        __m256d s_out = _mm256_blendv_pd(r, zero, at_zero);
        __m256d c_out = _mm256_blendv_pd(_mm256_mul_pd(c, r), C, at_zero);
        __m256d d_out = _mm256_blendv_pd(d, one, at_zero);

        const __m256d inv_d = _mm256_div_pd(one, d_out);
        const __m256d s_comp = _mm256_mul_pd(c_out, inv_d);
        const __m256d c_comp = _mm256_mul_pd(_mm256_mul_pd(vKp, s_out), inv_d);
        const __m256d d_comp = _mm256_mul_pd(vKp, inv_d);
        s_out = _mm256_blendv_pd(s_out, s_comp, comp);
        c_out = _mm256_blendv_pd(c_out, c_comp, comp);
        d_out = _mm256_blendv_pd(d_out, d_comp, comp);

        s_out = _mm256_xor_pd(s_out, sn_neg);
        c_out = _mm256_xor_pd(c_out, _mm256_and_pd(fold, sign_bit));
        _mm256_storeu_pd(&sn[i], s_out);
        _mm256_storeu_pd(&cn[i], c_out);
        _mm256_storeu_pd(&dn[i], d_out);
    }
    for (; i < u.size(); ++i) {
        const JacobiTriple j = detail::jacobi_reduced(table, u[i], K, m.k_prime());
        sn[i] = j.sn;
        cn[i] = j.cn;
        dn[i] = j.dn;
    }
}

void clenshaw_batch(std::span<const double> coeffs, double lo, double hi,
                    std::span<const double> x, std::span<double> out) {
    assert(out.size() == x.size());
    const std::size_t n = coeffs.size();
    if (n == 0) {
        for (double& o : out) o = 0.0;
        return;
    }
    const __m256d mid = _mm256_set1_pd(0.5 * (lo + hi));
    const __m256d inv_half = _mm256_set1_pd(2.0 / (hi - lo));
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) {
        const __m256d y = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(&x[i]), mid), inv_half);
        const __m256d y2 = _mm256_add_pd(y, y);
        __m256d b1 = _mm256_setzero_pd();
        __m256d b2 = _mm256_setzero_pd();
        for (std::size_t j = n - 1; j >= 1; --j) {
            const __m256d b0 = _mm256_fmadd_pd(y2, b1, _mm256_sub_pd(_mm256_set1_pd(coeffs[j]), b2));
            b2 = b1;
            b1 = b0;
        }
        _mm256_storeu_pd(&out[i], _mm256_fmadd_pd(y, b1, _mm256_sub_pd(_mm256_set1_pd(coeffs[0]), b2)));
    }
    if (i < x.size()) scalar::clenshaw_batch(coeffs, lo, hi, x.subspan(i), out.subspan(i));
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= a.size(); i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]), acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    assert(a.size() == b.size() && w.size() == a.size());
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= a.size(); i += 8) {
        const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&a[i]));
        const __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(&w[i + 4]), _mm256_loadu_pd(&a[i + 4]));
        acc0 = _mm256_fmadd_pd(p0, _mm256_loadu_pd(&b[i]), acc0);
        acc1 = _mm256_fmadd_pd(p1, _mm256_loadu_pd(&b[i + 4]), acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < a.size(); ++i) acc += w[i] * a[i] * b[i];
    return acc;
}

#else

void jacobi_batch(std::span<const double> u, const Modulus& m, std::span<double> sn,
                  std::span<double> cn, std::span<double> dn) {
    scalar::jacobi_batch(u, m, sn, cn, dn);
}
void clenshaw_batch(std::span<const double> coeffs, double lo, double hi,
                    std::span<const double> x, std::span<double> out) {
    scalar::clenshaw_batch(coeffs, lo, hi, x, out);
}
double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    return scalar::weighted_dot(w, a, b);
}

#endif

}  // namespace flatring::kernels::avx2
