#include "flatring/lame.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "detail/landen.hpp"
#include "flatring/error.hpp"
#include "flatring/kernels.hpp"
#include "flatring/ode.hpp"
#include "flatring/quadrature.hpp"

namespace flatring {

namespace {

constexpr OdeTolerance kOdeTol{1e-13, 1e-13};
constexpr int kNormNodes = 256;
constexpr double kTailTol = 1e-12;  // ODE noise floor sits near 1e-13

struct FamilyTraits {
    bool zero_at_0;      // E(0) = 0, otherwise E'(0) = 0
    bool zero_at_K;      // E(K) = 0, otherwise E'(K) = 0
    double period_sign;  // E(s + 2K) = period_sign * E(s)
    double reflect_sign; // E(2K - s) = reflect_sign * E(s)
};

FamilyTraits traits(LameFamily f) {
    switch (f) {
        case LameFamily::EcEven: return {false, false, 1.0, 1.0};
        case LameFamily::EcOdd: return {true, false, -1.0, 1.0};
        case LameFamily::EsOdd: return {false, true, -1.0, -1.0};
        case LameFamily::EsEven: return {true, true, 1.0, -1.0};
    }
    return {false, false, 1.0, 1.0};
}

// nu(nu+1) k^2 sn^2(s, k) on the real axis.
class RealPotential {
public:
    RealPotential(double nu, const Modulus& m)
        : table_(detail::make_landen_table(m.k_prime() * m.k_prime())),
          K_(m.quarter_K()),
          kp_(m.k_prime()),
          coef_(nu * (nu + 1.0) * m.k() * m.k()) {}

    double operator()(double s) const {
        const JacobiTriple j = detail::jacobi_reduced(table_, s, K_, kp_);
        return coef_ * j.sn * j.sn;
    }
    double coef() const { return coef_; }

private:
    detail::LandenTable table_;
    double K_;
    double kp_;
    double coef_;
};

// Jacobi functions of modulus k' (the imaginary-axis and axis-side variables).
class ComplementJacobi {
public:
    explicit ComplementJacobi(const Modulus& m)
        : table_(detail::make_landen_table(m.k() * m.k())), K_(m.quarter_Kp()), kp_(m.k()) {}
    JacobiTriple operator()(double u) const { return detail::jacobi_reduced(table_, u, K_, kp_); }

private:
    detail::LandenTable table_;
    double K_;
    double kp_;
};

double pruefer_rhs(double s, double theta, double h, double scale, const RealPotential& v) {
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    return scale * c * c + (h - v(s)) / scale * sn * sn;
}

struct ShootingSetup {
    FamilyTraits tr;
    double K;
    double match;
    double scale;
    double theta0;
    double target;
};

struct PrueferEnds {
    double left;
    double right;
};

PrueferEnds pruefer_ends(const ShootingSetup& st, const RealPotential& v, double h) {
    auto rhs = [&](double s, double th) { return pruefer_rhs(s, th, h, st.scale, v); };
    const double left = integrate_scalar(rhs, 0.0, st.match, st.theta0, kOdeTol);
    const double right = integrate_scalar(rhs, st.K, st.match, st.target, kOdeTol);
    return {left, right};
}

// Matching point between forward and backward sweeps: the classical turning
// point of the bracket midpoint, kept away from both ends.
double matching_point(double h_mid, double coef, const Modulus& m) {
    const double K = m.quarter_K();
    if (coef > 0.0 && h_mid < coef && h_mid > 0.0) {
        const double turn = boost::math::ellint_1(m.k(), std::asin(std::sqrt(h_mid / coef)));
        return std::clamp(turn, 0.1 * K, 0.9 * K);
    }
    if (coef > 0.0 && h_mid <= 0.0) return 0.1 * K;
    return 0.5 * K;
}

// Samples of E and E' at the given increasing nodes on [0, K] for eigenvalue h,
// stitched from a forward sweep on [0, match] and a backward sweep on [match, K].
void sample_eigenfunction(const ShootingSetup& st, const RealPotential& v, double h,
                          std::span<const double> nodes, std::vector<double>& value,
                          std::vector<double>& slope) {
    const Coefficient q = [&v, h](double s) { return v(s) - h; };
    std::vector<double> left_nodes;
    std::vector<double> right_nodes;
    for (double x : nodes) (x <= st.match ? left_nodes : right_nodes).push_back(x);
    left_nodes.push_back(st.match);
    std::vector<double> right_desc(right_nodes.rbegin(), right_nodes.rend());
    right_desc.push_back(st.match);

    const LinearState left0 = st.tr.zero_at_0 ? LinearState{0.0, 1.0} : LinearState{1.0, 0.0};
    const LinearState right0 = st.tr.zero_at_K ? LinearState{0.0, -1.0} : LinearState{1.0, 0.0};
    std::vector<LinearState> left_out(left_nodes.size());
    std::vector<LinearState> right_out(right_desc.size());
    integrate_linear_at(q, 0.0, left0, left_nodes, left_out, kOdeTol);
    integrate_linear_at(q, st.K, right0, right_desc, right_out, kOdeTol);

    const LinearState& a = left_out.back();
    const LinearState& b = right_out.back();
    const double w = 1.0 / (st.scale * st.scale);
    const double factor = (a[0] * b[0] + w * a[1] * b[1]) / (b[0] * b[0] + w * b[1] * b[1]);

    value.assign(nodes.size(), 0.0);
    slope.assign(nodes.size(), 0.0);
    std::size_t i = 0;
    for (std::size_t j = 0; j + 1 < left_out.size(); ++j, ++i) {
        value[i] = left_out[j][0];
        slope[i] = left_out[j][1];
    }
    for (std::size_t j = right_nodes.size(); j-- > 0; ++i) {
        value[i] = factor * right_out[j][0];
        slope[i] = factor * right_out[j][1];
    }
    if (st.tr.zero_at_0) value.front() = 0.0;
    else slope.front() = 0.0;
    if (st.tr.zero_at_K) value.back() = 0.0;
    else slope.back() = 0.0;
}

double tail_ratio(const std::vector<double>& c) {
    double peak = 0.0;
    for (double v : c) peak = std::max(peak, std::abs(v));
    const std::size_t n = c.size();
    const double tail = std::max({std::abs(c[n - 1]), std::abs(c[n - 2]), std::abs(c[n - 3])});
    return peak > 0.0 ? tail / peak : 0.0;
}

}  // namespace

std::string_view family_name(LameFamily f) {
    switch (f) {
        case LameFamily::EcEven: return "EcEven";
        case LameFamily::EcOdd: return "EcOdd";
        case LameFamily::EsOdd: return "EsOdd";
        case LameFamily::EsEven: return "EsEven";
    }
    return "?";
}

bool family_is_odd(LameFamily f) { return traits(f).zero_at_0; }

LameKind kind_of(LameFamily family) {
    return (family == LameFamily::EcEven || family == LameFamily::EcOdd) ? LameKind::Ec : LameKind::Es;
}

LameFamily family_of(LameKind kind, int superscript) {
    if (kind == LameKind::Ec) {
        if (superscript < 0) throw DomainError("Ec superscript must be non-negative");
        return superscript % 2 == 0 ? LameFamily::EcEven : LameFamily::EcOdd;
    }
    if (superscript < 1) throw DomainError("Es superscript must be at least 1");
    return superscript % 2 == 1 ? LameFamily::EsOdd : LameFamily::EsEven;
}

int zeros_of(LameKind kind, int superscript) {
    family_of(kind, superscript);
    return kind == LameKind::Ec ? superscript / 2 : (superscript - 1) / 2;
}

int superscript_of(LameFamily family, int zeros) {
    switch (family) {
        case LameFamily::EcEven: return 2 * zeros;
        case LameFamily::EcOdd: return 2 * zeros + 1;
        case LameFamily::EsOdd: return 2 * zeros + 1;
        case LameFamily::EsEven: return 2 * zeros + 2;
    }
    return 0;
}

EigenBracket eigen_bracket(LameFamily family, double nu, int zeros, const Modulus& m) {
    if (nu < -0.5) throw DomainError("Lame degree nu must be at least -1/2");
    if (zeros < 0) throw DomainError("zero count must be non-negative");
    const double N = superscript_of(family, zeros);
    const double base = std::numbers::pi * std::numbers::pi * N * N / (4.0 * m.quarter_K() * m.quarter_K());
    const double shift = nu * (nu + 1.0) * m.k() * m.k();
    return shift >= 0.0 ? EigenBracket{base, base + shift} : EigenBracket{base + shift, base};
}

LameEigenpair solve_eigenpair(LameFamily family, double nu, int zeros, const Modulus& m) {
    const EigenBracket bracket = eigen_bracket(family, nu, zeros, m);
    const RealPotential potential(nu, m);
    const FamilyTraits tr = traits(family);
    const double K = m.quarter_K();

    ShootingSetup st{};
    st.tr = tr;
    st.K = K;
    const double h_mid = 0.5 * (bracket.lo + bracket.hi);
    st.match = matching_point(h_mid, potential.coef(), m);
    st.scale = std::sqrt(std::max(1.0, std::abs(bracket.hi)));
    st.theta0 = tr.zero_at_0 ? 0.0 : 0.5 * std::numbers::pi;
    st.target = tr.zero_at_K ? (zeros + 1) * std::numbers::pi : (zeros + 0.5) * std::numbers::pi;

    auto residual = [&](double h) {
        const PrueferEnds e = pruefer_ends(st, potential, h);
        return e.left - e.right;
    };

    double lo = bracket.lo;
    double hi = bracket.hi;
    const double pad = 1e-9 * std::max(1.0, std::abs(hi));
    lo -= pad;
    hi += pad;
    double f_lo = residual(lo);
    double f_hi = residual(hi);
    const double width = std::max(hi - lo, 1e-3 * std::max(1.0, std::abs(hi)));
    for (int i = 0; i < 8 && f_lo > 0.0; ++i) {
        lo -= width * (1 << i);
        f_lo = residual(lo);
    }
    for (int i = 0; i < 8 && f_hi < 0.0; ++i) {
        hi += width * (1 << i);
        f_hi = residual(hi);
    }
    if (f_lo > 0.0 || f_hi < 0.0) {
        throw BracketError("no eigenvalue of " + std::string(family_name(family)) + " with " + std::to_string(zeros) +
                               " zeros inside the bracket",
                           lo, hi);
    }

    double h = 0.0;
    if (f_lo == 0.0) {
        h = lo;
    } else if (f_hi == 0.0) {
        h = hi;
    } else {
        std::uintmax_t iters = 100;
        const auto root = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi,
                                                            boost::math::tools::eps_tolerance<double>(42), iters);
        h = 0.5 * (root.first + root.second);
        if (iters >= 100) throw ConvergenceError("eigenvalue iteration did not converge", root.second - root.first);
    }
    LameEigenpair pair(family, nu, zeros, m);
    pair.h_ = h;
    {
        const PrueferEnds e = pruefer_ends(st, potential, h);
        const double total = e.left + (st.target - e.right);
        int count = 0;
        const double end = tr.zero_at_K ? total - 0.5 * std::numbers::pi : total;
        for (int j = 1; j * std::numbers::pi < end; ++j) ++count;
        pair.pruefer_zeros_ = count;
    }

    std::vector<double> value;
    std::vector<double> slope;
    std::vector<double> vc;
    std::vector<double> sc;
    for (int degree = 64;; degree *= 2) {
        const std::vector<double> nodes = chebyshev_lobatto_points(degree, 0.0, K);
        sample_eigenfunction(st, potential, h, nodes, value, slope);
        vc = chebyshev_coefficients(value);
        sc = chebyshev_coefficients(slope);
        if (std::max(tail_ratio(vc), tail_ratio(sc)) <= kTailTol || degree >= 1024) break;
    }

    // Unit norm on [0, K]; Ec positive at K, Es decreasing through K.
    const QuadratureRule rule = gauss_legendre(kNormNodes, 0.0, K);
    std::vector<double> at_nodes(rule.nodes.size());
    kernels::clenshaw_batch(vc, 0.0, K, rule.nodes, at_nodes);
    const double norm2 = kernels::weighted_dot(rule.weights, at_nodes, at_nodes);
    double scale = 1.0 / std::sqrt(norm2);
    const bool flip = tr.zero_at_K ? slope.back() > 0.0 : value.back() < 0.0;
    if (flip) scale = -scale;
    for (double& c : vc) c *= scale;
    for (double& c : sc) c *= scale;
    pair.norm_scale_ = scale;
    pair.value_coeffs_ = std::move(vc);
    pair.slope_coeffs_ = std::move(sc);
    pair.e0_ = tr.zero_at_0 ? 0.0 : scale * value.front();
    pair.de0_ = tr.zero_at_0 ? scale * slope.front() : 0.0;
    return pair;
}

LameValue LameEigenpair::eval(double s) const {
    if (!std::isfinite(s)) throw DomainError("Lame function evaluated at a non-finite argument");
    const FamilyTraits tr = traits(family_);
    const double K = modulus_.quarter_K();
    const double period = 2.0 * K;
    const double q = std::floor(s / period);
    double r = s - q * period;
    double sign = 1.0;
    if (tr.period_sign < 0.0 && std::fmod(std::abs(q), 2.0) == 1.0) sign = -1.0;
    double dsign = sign;
    if (r > K) {
        r = period - r;
        sign *= tr.reflect_sign;
        dsign = -sign;
    }
    r = std::clamp(r, 0.0, K);
    const double x[1] = {r};
    double v[1];
    double d[1];
    kernels::scalar::clenshaw_batch(value_coeffs_, 0.0, K, x, v);
    kernels::scalar::clenshaw_batch(slope_coeffs_, 0.0, K, x, d);
    return {sign * v[0], dsign * d[0]};
}

void LameEigenpair::eval_batch(std::span<const double> s, std::span<double> out) const {
    if (s.size() != out.size()) throw DomainError("eval_batch: size mismatch");
    const FamilyTraits tr = traits(family_);
    const double K = modulus_.quarter_K();
    const double period = 2.0 * K;
    std::vector<double> reduced(s.size());
    std::vector<double> signs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double q = std::floor(s[i] / period);
        double r = s[i] - q * period;
        double sign = (tr.period_sign < 0.0 && std::fmod(std::abs(q), 2.0) == 1.0) ? -1.0 : 1.0;
        if (r > K) {
            r = period - r;
            sign *= tr.reflect_sign;
        }
        reduced[i] = std::clamp(r, 0.0, K);
        signs[i] = sign;
    }
    kernels::clenshaw_batch(value_coeffs_, 0.0, K, reduced, out);
    for (std::size_t i = 0; i < s.size(); ++i) out[i] *= signs[i];
}

LameValue LameEigenpair::eval_imag(double t) const {
    const double Kp = modulus_.quarter_Kp();
    if (!(std::abs(t) < Kp - kPoleGuard)) throw PoleError("Lame function on the imaginary axis at the pole t = K'");
    const double sign = (t < 0.0 && odd()) ? -1.0 : 1.0;
    const double at = std::abs(t);
    const ComplementJacobi cj(modulus_);
    const double coef = nu_ * (nu_ + 1.0) * modulus_.k() * modulus_.k();
    const double h = h_;
    const Coefficient q = [&cj, coef, h](double x) {
        const JacobiTriple j = cj(x);
        const double sc = j.sn / j.cn;
        return h + coef * sc * sc;
    };
    const LinearState end = integrate_linear(q, 0.0, at, {e0_, de0_}, kOdeTol);
    // W is even or odd in t with the family; its derivative has the other parity.
    return {sign * end[0], (odd() ? 1.0 : sign) * end[1]};
}

LameSecondKind::LameSecondKind(LameEigenpair base) : base_(std::move(base)) {
    const Modulus& m = base_.modulus();
    const double nu = base_.nu();
    const double h = base_.h();
    const double nn = nu * (nu + 1.0);
    nu_half_ = nu == -0.5;

    const std::vector<double> a = ns2_series_coeffs(m, kNs2MaxTerms);
    std::vector<double> p(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) p[j] = nn * a[j];
    p[1] += h - nn;
    coeffs_.assign(a.size(), 0.0);
    coeffs_[0] = 1.0;
    for (std::size_t j = 1; j < a.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= j; ++i) acc += p[i] * coeffs_[j - i];
        const double jd = static_cast<double>(j);
        coeffs_[j] = acc / (2.0 * jd * (2.0 * jd + 2.0 * nu + 1.0));
    }

    tau0_ = std::min(0.1 * m.quarter_Kp(), 0.5 * ns2_safe_radius(m));
    const double x = tau0_ * tau0_;
    double sum = 0.0;
    double last = 0.0;
    double power = 1.0;
    for (double c : coeffs_) {
        last = c * power;
        sum += last;
        power *= x;
    }
    if (std::abs(last) > 1e-16 * std::abs(sum)) {
        throw ConvergenceError("Frobenius series not converged at the handoff point", std::abs(last / sum));
    }
    handoff_ = series(tau0_);

    const double t_mid = 0.5 * m.quarter_Kp();
    const LameValue W = base_.eval_imag(t_mid);
    const LameValue w = frobenius(m.quarter_Kp() - t_mid);
    scale_ = 1.0 / (w.value * W.derivative + W.value * w.derivative);
}

LameValue LameSecondKind::series(double tau) const {
    const double nu = base_.nu();
    const double x = tau * tau;
    double s = 0.0;
    double ds = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
        s = s * x + coeffs_[j];
        if (j >= 1) ds = ds * x + static_cast<double>(j) * coeffs_[j];
    }
    // d/dtau sum c_j x^j = 2 tau sum j c_j x^(j-1)
    const double lead = std::pow(tau, nu + 1.0);
    const double value = lead * s;
    const double derivative = (nu + 1.0) * std::pow(tau, nu) * s + lead * 2.0 * tau * ds;
    return {value, derivative};
}

LameValue LameSecondKind::frobenius(double tau) const {
    const Modulus& m = base_.modulus();
    if (!(tau > 0.0) || !(tau <= m.quarter_Kp())) throw PoleError("second-kind Lame function needs 0 < K' - t <= K'");
    if (tau <= tau0_) return series(tau);
    const ComplementJacobi cj(m);
    const double nn = base_.nu() * (base_.nu() + 1.0);
    const double h = base_.h();
    const Coefficient q = [&cj, nn, h](double x) {
        const JacobiTriple j = cj(x);
        const double cs = j.cn / j.sn;
        return h + nn * cs * cs;
    };
    // w(tau0) can be far below the absolute tolerance; continue from unit value.
    const LinearState end = integrate_linear(q, tau0_, tau, {1.0, handoff_.derivative / handoff_.value}, kOdeTol);
    return {handoff_.value * end[0], handoff_.value * end[1]};
}

LameValue LameSecondKind::eval_tau(double tau) const {
    const LameValue w = frobenius(tau);
    return {scale_ * w.value, -scale_ * w.derivative};
}

LameTable::LameTable(const Modulus& m, int m_max, int n_max, int threads)
    : modulus_(m), m_max_(m_max), n_max_(n_max) {
    if (m_max < 0 || n_max < 0) throw DomainError("LameTable needs non-negative truncation");
    struct Job {
        int abs_m;
        LameKind kind;
        int superscript;
    };
    std::vector<Job> jobs;
    for (int am = 0; am <= m_max; ++am) {
        for (int n = 0; n <= n_max; ++n) {
            jobs.push_back({am, LameKind::Ec, n});
            jobs.push_back({am, LameKind::Es, n + 1});
        }
    }
    entries_.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                const Job& j = jobs[i];
                const double nu = j.abs_m - 0.5;
                LameEigenpair pair = solve_eigenpair(family_of(j.kind, j.superscript), nu, zeros_of(j.kind, j.superscript), m);
                entries_[index(j.abs_m, j.kind, j.superscript)] = std::make_unique<const LameSecondKind>(std::move(pair));
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned count = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    count = std::min<unsigned>(count, static_cast<unsigned>(jobs.size()));
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

std::size_t LameTable::index(int abs_m, LameKind kind, int superscript) const {
    const int n = kind == LameKind::Ec ? superscript : superscript - 1;
    return (static_cast<std::size_t>(abs_m) * static_cast<std::size_t>(n_max_ + 1) + static_cast<std::size_t>(n)) * 2 +
           (kind == LameKind::Ec ? 0 : 1);
}

const LameSecondKind& LameTable::get(int abs_m, LameKind kind, int superscript) const {
    const int n = kind == LameKind::Ec ? superscript : superscript - 1;
    if (abs_m < 0 || abs_m > m_max_ || n < 0 || n > n_max_) throw DomainError("LameTable: index outside the built range");
    return *entries_[index(abs_m, kind, superscript)];
}

}  // namespace flatring
