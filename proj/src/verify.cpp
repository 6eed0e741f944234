#include "flatring/verify.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/ellint_1.hpp>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <random>

#include "flatring/coords.hpp"
#include "flatring/dirichlet.hpp"
#include "flatring/error.hpp"
#include "flatring/lame.hpp"
#include "flatring/quadrature.hpp"

namespace flatring::verify {

namespace {

constexpr std::array<std::string_view, 5> kSuites{"elliptic", "lame", "harmonics", "dirichlet", "limits"};
constexpr std::array kFamilies{LameFamily::EcEven, LameFamily::EcOdd, LameFamily::EsOdd, LameFamily::EsEven};

double distance(const CartesianPoint& a, const CartesianPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double norm(const CartesianPoint& a) { return std::hypot(a.x, a.y, a.z); }

// State shared by the suites of one run: the options, the report and the
// Lame tables, which are the expensive part.
class Run {
public:
    explicit Run(const Options& options) : options_(options), modulus_(options.k), rng_(options.seed) {}

    const Modulus& modulus() const { return modulus_; }
    const Options& options() const { return options_; }
    std::mt19937_64& rng() { return rng_; }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    void record(std::string name, double residual, double tolerance) {
        const double tol = options_.tolerance.value_or(tolerance);
        report_.push_back({std::move(name), residual, tol, std::isfinite(residual) && residual <= tol});
    }

    // Records a failed check instead of propagating a library exception.
    void guarded(const std::string& name, double tolerance, const std::function<double()>& body) {
        try {
            record(name, body(), tolerance);
        } catch (const Error&) {
            record(name, std::numeric_limits<double>::infinity(), tolerance);
        }
    }

    const LameTable& small_table() {
        if (!small_) small_ = std::make_unique<LameTable>(modulus_, 3, 4);
        return *small_;
    }
    const LameTable& full_table() {
        if (!full_) {
            full_ = std::make_unique<LameTable>(modulus_, options_.truncation.m_max, options_.truncation.n_max);
        }
        return *full_;
    }

    std::vector<Check> take() { return std::move(report_); }

private:
    Options options_;
    Modulus modulus_;
    std::mt19937_64 rng_;
    std::vector<Check> report_;
    std::unique_ptr<LameTable> small_;
    std::unique_ptr<LameTable> full_;
};

// Residual of the coordinate-line equation relative to its largest term, so
// that cancellation near rho = 1 or mu = 0 is measured at working precision.
double scaled_coordline_residual(const CartesianPoint& q, double a, double lambda) {
    const double r2 = q.x * q.x + q.z * q.z;
    const double largest = std::max({std::abs((r2 + 1.0) * (r2 + 1.0) / (lambda - a)),
                                     std::abs((r2 - 1.0) * (r2 - 1.0) / (lambda - 1.0)), std::abs(4.0 * q.z * q.z / lambda)});
    return std::abs(coordline_residual(q.x, q.z, a, lambda)) / largest;
}

CartesianPoint point_at(const Modulus& m, double s_over_K, double t_over_Kp, double phi) {
    return flatring_to_cartesian(FlatRingPoint::from_st(s_over_K * m.quarter_K(), t_over_Kp * m.quarter_Kp(), phi, m));
}

void elliptic_suite(Run& run) {
    const Modulus& m = run.modulus();
    run.guarded("elliptic.identities", 1e-14, [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const JacobiTriple j = jacobi_real(run.uniform(-8.0, 8.0) * m.quarter_K(), m);
            worst = std::max({worst, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0),
                              std::abs(j.dn * j.dn + m.k() * m.k() * j.sn * j.sn - 1.0)});
        }
        return worst;
    });
    run.guarded("elliptic.quarter_periods", 1e-14, [&] {
        const double K = boost::math::ellint_1(m.k());
        const double Kp = boost::math::ellint_1(m.k_prime());
        return std::max(std::abs(m.quarter_K() - K) / K, std::abs(m.quarter_Kp() - Kp) / Kp);
    });
    const std::array<std::pair<Variant, std::string_view>, 3> variants{
        {{Variant::V1, "v1"}, {Variant::V2, "v2"}, {Variant::V3, "v3"}}};
    for (const auto& [variant, label] : variants) {
        run.guarded("coords.round_trip." + std::string(label), 1e-11, [&] {
            double worst = 0.0;
            for (int i = 0; i < 1000; ++i) {
                double s = 0.0;
                double t = 0.0;
                switch (variant) {
                    case Variant::V1: s = run.uniform(-1.999, 1.999); t = run.uniform(0.001, 0.999); break;
                    case Variant::V2: s = run.uniform(0.001, 1.999); t = run.uniform(-0.999, 0.999); break;
                    case Variant::V3: s = run.uniform(0.001, 3.999); t = run.uniform(0.001, 0.999); break;
                }
                const FlatRingPoint p = FlatRingPoint::from_st(s * m.quarter_K(), t * m.quarter_Kp(),
                                                               run.uniform(-3.1, 3.1), m, variant);
                const CartesianPoint q = flatring_to_cartesian(p);
                const CartesianPoint again = flatring_to_cartesian(cartesian_to_flatring(q, m, variant));
                worst = std::max(worst, distance(q, again) / std::max(1.0, norm(q)));
            }
            return worst;
        });
    }
    run.guarded("coords.coordinate_lines", 1e-12, [&] {
        const double a = 1.0 / (m.k() * m.k());
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const CartesianPoint q = point_at(m, run.uniform(0.01, 0.99), run.uniform(0.01, 0.99), 0.0);
            const AlgebraicFlatRing alg = cartesian_to_algebraic(q, a);
            worst = std::max({worst, scaled_coordline_residual(q, a, alg.mu), scaled_coordline_residual(q, a, alg.rho)});
        }
        return worst;
    });
}

void lame_suite(Run& run) {
    const Modulus& m = run.modulus();
    const double K = m.quarter_K();
    const QuadratureRule rule = gauss_legendre(400, 0.0, K);
    double bracket = 0.0;
    double zeros = 0.0;
    double gram = 0.0;
    for (double nu : {-0.5, 0.5, 1.5, 2.5}) {
        for (LameFamily family : kFamilies) {
            std::vector<std::vector<double>> samples;
            for (int n = 0; n <= 6; ++n) {
                const LameEigenpair e = solve_eigenpair(family, nu, n, m);
                const EigenBracket b = eigen_bracket(family, nu, n, m);
                bracket = std::max({bracket, (b.lo - e.h()) / std::max(1.0, std::abs(e.h())),
                                    (e.h() - b.hi) / std::max(1.0, std::abs(e.h()))});
                zeros = std::max(zeros, static_cast<double>(std::abs(e.pruefer_zero_count() - n)));
                std::vector<double> values(rule.nodes.size());
                e.eval_batch(rule.nodes, values);
                samples.push_back(std::move(values));
            }
            for (std::size_t i = 0; i < samples.size(); ++i) {
                for (std::size_t j = 0; j <= i; ++j) {
                    double dot = 0.0;
                    for (std::size_t q = 0; q < rule.nodes.size(); ++q) dot += rule.weights[q] * samples[i][q] * samples[j][q];
                    gram = std::max(gram, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
            }
        }
    }
    run.record("lame.brackets", std::max(bracket, 0.0), 1e-12);
    run.record("lame.zero_counts", zeros, 0.0);
    run.record("lame.orthonormality", gram, 1e-8);
    run.guarded("lame.wronskian", 1e-9, [&] {
        double worst = 0.0;
        for (double nu : {-0.5, 0.5, 2.5}) {
            for (LameFamily family : kFamilies) {
                const LameSecondKind f(solve_eigenpair(family, nu, 2, m));
                for (int i = 1; i <= 20; ++i) {
                    const double t = m.quarter_Kp() * i / 21.0;
                    const LameValue w = f.base().eval_imag(t);
                    const LameValue g = f.eval_imag(t);
                    worst = std::max(worst, std::abs(g.value * w.derivative - w.value * g.derivative - 1.0));
                }
            }
        }
        return worst;
    });
}

struct HarmonicSample {
    CartesianPoint point;
    HarmonicIndex index;
};

std::complex<double> evaluate(const LameTable& table, const HarmonicSample& smp, const CartesianPoint& q) {
    const bool internal = smp.index.kind == HarmonicKind::Gc || smp.index.kind == HarmonicKind::Gs;
    return internal ? internal_harmonic(table, smp.index, q) : external_harmonic(table, smp.index, q);
}

HarmonicSample random_sample(Run& run, HarmonicKind kind) {
    const bool sine = kind == HarmonicKind::Gs || kind == HarmonicKind::Hs;
    const int m = std::uniform_int_distribution<int>(-3, 3)(run.rng());
    const int n = std::uniform_int_distribution<int>(0, 4)(run.rng()) + (sine ? 1 : 0);
    // Admissible points keep 50 finite-difference steps from the singular set.
    for (;;) {
        const CartesianPoint q = point_at(run.modulus(), run.uniform(-1.95, 1.95), run.uniform(0.05, 0.85),
                                          run.uniform(-3.1, 3.1));
        if (singular_set_distance(kind, run.modulus(), q) >= 0.05) return {q, {m, n, kind}};
    }
}

void harmonics_suite(Run& run) {
    const Modulus& m = run.modulus();
    const double K = m.quarter_K();
    const double Kp = m.quarter_Kp();
    constexpr std::array kinds{HarmonicKind::Gc, HarmonicKind::Gs, HarmonicKind::Hc, HarmonicKind::Hs};
    run.guarded("harmonics.kelvin", 1e-10, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const HarmonicSample smp = random_sample(run, kinds[i % 4]);
            const double r2 = norm(smp.point) * norm(smp.point);
            const CartesianPoint image{smp.point.x / r2, smp.point.y / r2, smp.point.z / r2};
            const bool sine = smp.index.kind == HarmonicKind::Gs || smp.index.kind == HarmonicKind::Hs;
            const std::complex<double> lhs = evaluate(run.small_table(), smp, image);
            const std::complex<double> rhs = (sine ? -1.0 : 1.0) * norm(smp.point) * evaluate(run.small_table(), smp, smp.point);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
        }
        return worst;
    });
    run.guarded("harmonics.reflection", 1e-10, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const HarmonicSample smp = random_sample(run, kinds[i % 4]);
            const bool sine = smp.index.kind == HarmonicKind::Gs || smp.index.kind == HarmonicKind::Hs;
            const int n = smp.index.superscript - (sine ? 1 : 0);
            const std::complex<double> up = evaluate(run.small_table(), smp, smp.point);
            const std::complex<double> down =
                evaluate(run.small_table(), smp, {smp.point.x, smp.point.y, -smp.point.z});
            worst = std::max(worst, std::abs(down - (n % 2 == 0 ? 1.0 : -1.0) * up) / std::max(std::abs(up), 1e-300));
        }
        return worst;
    });
    for (HarmonicKind kind : kinds) {
        static constexpr std::array<std::string_view, 4> labels{"Gc", "Gs", "Hc", "Hs"};
        run.guarded("harmonics.laplacian." + std::string(labels[static_cast<int>(kind)]), 1e-5, [&] {
            constexpr double h = 1e-3;
            double worst = 0.0;
            for (int i = 0; i < 50; ++i) {
                const HarmonicSample smp = random_sample(run, kind);
                std::complex<double> sum = -6.0 * evaluate(run.small_table(), smp, smp.point);
                double scale = std::abs(sum) / 6.0;
                for (int axis = 0; axis < 3; ++axis) {
                    for (double sign : {-1.0, 1.0}) {
                        CartesianPoint nb = smp.point;
                        (axis == 0 ? nb.x : axis == 1 ? nb.y : nb.z) += sign * h;
                        const std::complex<double> v = evaluate(run.small_table(), smp, nb);
                        sum += v;
                        scale = std::max(scale, std::abs(v));
                    }
                }
                worst = std::max(worst, std::abs(sum) / scale);
            }
            return worst;
        });
    }
    run.guarded("harmonics.green_expansion", 1e-8, [&] {
        const CartesianPoint r = point_at(m, 0.7, 0.2, 0.3);
        const CartesianPoint rs = point_at(m, 1.1, 0.6, -0.5);
        const double exact = 1.0 / distance(r, rs);
        return std::abs(green_expansion(run.full_table(), r, rs, run.options().truncation).value - exact) / exact;
    });
    run.guarded("harmonics.toroidal_expansion", 1e-9, [&] {
        const CartesianPoint r = toroidal_to_cartesian({2.0, 0.4, 0.1});
        const CartesianPoint rs = toroidal_to_cartesian({1.0, -0.7, 0.9});
        const double exact = 1.0 / distance(r, rs);
        return std::abs(toroidal_green_expansion(r, rs, run.options().truncation).value - exact) / exact;
    });
    for (int order = 0; order <= 3; ++order) {
        run.guarded("harmonics.addition_theorem.m" + std::to_string(order), 1e-8, [&] {
            const int n_max = order == 0 ? 30 : 25;
            const double rhs = addition_theorem_rhs(m, order, 0.6 * K, 1.3 * K, 0.25 * Kp, 0.65 * Kp, n_max).value;
            const double lhs = addition_theorem_lhs(m, order, 0.6 * K, 1.3 * K, 0.25 * Kp, 0.65 * Kp);
            return std::abs(rhs - lhs) / std::abs(lhs);
        });
    }
    const std::array<std::tuple<std::string, LameKind, double, int, double>, 3> relations{
        {{"harmonics.integral_relation.Ec", LameKind::Ec, 0.5, 0, 1e-7},
         {"harmonics.integral_relation.Es", LameKind::Es, 0.5, 1, 1e-7},
         {"harmonics.integral_relation.real_nu", LameKind::Ec, 0.75, 0, 1e-6}}};
    for (const auto& [name, kind, nu, sup, tol] : relations) {
        run.guarded(name, tol, [&] {
            const IntegralRelation rel = integral_relation_check(m, kind, nu, sup, 0.8 * K, 0.2 * Kp, 0.7 * Kp);
            return std::abs(rel.lhs - rel.rhs) / std::abs(rel.rhs);
        });
    }
}

void dirichlet_suite(Run& run) {
    const Modulus& m = run.modulus();
    const FlatRingDomain domain(m, 0.4 * m.quarter_Kp());
    const CartesianPoint source = point_at(m, 0.9, 0.8, 0.7);
    run.guarded("dirichlet.point_source", 1e-6, [&] {
        const LameTable& table = run.full_table();
        const BoundaryData data{[&](double s, double phi) {
                                    const CartesianPoint r = domain.boundary_point(s, phi);
                                    return std::sqrt(cylindrical_radius(r)) / distance(r, source);
                                },
                                256, 64};
        const DirichletCoefficients c = dirichlet_coefficients(table, domain, data, run.options().truncation);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const CartesianPoint q = point_at(m, run.uniform(-1.9, 1.9), 0.2, run.uniform(-3.1, 3.1));
            const double exact = 1.0 / distance(q, source);
            worst = std::max(worst, std::abs(solve_interior(table, domain, c, q) - exact) / exact);
        }
        return worst;
    });
    run.guarded("dirichlet.integral_representation", 1e-6, [&] {
        const CartesianPoint r_star = point_at(m, 0.5, 0.8, 0.3);
        double worst = 0.0;
        for (HarmonicIndex idx : {HarmonicIndex{1, 0, HarmonicKind::Hc}, HarmonicIndex{1, 1, HarmonicKind::Hs}}) {
            const std::complex<double> direct = external_harmonic(run.small_table(), idx, r_star);
            const std::complex<double> integral = external_from_boundary(run.small_table(), domain, idx, r_star);
            worst = std::max(worst, std::abs(integral - direct) / std::abs(direct));
        }
        return worst;
    });
}

void limits_suite(Run& run) {
    const Modulus tiny(1e-3);
    run.guarded("limits.eigenvalues", 5e-3, [&] {
        double worst = 0.0;
        for (LameKind kind : {LameKind::Ec, LameKind::Es}) {
            for (int sup = kind == LameKind::Ec ? 0 : 1; sup <= 4; ++sup) {
                const LameEigenpair e = solve_eigenpair(family_of(kind, sup), 0.5, zeros_of(kind, sup), tiny);
                worst = std::max(worst, std::abs(e.h() - sup * sup));
            }
        }
        return worst;
    });
    run.guarded("limits.eigenfunctions", 1e-2, [&] {
        double worst = 0.0;
        for (LameKind kind : {LameKind::Ec, LameKind::Es}) {
            for (int sup = kind == LameKind::Ec ? 0 : 1; sup <= 4; ++sup) {
                const LameEigenpair e = solve_eigenpair(family_of(kind, sup), 0.5, zeros_of(kind, sup), tiny);
                const double amplitude = std::sqrt((sup == 0 ? 2.0 : 4.0) / std::numbers::pi);
                for (int i = 0; i <= 100; ++i) {
                    const double s = tiny.quarter_K() * i / 100.0;
                    const double arg = sup * (std::numbers::pi / 2.0 - s);
                    const double limit = amplitude * (kind == LameKind::Ec ? std::cos(arg) : std::sin(arg));
                    worst = std::max(worst, std::abs(e(s) - limit));
                }
            }
        }
        return worst;
    });
    const double ks[] = {0.1, 0.03, 0.01};
    for (auto [order, n] : {std::pair{1, 2}, std::pair{0, 0}, std::pair{2, 1}, std::pair{0, 3}}) {
        // Largest ratio of successive differences; strict decrease means below 1.
        run.guarded("limits.summands.m" + std::to_string(order) + "n" + std::to_string(n), 0.9, [&] {
            const std::vector<LimitRow> rows = limit_comparison(order, n, 1.2, 0.5, 0.4, -0.9, ks);
            double ratio = 0.0;
            for (std::size_t i = 1; i < rows.size(); ++i) ratio = std::max(ratio, rows[i].difference / rows[i - 1].difference);
            return ratio;
        });
    }
}

}  // namespace

std::span<const std::string_view> suite_names() { return kSuites; }

std::vector<Check> run(std::string_view suite, const Options& options) {
    if (!(options.k > 0.0 && options.k < 1.0)) throw DomainError("verify: k must lie in (0, 1)");
    if (options.truncation.m_max < 0 || options.truncation.n_max < 0) throw DomainError("verify: negative truncation");
    const bool all = suite == "all";
    if (!all && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
        throw DomainError("verify: unknown suite '" + std::string(suite) + "'");
    }
    Run state(options);
    if (all || suite == "elliptic") elliptic_suite(state);
    if (all || suite == "lame") lame_suite(state);
    if (all || suite == "harmonics") harmonics_suite(state);
    if (all || suite == "dirichlet") dirichlet_suite(state);
    if (all || suite == "limits") limits_suite(state);
    return state.take();
}

}  // namespace flatring::verify
