// Command-line front end: eigenvalues, coordinates, expansions, verification
// suites and the interior Dirichlet solver.
//
// Exit codes: 0 success, 1 verification or solver failure, 2 usage or domain
// error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flatring/coords.hpp"
#include "flatring/dirichlet.hpp"
#include "flatring/error.hpp"
#include "flatring/harmonics.hpp"
#include "flatring/lame.hpp"
#include "flatring/verify.hpp"

using namespace flatring;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    double k = 0.5;
    int m_max = 20;
    int n_max = 20;
    std::optional<double> tol;
    std::string format = "json";
    std::uint64_t seed = 1;
};

// Parse error carrying its own exit status.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Triple {
    double a;
    double b;
    double c;
};

Triple parse_triple(const std::string& text, const std::string& what) {
    std::stringstream in(text);
    std::array<double, 3> v{};
    for (int i = 0; i < 3; ++i) {
        std::string field;
        if (!std::getline(in, field, ',')) throw UsageError(what + ": expected three comma-separated numbers");
        try {
            std::size_t used = 0;
            v[i] = std::stod(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw UsageError(what + ": '" + field + "' is not a number");
        }
    }
    std::string rest;
    if (std::getline(in, rest) && !rest.empty()) throw UsageError(what + ": more than three fields");
    return {v[0], v[1], v[2]};
}

// Columns plus rows, printed as a JSON array of objects or as CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    json to_json() const {
        json out = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
            out.push_back(std::move(obj));
        }
        return out;
    }

    void write_csv(std::ostream& os) const {
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "");
                if (row[i].is_string()) {
                    os << row[i].get<std::string>();
                } else {
                    os << row[i].dump();
                }
            }
            os << '\n';
        }
    }
};

void emit(const RunConfig& cfg, const json& document, const std::vector<const Table*>& csv_blocks) {
    if (cfg.format == "json") {
        std::cout << document.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < csv_blocks.size(); ++i) {
        if (i) std::cout << '\n';
        csv_blocks[i]->write_csv(std::cout);
    }
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

CartesianPoint flatring_point(const Modulus& m, const Triple& scaled) {
    return flatring_to_cartesian(
        FlatRingPoint::from_st(scaled.a * m.quarter_K(), scaled.b * m.quarter_Kp(), scaled.c, m));
}

double distance(const CartesianPoint& a, const CartesianPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

// ---- eigen ---------------------------------------------------------------

struct EigenArgs {
    std::string kind = "both";
    double nu = 0.5;
    int from = 0;
    int to = 4;
};

int cmd_eigen(const RunConfig& cfg, const EigenArgs& args) {
    const Modulus m(cfg.k);
    if (args.from < 0 || args.to < args.from) throw UsageError("eigen: need 0 <= --from <= --to");
    Table table{{"kind", "superscript", "family", "zeros", "h", "bracket_lo", "bracket_hi", "in_bracket",
                 "pruefer_zeros"},
                {}};
    for (LameKind kind : {LameKind::Ec, LameKind::Es}) {
        if (args.kind != "both" && args.kind != (kind == LameKind::Ec ? "Ec" : "Es")) continue;
        for (int sup = std::max(args.from, kind == LameKind::Es ? 1 : 0); sup <= args.to; ++sup) {
            const LameFamily family = family_of(kind, sup);
            const int zeros = zeros_of(kind, sup);
            const LameEigenpair e = solve_eigenpair(family, args.nu, zeros, m);
            const EigenBracket b = eigen_bracket(family, args.nu, zeros, m);
            table.rows.push_back({kind == LameKind::Ec ? "Ec" : "Es", sup, std::string(family_name(family)), zeros,
                                  e.h(), b.lo, b.hi, b.lo <= e.h() && e.h() <= b.hi, e.pruefer_zero_count()});
        }
    }
    json doc{{"k", cfg.k}, {"nu", args.nu}, {"eigenvalues", table.to_json()}};
    emit(cfg, doc, {&table});
    return kExitOk;
}

// ---- coords --------------------------------------------------------------

Variant parse_variant(const std::string& v) {
    if (v == "v1") return Variant::V1;
    if (v == "v2") return Variant::V2;
    if (v == "v3") return Variant::V3;
    throw UsageError("unknown variant '" + v + "' (expected v1, v2 or v3)");
}

// Numeric CSV rows from stdin; lines that do not start with a number are skipped.
std::vector<Triple> read_stdin_triples() {
    std::vector<Triple> out;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty() || !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' || line[0] == '.' ||
                              line[0] == '+')) {
            continue;
        }
        out.push_back(parse_triple(line, "stdin"));
    }
    return out;
}

struct CoordsArgs {
    std::string mode;
    std::optional<std::string> point;
    std::string variant = "v1";
    double a = 2.0;
    int samples = 200;
};

int cmd_coords(const RunConfig& cfg, const CoordsArgs& args) {
    if (args.mode == "lines") {
        if (!(args.a > 1.0)) throw UsageError("coords lines: --a must exceed 1");
        if (args.samples < 2) throw UsageError("coords lines: --samples must be at least 2");
        const Modulus m(1.0 / std::sqrt(args.a));
        const double K = m.quarter_K();
        const double Kp = m.quarter_Kp();
        Table table{{"curve", "parameter", "index", "x", "z"}, {}};
        json s_curves = json::array();
        json t_curves = json::array();
        for (double s_frac : {-1.5, -1.0, -0.5, 0.5, 1.0, 1.5}) {
            json points = json::array();
            for (int i = 0; i < args.samples; ++i) {
                // Stop short of t = K', where the curve reaches the axis.
                const double t = Kp * (1.0 - 1e-6) * i / (args.samples - 1);
                const CartesianPoint q = flatring_to_cartesian(FlatRingPoint::from_st(s_frac * K, t, 0.0, m));
                points.push_back({q.x, q.z});
                table.rows.push_back({"s", s_frac, i, q.x, q.z});
            }
            s_curves.push_back({{"s_over_K", s_frac}, {"points", points}});
        }
        for (double t_frac : {0.3, 0.5, 0.7}) {
            json points = json::array();
            for (int i = 0; i < args.samples; ++i) {
                const double s = -2.0 * K + 4.0 * K * i / (args.samples - 1);
                const CartesianPoint q = flatring_to_cartesian(FlatRingPoint::from_st(s, t_frac * Kp, 0.0, m));
                points.push_back({q.x, q.z});
                table.rows.push_back({"t", t_frac, i, q.x, q.z});
            }
            t_curves.push_back({{"t_over_Kp", t_frac}, {"points", points}});
        }
        json doc{{"a", args.a}, {"k", m.k()}, {"s_curves", s_curves}, {"t_curves", t_curves}};
        emit(cfg, doc, {&table});
        return kExitOk;
    }

    const Modulus m(cfg.k);
    const Variant variant = parse_variant(args.variant);
    std::vector<Triple> inputs;
    if (args.point) {
        inputs.push_back(parse_triple(*args.point, "--point"));
    } else {
        inputs = read_stdin_triples();
    }
    if (args.mode == "forward") {
        Table table{{"x", "y", "z"}, {}};
        for (const Triple& p : inputs) {
            const CartesianPoint q = flatring_to_cartesian(FlatRingPoint::from_st(p.a, p.b, p.c, m, variant));
            table.rows.push_back({q.x, q.y, q.z});
        }
        emit(cfg, json{{"k", cfg.k}, {"points", table.to_json()}}, {&table});
        return kExitOk;
    }
    if (args.mode == "inverse") {
        Table table{{"s", "t", "phi"}, {}};
        for (const Triple& p : inputs) {
            const FlatRingPoint f = cartesian_to_flatring({p.a, p.b, p.c}, m, variant);
            table.rows.push_back({f.s, f.t, f.phi});
        }
        emit(cfg, json{{"k", cfg.k}, {"points", table.to_json()}}, {&table});
        return kExitOk;
    }
    throw UsageError("coords: mode must be forward, inverse or lines");
}

// ---- green ---------------------------------------------------------------

struct GreenArgs {
    bool toroidal = false;
    std::optional<std::string> r;
    std::optional<std::string> r_star;
};

int cmd_green(const RunConfig& cfg, const GreenArgs& args) {
    const Truncation tr{cfg.m_max, cfg.n_max};
    CartesianPoint r{};
    CartesianPoint rs{};
    ExpansionResult res;
    if (args.toroidal) {
        const Triple a = parse_triple(args.r.value_or("2,0.4,0.1"), "--r");
        const Triple b = parse_triple(args.r_star.value_or("1,-0.7,0.9"), "--r-star");
        r = toroidal_to_cartesian({a.a, a.b, a.c});
        rs = toroidal_to_cartesian({b.a, b.b, b.c});
        res = toroidal_green_expansion(r, rs, tr);
    } else {
        const Modulus m(cfg.k);
        r = flatring_point(m, parse_triple(args.r.value_or("0.7,0.2,0.3"), "--r"));
        rs = flatring_point(m, parse_triple(args.r_star.value_or("1.1,0.6,-0.5"), "--r-star"));
        const LameTable table(m, cfg.m_max, cfg.n_max);
        res = green_expansion(table, r, rs, tr);
    }
    const double direct = 1.0 / distance(r, rs);
    const double rel = std::abs(res.value - direct) / direct;

    Table summary{{"expansion", "value", "direct", "relative_error", "tail_estimate"},
                  {{args.toroidal ? "toroidal" : "flatring", res.value, direct, rel, res.tail_estimate}}};
    Table shells{{"n", "shell_value", "shell_envelope", "ratio"}, {}};
    for (std::size_t n = 0; n < res.shell_envelope.size(); ++n) {
        const double ratio = n == 0 ? std::nan("") : res.shell_envelope[n] / res.shell_envelope[n - 1];
        shells.rows.push_back({static_cast<int>(n), res.shell_value[n], res.shell_envelope[n], number(ratio)});
    }
    json doc = summary.to_json()[0];
    doc["k"] = cfg.k;
    doc["m_max"] = cfg.m_max;
    doc["n_max"] = cfg.n_max;
    doc["shells"] = shells.to_json();
    emit(cfg, doc, {&summary, &shells});
    if (cfg.tol && !(rel <= *cfg.tol)) {
        std::cerr << "green: relative error " << rel << " exceeds --tol " << *cfg.tol << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    verify::Options options;
    options.k = cfg.k;
    options.truncation = {cfg.m_max, cfg.n_max};
    options.seed = cfg.seed;
    options.tolerance = cfg.tol;
    const std::vector<verify::Check> checks = verify::run(suite, options);
    Table table{{"check", "residual", "tolerance", "pass"}, {}};
    bool all_pass = true;
    for (const verify::Check& c : checks) {
        table.rows.push_back({c.name, number(c.residual), c.tolerance, c.pass});
        all_pass = all_pass && c.pass;
    }
    emit(cfg, table.to_json(), {&table});
    if (!all_pass) {
        std::cerr << "verify: failing checks:";
        for (const verify::Check& c : checks) {
            if (!c.pass) std::cerr << ' ' << c.name;
        }
        std::cerr << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

// ---- dirichlet -----------------------------------------------------------

// Boundary samples g on a complete tensor grid in (s/K, phi), interpolated
// bilinearly with periods 4 and 2 pi.
class GridBoundary {
public:
    static GridBoundary load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open boundary grid '" + path + "'");
        std::string line;
        int line_no = 0;
        std::map<std::pair<double, double>, double> samples;
        while (std::getline(in, line)) {
            ++line_no;
            if (line_no == 1) {
                if (line != "s_over_K,phi,g") {
                    throw UsageError(path + ":1: expected header 's_over_K,phi,g'");
                }
                continue;
            }
            if (line.empty()) continue;
            Triple t{};
            try {
                t = parse_triple(line, path + ":" + std::to_string(line_no));
            } catch (const UsageError& e) {
                throw UsageError(std::string(e.what()));
            }
            samples[{t.a, t.b}] = t.c;
        }
        GridBoundary grid;
        for (const auto& [key, value] : samples) {
            grid.s_.push_back(key.first);
            grid.phi_.push_back(key.second);
        }
        std::sort(grid.s_.begin(), grid.s_.end());
        grid.s_.erase(std::unique(grid.s_.begin(), grid.s_.end()), grid.s_.end());
        std::sort(grid.phi_.begin(), grid.phi_.end());
        grid.phi_.erase(std::unique(grid.phi_.begin(), grid.phi_.end()), grid.phi_.end());
        if (grid.s_.size() < 2 || grid.phi_.size() < 2) throw UsageError(path + ": grid needs at least 2 x 2 samples");
        if (samples.size() != grid.s_.size() * grid.phi_.size()) {
            throw UsageError(path + ": samples do not form a complete tensor grid");
        }
        grid.values_.reserve(samples.size());
        for (const auto& [key, value] : samples) grid.values_.push_back(value);
        return grid;
    }

    double operator()(double s_over_K, double phi) const {
        const auto [i0, i1, ws] = bracket(s_, s_over_K, 4.0);
        const auto [j0, j1, wp] = bracket(phi_, phi, 2.0 * std::numbers::pi);
        const auto at = [&](std::size_t i, std::size_t j) { return values_[i * phi_.size() + j]; };
        return (1 - ws) * ((1 - wp) * at(i0, j0) + wp * at(i0, j1)) + ws * ((1 - wp) * at(i1, j0) + wp * at(i1, j1));
    }

private:
    struct Cell {
        std::size_t lo;
        std::size_t hi;
        double weight;
    };

    // Periodic bracketing cell of x in the sorted nodes.
    static Cell bracket(const std::vector<double>& nodes, double x, double period) {
        const double base = nodes.front();
        x = base + std::fmod(std::fmod(x - base, period) + period, period);
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
        const std::size_t hi_raw = static_cast<std::size_t>(it - nodes.begin());
        const std::size_t lo = hi_raw - 1;
        if (hi_raw == nodes.size()) {
            const double span = nodes.front() + period - nodes.back();
            return {lo, 0, (x - nodes.back()) / span};
        }
        return {lo, hi_raw, (x - nodes[lo]) / (nodes[hi_raw] - nodes[lo])};
    }

    std::vector<double> s_;
    std::vector<double> phi_;
    std::vector<double> values_;
};

struct DirichletArgs {
    double t0 = 0.4;
    std::string boundary = "point-source";
    std::string source = "0.9,0.8,0.7";
    std::vector<std::string> probes;
    int n_s = 256;
    int n_phi = 64;
};

int cmd_dirichlet(const RunConfig& cfg, const DirichletArgs& args) {
    const Modulus m(cfg.k);
    const FlatRingDomain domain(m, args.t0 * m.quarter_Kp());
    const LameTable table(m, cfg.m_max, cfg.n_max);
    const CartesianPoint source = flatring_point(m, parse_triple(args.source, "--source"));
    const LameEigenpair& mode = table.get(std::min(1, cfg.m_max), LameKind::Ec, std::min(2, cfg.n_max)).base();

    BoundaryData data{nullptr, args.n_s, args.n_phi};
    std::function<double(const CartesianPoint&)> exact;
    if (args.boundary == "point-source") {
        data.g = [&](double s, double phi) {
            const CartesianPoint r = domain.boundary_point(s, phi);
            return std::sqrt(cylindrical_radius(r)) / distance(r, source);
        };
        exact = [&](const CartesianPoint& q) { return 1.0 / distance(q, source); };
    } else if (args.boundary == "constant") {
        data.g = [](double, double) { return 1.0; };
    } else if (args.boundary == "single-mode") {
        // One Ec mode times cos(phi); the solution is that internal harmonic scaled by 1/W(t0).
        data.g = [&](double s, double phi) { return mode(s) * std::cos(phi * std::min(1, cfg.m_max)); };
        const double w0 = mode.eval_imag(domain.t0()).value;
        exact = [&, w0](const CartesianPoint& q) {
            const FlatRingPoint p = locate_lenient(q, m);
            return mode(p.s) * mode.eval_imag(p.t).value / w0 * std::cos(p.phi * std::min(1, cfg.m_max)) /
                   std::sqrt(cylindrical_radius(q));
        };
    } else {
        const auto grid = std::make_shared<GridBoundary>(GridBoundary::load(args.boundary));
        const double K = m.quarter_K();
        data.g = [grid, K](double s, double phi) { return (*grid)(s / K, phi); };
    }

    const DirichletCoefficients coeffs = dirichlet_coefficients(table, domain, data, {cfg.m_max, cfg.n_max});
    if (coeffs.warning) std::cerr << "warning: " << *coeffs.warning << '\n';

    std::vector<Triple> probes;
    for (const std::string& p : args.probes) probes.push_back(parse_triple(p, "--probe"));
    if (probes.empty()) {
        for (int i = 0; i < 10; ++i) probes.push_back({-1.8 + 3.6 * i / 9.0, 0.5 * args.t0, -3.0 + 0.6 * i});
    }
    Table values{{"s_over_K", "t_over_Kp", "phi", "value", "exact", "relative_error"}, {}};
    double worst = 0.0;
    for (const Triple& p : probes) {
        const CartesianPoint q = flatring_point(m, p);
        const double u = solve_interior(table, domain, coeffs, q);
        if (exact) {
            const double e = exact(q);
            const double rel = std::abs(u - e) / std::max(std::abs(e), 1e-300);
            worst = std::max(worst, rel);
            values.rows.push_back({p.a, p.b, p.c, u, e, rel});
        } else {
            values.rows.push_back({p.a, p.b, p.c, u, nullptr, nullptr});
        }
    }
    Table coefficients{{"kind", "m", "superscript", "re", "im"}, {}};
    double largest = 0.0;
    for (int mm = -cfg.m_max; mm <= cfg.m_max; ++mm) {
        for (int n = 0; n <= cfg.n_max; ++n) largest = std::max({largest, std::abs(coeffs.c(mm, n)), std::abs(coeffs.d(mm, n))});
    }
    for (int mm = -cfg.m_max; mm <= cfg.m_max; ++mm) {
        for (int n = 0; n <= cfg.n_max; ++n) {
            for (bool cosine : {true, false}) {
                const std::complex<double> c = cosine ? coeffs.c(mm, n) : coeffs.d(mm, n);
                if (std::abs(c) > 1e-10 * largest && coefficients.rows.size() < 50) {
                    coefficients.rows.push_back({cosine ? "c" : "d", mm, cosine ? n : n + 1, c.real(), c.imag()});
                }
            }
        }
    }
    json doc{{"k", cfg.k},
             {"t0_over_Kp", args.t0},
             {"boundary", args.boundary},
             {"parseval_residual", coeffs.parseval_residual()},
             {"probes", values.to_json()},
             {"coefficients", coefficients.to_json()}};
    emit(cfg, doc, {&values, &coefficients});
    if (cfg.tol && exact && !(worst <= *cfg.tol)) {
        std::cerr << "dirichlet: relative error " << worst << " exceeds --tol " << *cfg.tol << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flat-ring cyclide harmonics: coordinates, Lame functions, expansions and verification"};
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig cfg;
    std::optional<double> tol;
    app.add_option("--k", cfg.k, "elliptic modulus in (0, 1)")->capture_default_str();
    app.add_option("--m-max", cfg.m_max, "azimuthal truncation")->capture_default_str()->check(CLI::NonNegativeNumber);
    app.add_option("--n-max", cfg.n_max, "Lame truncation")->capture_default_str()->check(CLI::NonNegativeNumber);
    app.add_option("--tol", tol, "tolerance; overrides every verify check and gates green/dirichlet");
    app.add_option("--format", cfg.format, "output format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();

    EigenArgs eigen_args;
    auto* eigen = app.add_subcommand("eigen", "Lame eigenvalues with their brackets and zero counts");
    eigen->add_option("--kind", eigen_args.kind)->capture_default_str()->check(CLI::IsMember({"Ec", "Es", "both"}));
    eigen->add_option("--nu", eigen_args.nu)->capture_default_str();
    eigen->add_option("--from", eigen_args.from, "first superscript")->capture_default_str();
    eigen->add_option("--to", eigen_args.to, "last superscript")->capture_default_str();

    CoordsArgs coords_args;
    auto* coords = app.add_subcommand("coords", "coordinate conversion and coordinate lines");
    coords->add_option("mode", coords_args.mode, "forward | inverse | lines")
        ->required()
        ->check(CLI::IsMember({"forward", "inverse", "lines"}));
    coords->add_option("--point", coords_args.point,
                       "forward: s,t,phi; inverse: x,y,z (read as CSV from stdin when absent)");
    coords->add_option("--variant", coords_args.variant)->capture_default_str();
    coords->add_option("--a", coords_args.a, "lines: a = 1/k^2")->capture_default_str();
    coords->add_option("--samples", coords_args.samples, "lines: points per curve")->capture_default_str();

    GreenArgs green_args;
    auto* green = app.add_subcommand("green", "truncated expansion of 1/|r - r*| against the direct distance");
    green->add_flag("--toroidal", green_args.toroidal, "use toroidal harmonics instead");
    green->add_option("--r", green_args.r, "s/K,t/K',phi (or tau,psi,phi with --toroidal)");
    green->add_option("--r-star", green_args.r_star, "s/K,t/K',phi (or tau,psi,phi with --toroidal)");

    std::string suite = "all";
    auto* verify_cmd = app.add_subcommand("verify", "property suites with a pass/fail report");
    verify_cmd->add_option("suite", suite, "elliptic | lame | harmonics | dirichlet | limits | all")
        ->capture_default_str()
        ->check(CLI::IsMember({"elliptic", "lame", "harmonics", "dirichlet", "limits", "all"}));

    DirichletArgs dir_args;
    auto* dirichlet = app.add_subcommand("dirichlet", "interior Dirichlet problem from boundary data");
    dirichlet->add_option("--t0", dir_args.t0, "boundary t0 as a fraction of K'")->capture_default_str();
    dirichlet->add_option("--boundary", dir_args.boundary, "point-source | constant | single-mode | grid CSV path")
        ->capture_default_str();
    dirichlet->add_option("--source", dir_args.source, "point source s/K,t/K',phi")->capture_default_str();
    dirichlet->add_option("--probe", dir_args.probes, "interior probe s/K,t/K',phi (repeatable)");
    dirichlet->add_option("--n-s", dir_args.n_s, "Gauss-Legendre nodes in s")->capture_default_str();
    dirichlet->add_option("--n-phi", dir_args.n_phi, "trapezoid nodes in phi")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    cfg.tol = tol;

    try {
        if (!(cfg.k > 0.0 && cfg.k < 1.0)) throw UsageError("--k must lie in (0, 1)");
        if (*eigen) return cmd_eigen(cfg, eigen_args);
        if (*coords) return cmd_coords(cfg, coords_args);
        if (*green) return cmd_green(cfg, green_args);
        if (*verify_cmd) return cmd_verify(cfg, suite);
        if (*dirichlet) return cmd_dirichlet(cfg, dir_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const OrderingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PoleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
