#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using json = nlohmann::json;

namespace {

struct Outcome {
    int status;
    std::string out;
};

// stdout and exit status of the CLI; stderr is discarded.
Outcome run(const std::string& args, const std::string& stdin_text = {}) {
    std::string command = std::string(FLATRING_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!stdin_text.empty()) command = "printf '" + stdin_text + "' | " + command;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buffer{};
    while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) out.append(buffer.data(), n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST_CASE("eigen near k = 0 approaches squared integers") {
    const Outcome r = run("--k 1e-3 eigen --kind Ec --nu 0.5 --from 0 --to 4");
    REQUIRE(r.status == 0);
    const json doc = json::parse(r.out);
    const json& rows = doc["eigenvalues"];
    REQUIRE(rows.size() == 5);
    for (int N = 0; N <= 4; ++N) {
        CAPTURE(N);
        CHECK(std::abs(rows[N]["h"].get<double>() - N * N) <= 1e-5);
        CHECK(rows[N]["in_bracket"].get<bool>());
        CHECK(rows[N]["pruefer_zeros"].get<int>() == rows[N]["zeros"].get<int>());
    }
}

TEST_CASE("modulus outside (0, 1) is a usage error") {
    CHECK(run("--k 1.2 eigen").status == 2);
    CHECK(run("eigen --k 0").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("eigen --kind Ex").status == 2);
}

TEST_CASE("coords forward and inverse round trip") {
    const Outcome fwd = run("--format csv coords forward --point 0.5,0.3,0.1");
    REQUIRE(fwd.status == 0);
    const Outcome inv = run("--format csv coords inverse", fwd.out.substr(fwd.out.find('\n') + 1));
    REQUIRE(inv.status == 0);
    CHECK(inv.out.rfind("s,t,phi\n", 0) == 0);
    double s = 0;
    double t = 0;
    double phi = 0;
    REQUIRE(std::sscanf(inv.out.c_str() + 8, "%lf,%lf,%lf", &s, &t, &phi) == 3);
    CHECK(s == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(phi == doctest::Approx(0.1).epsilon(1e-12));

    // (1, 0, 0) lies on the cut disk in the plane z = 0.
    CHECK(run("coords inverse --point 1,0,0").status == 2);
}

TEST_CASE("coordinate lines") {
    const Outcome r = run("coords lines --a 2 --samples 5");
    REQUIRE(r.status == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["k"].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(doc["s_curves"].size() == 6);
    CHECK(doc["t_curves"].size() == 3);
    for (const json& c : doc["t_curves"]) {
        CHECK(c["points"].size() == 5);
        // A t-line is closed: its ends at s = -2K and 2K coincide.
        const json& first = c["points"].front();
        const json& last = c["points"].back();
        CHECK(std::abs(first[0].get<double>() - last[0].get<double>()) <= 1e-12);
        CHECK(std::abs(first[1].get<double>() - last[1].get<double>()) <= 1e-12);
    }
}

TEST_CASE("green reports the expansion against the direct distance") {
    const Outcome r = run("--m-max 12 --n-max 12 green");
    REQUIRE(r.status == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["relative_error"].get<double>() <= 1e-5);  // 1.8e-6 at this truncation
    CHECK(doc["shells"].size() == 13);
    CHECK(doc["expansion"] == "flatring");

    CHECK(run("--toroidal green").status == 2);  // a subcommand flag
    const Outcome t2 = run("green --toroidal --tol 1e-8");
    REQUIRE(t2.status == 0);
    CHECK(json::parse(t2.out)["expansion"] == "toroidal");

    CHECK(run("--m-max 2 --n-max 2 green --tol 1e-12").status == 1);
    // r* closer to the ring than r violates the ordering.
    CHECK(run("--m-max 4 --n-max 4 green --r 0.7,0.6,0 --r-star 0.1,0.2,0").status == 2);
}

TEST_CASE("verify reports one object per check") {
    const Outcome r = run("verify elliptic");
    REQUIRE(r.status == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc.is_array());
    REQUIRE(!doc.empty());
    for (const json& c : doc) {
        CHECK(c.contains("check"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c["pass"].get<bool>());
    }
    CHECK(run("--tol 1e-30 verify elliptic").status == 1);
    CHECK(run("verify nosuch").status == 2);
}

TEST_CASE("dirichlet with grid boundary data") {
    const std::string path = "test_cli_grid.csv";
    {
        std::ofstream grid(path);
        grid << "s_over_K,phi,g\n";
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) grid << -2.0 + 0.5 * i << ',' << -3.0 + 0.75 * j << ",1\n";
        }
    }
    // Constant samples: only axisymmetric cosine coefficients survive.
    const Outcome r = run("--m-max 2 --n-max 4 dirichlet --boundary " + path + " --n-s 64 --n-phi 8");
    REQUIRE(r.status == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["probes"].size() == 10);
    for (const json& c : doc["coefficients"]) {
        CHECK(c["m"].get<int>() == 0);
        CHECK(c["kind"] == "c");
    }

    {
        std::ofstream bad(path);
        bad << "s_over_K,phi,g\n0,0,1\n0,1,oops\n";
    }
    CHECK(run("dirichlet --boundary " + path).status == 2);
    std::remove(path.c_str());
}

TEST_CASE("dirichlet point source matches the potential") {
    const Outcome r = run("--m-max 12 --n-max 12 dirichlet --tol 1e-6 --format csv");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("s_over_K,t_over_Kp,phi,value,exact,relative_error\n", 0) == 0);
}
