#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bgsusy/emit.hpp"
#include "bgsusy/potentials.hpp"
#include "bgsusy/susy.hpp"

using namespace bgsusy;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string tmp = "cli_out.tmp";
    const std::string cmd =
        std::string(BGSUSY_CLI_PATH) + " " + args + " > " + tmp + " 2> cli_err.tmp";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    return r;
}

struct Csv {
    std::vector<std::string> header_lines;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# columns: ", 0) == 0) {
            c.header_lines.push_back(line);
            std::istringstream cols(line.substr(11));
            std::string cell;
            while (std::getline(cols, cell, ',')) c.columns.push_back(cell);
        } else if (!line.empty() && line[0] == '#') {
            c.header_lines.push_back(line);
        } else if (!line.empty()) {
            std::vector<std::string> row;
            std::istringstream cells(line);
            std::string cell;
            while (std::getline(cells, cell, ',')) row.push_back(cell);
            c.rows.push_back(std::move(row));
        }
    }
    return c;
}

int col(const Csv& c, const std::string& name) {
    for (size_t i = 0; i < c.columns.size(); ++i)
        if (c.columns[i] == name) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST_CASE("profile emits the closed-form field") {
    RunResult r = run("profile --family ho --omega 1 --kappa 1 --j 1");
    REQUIRE(r.exit_code == 0);
    Csv c = parse_csv(r.out);
    REQUIRE(c.columns ==
            std::vector<std::string>{"x", "V0", "V2", "B", "A", "f_extra"});
    REQUIRE(c.rows.size() > 1000);
    PotentialModel m = PotentialModel::shifted_ho(1.0, 1.0);
    SusyTransform t = SusyTransform::consecutive(m, 1);
    const int xi = col(c, "x"), bi = col(c, "B");
    int checked = 0;
    for (size_t i = 50; i + 50 < c.rows.size(); i += 97) {
        const double x = std::stod(c.rows[i][xi]);
        ClosedFormB ref = closed_form_B(t, x);
        REQUIRE(ref.available);
        CHECK(std::stod(c.rows[i][bi]) == doctest::Approx(ref.value).epsilon(1e-6));
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("profile rejects the forbidden w0 band") {
    RunResult r = run("profile --family ho --transform confluent --w0 0.5");
    CHECK(r.exit_code == 2);
    std::ifstream err("cli_err.tmp");
    std::stringstream ss;
    ss << err.rdbuf();
    CHECK(ss.str().find("(0, 1)") != std::string::npos);
}

TEST_CASE("trigonometric profile stays inside the domain") {
    RunResult r = run("profile --family trig");
    REQUIRE(r.exit_code == 0);
    Csv c = parse_csv(r.out);
    const int xi = col(c, "x");
    const double pi = std::acos(-1.0);
    for (const auto& row : c.rows) {
        const double x = std::stod(row[xi]);
        CHECK(x > 0.0);
        CHECK(x < pi);
    }
}

TEST_CASE("oscillator spectrum is flat in k") {
    RunResult r = run("spectrum --family ho --ksweep -1,1,5 --nmax 4");
    REQUIRE(r.exit_code == 0);
    Csv c = parse_csv(r.out);
    REQUIRE(c.rows.size() == 25);
    const int ni = col(c, "n_aux"), ei = col(c, "E"), di = col(c, "degenerate_flag");
    std::vector<double> first_e(5, -1.0);
    for (const auto& row : c.rows) {
        const int n = std::stoi(row[ni]);
        const double e = std::stod(row[ei]);
        if (first_e[n] < 0.0)
            first_e[n] = e;
        else
            CHECK(e == doctest::Approx(first_e[n]).epsilon(1e-12));
        CHECK(row[di] == ((n <= 3) ? "1" : "0"));
    }
    CHECK(first_e[1] == doctest::Approx(0.0));
    CHECK(first_e[0] == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("spectrum marks wavenumbers with no real branch as absent") {
    RunResult r = run("spectrum --family trig --D 2 --alpha 1 --kappa -2 "
                      "--transform confluent --w0 -1 --ksweep 0,0,1");
    REQUIRE(r.exit_code == 0);
    Csv c = parse_csv(r.out);
    REQUIRE(c.rows.size() == 1);
    CHECK(c.rows[0][col(c, "E")] == "absent");
}

TEST_CASE("hyperbolic spectrum is clipped to the bound states") {
    RunResult r = run("spectrum --family hyp --nmax 20");
    REQUIRE(r.exit_code == 0);
    Csv c = parse_csv(r.out);
    PotentialModel m = PotentialModel::hyp_rm(8.0, 1.0, 1.0);
    CHECK(static_cast<int>(c.rows.size()) <= *bound_state_count(m));
}

TEST_CASE("state of a deleted level has an empty upper column") {
    RunResult r = run("state --family ho --n 1 --k 1");
    REQUIRE(r.exit_code == 0);
    Csv c = parse_csv(r.out);
    const int pi = col(c, "psi2");
    for (const auto& row : c.rows) CHECK(row[pi] == "0");
}

TEST_CASE("emitted density rows integrate to one") {
    RunResult r = run("state --family ho --n 0 --k 1");
    REQUIRE(r.exit_code == 0);
    Csv c = parse_csv(r.out);
    const int xi = col(c, "x"), ri = col(c, "rho"), ji = col(c, "Jx");
    double acc = 0.0;
    for (size_t i = 1; i < c.rows.size(); ++i) {
        const double x0 = std::stod(c.rows[i - 1][xi]), x1 = std::stod(c.rows[i][xi]);
        acc += 0.5 * (std::stod(c.rows[i - 1][ri]) + std::stod(c.rows[i][ri])) *
               (x1 - x0);
    }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-4));
    for (const auto& row : c.rows) CHECK(std::abs(std::stod(row[ji])) < 1e-8);
}

TEST_CASE("verify passes at default tolerances and reports the factorization") {
    RunResult r = run("verify --family ho");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("factorization_residual") != std::string::npos);
    CHECK(r.out.find("fail") == std::string::npos);
    RunResult tight = run("verify --family ho --tol 1e-30");
    CHECK(tight.exit_code == 1);
    CHECK(tight.out.find("fail") != std::string::npos);
}

TEST_CASE("profile output round-trips byte-identically") {
    RunResult r = run("profile --family ho");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::ostringstream rebuilt;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            rebuilt << line << "\n";
            continue;
        }
        std::istringstream cells(line);
        std::string cell;
        bool first = true;
        while (std::getline(cells, cell, ',')) {
            rebuilt << (first ? "" : ",") << format_double(std::stod(cell));
            first = false;
        }
        rebuilt << "\n";
    }
    CHECK(rebuilt.str() == r.out);
}

TEST_CASE("json format and csv sidecar carry the full parameter echo") {
    RunResult r = run("profile --family trig --format json");
    REQUIRE(r.exit_code == 0);
    nlohmann::json o = nlohmann::json::parse(r.out);
    CHECK(o["command"] == "profile");
    for (const char* key : {"family", "omega", "D", "alpha", "kappa", "transform",
                            "j", "w0", "k", "n", "nmax", "grid", "ksweep", "format",
                            "out", "tol"})
        CHECK(o["meta"].contains(key));
    CHECK(o["rows"].size() > 1000);

    RunResult w = run("profile --family ho --out cli_profile.csv");
    REQUIRE(w.exit_code == 0);
    std::ifstream side("cli_profile.csv.json");
    REQUIRE(side.good());
    nlohmann::json meta = nlohmann::json::parse(side);
    CHECK(meta["meta"]["family"] == "ho");
    std::remove("cli_profile.csv");
    std::remove("cli_profile.csv.json");
}

TEST_CASE("config file is applied and flags override it") {
    {
        std::ofstream f("cli_config.json");
        f << R"({"family": "ho", "omega": 2.0, "kappa": 1.0, "j": 1})";
    }
    RunResult r = run("spectrum --config cli_config.json --nmax 4");
    REQUIRE(r.exit_code == 0);
    Csv c = parse_csv(r.out);
    const int ni = col(c, "n_aux"), ei = col(c, "E");
    for (const auto& row : c.rows)
        if (std::stoi(row[ni]) == 0)
            CHECK(std::stod(row[ei]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    RunResult over = run("spectrum --config cli_config.json --omega 1 --nmax 4");
    Csv c2 = parse_csv(over.out);
    for (const auto& row : c2.rows)
        if (std::stoi(row[ni]) == 0)
            CHECK(std::stod(row[ei]) ==
                  doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
    std::remove("cli_config.json");
}
