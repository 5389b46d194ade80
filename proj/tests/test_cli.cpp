#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("psur_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    static const bool cleanup = (std::atexit([] {
                                     std::error_code ec;
                                     fs::remove_all(workdir(), ec);
                                 }),
                                 true);
    (void)cleanup;
    return dir;
}

struct Result {
    int code;
    std::string out;
};

Result psur(const std::string& args) {
    const fs::path log = workdir() / "stdout.txt";
    const std::string cmd = std::string(PSUR_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream f(log);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::vector<std::string>* header = nullptr) {
    std::ifstream f(p);
    std::string line;
    std::vector<std::vector<double>> rows;
    bool first = true;
    while (std::getline(f, line)) {
        std::stringstream ls(line);
        std::string cell;
        std::vector<double> row;
        std::vector<std::string> names;
        while (std::getline(ls, cell, ',')) {
            if (first) names.push_back(cell);
            else row.push_back(cell == "inf" ? INFINITY : (cell == "nan" ? NAN : std::stod(cell)));
        }
        if (first) {
            if (header) *header = names;
            first = false;
        } else {
            rows.push_back(row);
        }
    }
    return rows;
}

std::string out(const std::string& name) { return "--out " + (workdir() / name).string(); }

} // namespace

TEST_CASE("curve") {
    auto r = psur("curve --set group=cyclic:3 " + out("qudit"));
    REQUIRE(r.code == 0);
    std::vector<std::string> header;
    const auto rows = read_csv(workdir() / "qudit" / "curve.csv", &header);
    CHECK(header == std::vector<std::string>{"t", "energy", "dq", "dp", "envelope_bound"});
    CHECK(std::abs(rows.front()[2] - 2.0 / 3.0) < 1e-8);
    CHECK(std::abs(rows.front()[3]) < 1e-8);
    CHECK(std::abs(rows.back()[2]) < 1e-8);
    CHECK(std::abs(rows.back()[3] - 2.0 / 3.0) < 1e-8);
    CHECK(!fs::exists(workdir() / "qudit" / "curve.svg"));

    r = psur("curve --set 'group=zline:{512,12}' --set metric_q.name=euclidean --set metric_q.exponent=2 "
             "--set metric_p.name=euclidean --set metric_p.exponent=2 --set t_grid.min=0.1 --set t_grid.points=8 --svg " +
             out("line"));
    REQUIRE(r.code == 0);
    for (const auto& row : read_csv(workdir() / "line" / "curve.csv")) CHECK(std::abs(row[2] * row[3] - 0.5) < 2e-3);
    CHECK(fs::exists(workdir() / "line" / "curve.svg"));

    r = psur("curve --set t_grid.points=0 " + out("empty"));
    CHECK(r.code == 2);
    CHECK(!fs::exists(workdir() / "empty" / "curve.csv"));
}

TEST_CASE("constant") {
    auto r = psur("constant --set alpha=2 --set beta=2 --set n=3 " + out("c1"));
    CHECK(r.code == 0);
    CHECK(r.out.find("= 1.5") != std::string::npos);
    CHECK(r.out.find("closed-form") != std::string::npos);
    r = psur("constant --set alpha=inf --set beta=2 --set n=2 " + out("c2"));
    CHECK(r.code == 0);
    CHECK(r.out.find("2.404825557") != std::string::npos);
    r = psur("constant --set alpha=inf --set beta=inf --set n=1 " + out("c3"));
    CHECK(r.code == 0);
    CHECK(r.out.find("infinity") != std::string::npos);
    r = psur("constant --set alpha=1 --set beta=3 --set n=2 " + out("c4"));
    CHECK(r.code == 4);
}

TEST_CASE("mur-check") {
    auto r = psur("mur-check --set group=cyclic:3 --set samples=100 " + out("m1"));
    REQUIRE(r.code == 0);
    std::ifstream f(workdir() / "m1" / "mur_check.json");
    const auto j = nlohmann::json::parse(f);
    CHECK(j["pass"] == true);
    CHECK(j["samples"] == 100);
    CHECK(j["max_abs_deviation"].get<double>() < 1e-9);

    r = psur("mur-check --set group=cyclic:2 --set samples=5 " + out("m2"));
    REQUIRE(r.code == 0);
    std::ifstream g(workdir() / "m2" / "mur_check.json");
    const auto k = nlohmann::json::parse(g);
    CHECK(k["point_generator"]["mur_q"].get<double>() < 1e-14);
    CHECK(k["point_generator"]["mur_p"].get<double>() == doctest::Approx(0.5));

    CHECK(psur("mur-check --set group=cyclic:x " + out("m3")).code == 2);
    CHECK(psur("mur-check --set 'group=zline:{16,3}' " + out("m4")).code == 2);

    // Same seed, same report.
    psur("mur-check --set samples=20 --seed 9 " + out("s1"));
    psur("mur-check --set samples=20 --seed 9 " + out("s2"));
    std::ifstream a(workdir() / "s1" / "mur_check.json"), b(workdir() / "s2" / "mur_check.json");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("clone") {
    auto r = psur("clone --set n=2 " + out("k1"));
    REQUIRE(r.code == 0);
    const auto rows = read_csv(workdir() / "k1" / "clone_ellipse.csv");
    CHECK(rows.front()[0] == 0.0);
    CHECK(std::abs(rows.front()[3]) < 1e-14);
    CHECK(rows.front()[4] == doctest::Approx(0.5));
    CHECK(fs::exists(workdir() / "k1" / "optimal_boundary.csv"));
    CHECK(!fs::exists(workdir() / "k1" / "clone.svg"));

    r = psur("clone --set n=3 --svg " + out("k2"));
    REQUIRE(r.code == 0);
    CHECK(fs::exists(workdir() / "k2" / "clone.svg"));
    for (const auto& row : read_csv(workdir() / "k2" / "clone_ellipse.csv")) {
        if (row[5] != 1.0) continue;
        const bool axis = row[3] < 1e-12 || row[4] < 1e-12;
        CHECK(row[6] <= (axis ? 1e-12 : -1e-8));
    }
    CHECK(psur("clone --set n=9 " + out("k3")).code == 2);
}

TEST_CASE("meanfield") {
    auto r = psur("meanfield --set 'n_list=[2,3,4]' --svg " + out("f1"));
    REQUIRE(r.code == 0);
    for (const char* name : {"meanfield_n2.csv", "meanfield_n4.csv", "meanfield_limit.csv", "meanfield_gaps.csv", "meanfield.svg"})
        CHECK(fs::exists(workdir() / "f1" / name));
    const auto limit = read_csv(workdir() / "f1" / "meanfield_limit.csv");
    // s = pi: q-term (1/2)^alpha, p-term 0 ... s = 3 pi / 2: q-term 0.
    CHECK(limit.front()[1] == doctest::Approx(0.5));
    CHECK(std::abs(limit.front()[2]) < 1e-15);
    CHECK(std::abs(limit.back()[1]) < 1e-15);
    CHECK(psur("meanfield --set 'n_list=[13]' " + out("f2")).code == 2);
}

TEST_CASE("config handling") {
    const fs::path cfg = workdir() / "cfg.json";
    {
        std::ofstream f(cfg);
        f << R"({"version": 1, "group": "cyclic:2", "samples": 3})";
    }
    CHECK(psur("mur-check --config " + cfg.string() + " " + out("g1")).code == 0);
    {
        std::ofstream f(cfg);
        f << R"({"group": "cyclic:2"})";
    }
    CHECK(psur("mur-check --config " + cfg.string() + " " + out("g2")).code == 2);
    {
        std::ofstream f(cfg);
        f << "{not json";
    }
    CHECK(psur("mur-check --config " + cfg.string() + " " + out("g3")).code == 2);
    CHECK(psur("curve --config /nonexistent.json").code == 2);
    CHECK(psur("curve --set noequals").code == 2);
    CHECK(psur("frobnicate").code == 2);
}
