#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int run(const std::string& command) {
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string binary() {
    return std::string("\"") + POLYSU11_BIN + "\"";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("verify exits 0 on a sound spec and writes the report") {
    CHECK(run(binary() + " verify --p 1 --alpha 1 --k 1 --trunc 32 --json cli_verify.json "
                         "2>cli_err.txt") == 0);
    const std::string report = slurp("cli_verify.json");
    CHECK(report.find("\"all_pass\": true") != std::string::npos);
    CHECK(report.find("\"seed\": 12345") != std::string::npos);
    CHECK(report.find("commutator_defect") != std::string::npos);
    CHECK(report.find("weight_positivity_defect") != std::string::npos);
}

TEST_CASE("verify exits 2 on argument errors") {
    CHECK(run(binary() + " verify --p 1 --alpha=-1 --k 1 --trunc 32 --json cli_bad.json "
                         "2>/dev/null") == 2);
    CHECK(run(binary() + " verify --p 1 --alpha 1 2>/dev/null") == 2); // --k missing
    CHECK(run(binary() + " nonsense 2>/dev/null") == 2);
}

TEST_CASE("tolerance override forces check failures with exit 1") {
    CHECK(run("POLYSU11_TOL=1e-20 " + binary() +
              " verify --p 1 --alpha 1 --k 1 --trunc 32 --json cli_tol.json 2>/dev/null") ==
          1);
    CHECK(slurp("cli_tol.json").find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("weights table has the promised shape and is byte-stable") {
    const std::string cmd = binary() + " weights --family bg --gamma 0.1,0.25,0.4 --tmax 20 "
                                       "--steps 400 --out ";
    CHECK(run(cmd + "cli_w1.csv 2>/dev/null") == 0);
    CHECK(run(cmd + "cli_w2.csv 2>/dev/null") == 0);
    const std::string first = slurp("cli_w1.csv");
    CHECK(first == slurp("cli_w2.csv"));

    std::istringstream lines(first);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "gamma,t,rho");
    int rows = 0;
    bool nonnegative = true;
    while (std::getline(lines, line)) {
        ++rows;
        const std::size_t last_comma = line.rfind(',');
        REQUIRE(last_comma != std::string::npos);
        nonnegative = nonnegative && std::stod(line.substr(last_comma + 1)) >= 0.0;
    }
    CHECK(rows == 1200);
    CHECK(nonnegative);
}

TEST_CASE("states dump carries the coefficient columns") {
    CHECK(run(binary() + " states --family p --zeta 0.5,0.25 --p 2 --alpha 1,0.5 --k 0.875 "
                         "--out cli_states.csv 2>/dev/null") == 0);
    const std::string csv = slurp("cli_states.csv");
    CHECK(csv.rfind("n,Re(c_n),Im(c_n),|c_n|^2\n", 0) == 0);
    CHECK(csv.find("\n0,") != std::string::npos);
    // the disk constraint is an argument error
    CHECK(run(binary() + " states --family p --zeta 1.5,0 --p 1 --alpha 1 --k 1 "
                         "--out cli_states2.csv 2>/dev/null") == 2);
}

TEST_CASE("spectrum reports analytic and grid towers") {
    CHECK(run(binary() + " spectrum --gamma 0.25 --points 1500 --levels 3 "
                         "--out cli_spec.json 2>/dev/null") == 0);
    const std::string json = slurp("cli_spec.json");
    CHECK(json.find("\"analytic\": 1.75") != std::string::npos);
    CHECK(json.find("grid_plus") != std::string::npos);
    CHECK(json.find("grid_minus") != std::string::npos);
    CHECK(run(binary() + " spectrum --gamma 0.25 --epsilon=-5 2>/dev/null") == 2);
}
