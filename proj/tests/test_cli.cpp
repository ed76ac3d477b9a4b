#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "slspec/banded.hpp"

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(SLSPEC_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("cli selftest exits cleanly") { CHECK(run("selftest") == 0); }

TEST_CASE("cli rejects bad configuration with exit code 1") {
    CHECK(run("eig --grid bogus") == 1);
    CHECK(run("eig --config /nonexistent.cfg") == 1);
    CHECK(run("eig --n 2000 --r 100 --out-dir /tmp/slspec_cli") == 1);
    CHECK(run("table 9 --out-dir /tmp/slspec_cli") == 1);
}

TEST_CASE("cli figure output is byte-identical across runs") {
    CHECK(run("figure 2 --n 3 --out-dir /tmp/slspec_cli_a") == 0);
    CHECK(run("figure 2 --n 3 --out-dir /tmp/slspec_cli_b") == 0);
    const std::string a = slurp("/tmp/slspec_cli_a/figure2.csv");
    const std::string b = slurp("/tmp/slspec_cli_b/figure2.csv");
    REQUIRE_FALSE(a.empty());
    CHECK(a == b);
    CHECK(slurp("/tmp/slspec_cli_a/figure2.json") == slurp("/tmp/slspec_cli_b/figure2.json"));
}

TEST_CASE("cli assemble writes a parseable banded file") {
    CHECK(run("assemble --scheme fd --eta 2 --n 12 --alpha 1 --grid liouville "
              "--out-dir /tmp/slspec_cli_m") == 0);
    std::ifstream in("/tmp/slspec_cli_m/matrix_fd.txt");
    REQUIRE(in.good());
    const slspec::BandedMatrix m = slspec::BandedMatrix::read(in);
    CHECK(m.size() == 12);
    CHECK(m.bandwidth() == 2);

    CHECK(run("assemble --scheme iga --eta 2 --n 12 --alpha 1 --grid uniform "
              "--out-dir /tmp/slspec_cli_m") == 0);
    std::ifstream pin("/tmp/slspec_cli_m/matrix_iga.txt");
    REQUIRE(pin.good());
    const slspec::BandedMatrix k = slspec::BandedMatrix::read(pin);
    const slspec::BandedMatrix mm = slspec::BandedMatrix::read(pin);
    CHECK(k.size() == 12);
    CHECK(mm.size() == 12);
}

TEST_CASE("cli eig and compare emit per-mode tables") {
    CHECK(run("eig --scheme fd --eta 1 --n 10 --alpha 1 --out-dir /tmp/slspec_cli_e") == 0);
    std::ifstream in("/tmp/slspec_cli_e/eigenvalues.csv");
    std::string line;
    int rows = -1;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 10);

    CHECK(run("compare --scheme fd --eta 1 --n 10 --alpha 1 --out-dir /tmp/slspec_cli_e") == 0);
    CHECK_FALSE(slurp("/tmp/slspec_cli_e/compare.csv").empty());
    CHECK(slurp("/tmp/slspec_cli_e/compare.json").find("computed-exact-ref") !=
          std::string::npos);
}

TEST_CASE("cli rearrange supports both construction routes") {
    CHECK(run("rearrange --alpha 1 --points 64 --method analytic --out-dir /tmp/slspec_cli_r") ==
          0);
    CHECK(run("rearrange --alpha 1 --points 64 --method analytic --scheme iga "
              "--out-dir /tmp/slspec_cli_r") == 1);  // analytic route is fd/eta-1/uniform only
    CHECK(run("rearrange --alpha 1 --eta 2 --points 64 --r 200 --out-dir /tmp/slspec_cli_r") == 0);
    std::ifstream in("/tmp/slspec_cli_r/rearrangement.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,omega_star");
}
