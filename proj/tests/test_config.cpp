// Configuration parsing, named-constraint validation, snapshot determinism.
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "snls/config.hpp"

using namespace snls;

namespace {
std::string write_tmp(const std::string& body) {
    static int counter = 0;
    std::string path = "/tmp/snls_cfg_" + std::to_string(counter++) + ".ini";
    std::ofstream out(path);
    out << body;
    return path;
}
}  // namespace

TEST_CASE("minimal config fills the documented defaults") {
    std::string path = write_tmp("[time]\nT = 2.0\n");
    SimConfig cfg = parse_config(path);
    CHECK(cfg.n == 32);
    CHECK(cfg.side == doctest::Approx(kTwoPi));
    CHECK(cfg.p == 4.0);
    CHECK(cfg.q == 4.0);
    CHECK(cfg.s == 1.0);
    CHECK(cfg.T == 2.0);
    CHECK(cfg.shat() == doctest::Approx(0.75));
    std::remove(path.c_str());
}

TEST_CASE("scaling condition violations are named") {
    std::string path = write_tmp("[exponents]\np = 4\nq = 3\n");
    CHECK_THROWS_WITH_AS(parse_config(path), doctest::Contains("scaling condition 2/p+2/q=1"),
                         std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("focusing exponent outside [1/2, 1) is rejected") {
    std::string path = write_tmp(
        "[coefficients]\nf_case = focusing_power\nf_C = 1\nf_sigma = 1.5\n");
    CHECK_THROWS_WITH_AS(parse_config(path), doctest::Contains("sigma in [1/2, 1)"),
                         std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("malformed input is reported with its position") {
    std::string path = write_tmp("[grid]\nn 32\n");
    CHECK_THROWS_WITH_AS(parse_config(path), doctest::Contains(":2:"), std::invalid_argument);
    std::remove(path.c_str());

    std::string path2 = write_tmp("[grid]\nn = twelve\n");
    CHECK_THROWS_WITH_AS(parse_config(path2), doctest::Contains("expected an integer"),
                         std::invalid_argument);
    std::remove(path2.c_str());

    std::string path3 = write_tmp("[coefficients]\nf_case = quintic\n");
    CHECK_THROWS_WITH_AS(parse_config(path3), doctest::Contains("unknown f_case"),
                         std::invalid_argument);
    std::remove(path3.c_str());
}

TEST_CASE("grid and regularity constraints are enforced by name") {
    std::string path = write_tmp("[grid]\nn = 12\n");
    CHECK_THROWS_WITH_AS(parse_config(path), doctest::Contains("power of two"),
                         std::invalid_argument);
    std::remove(path.c_str());

    std::string path2 = write_tmp("[exponents]\ns = 0.5\n");  // s <= 1 - 1/p
    CHECK_THROWS_WITH_AS(parse_config(path2), doctest::Contains("(1-1/p, 1]"),
                         std::invalid_argument);
    std::remove(path2.c_str());
}

TEST_CASE("snapshot is deterministic and complete") {
    SimConfig cfg;
    auto a = config_snapshot(cfg);
    auto b = config_snapshot(cfg);
    CHECK(a == b);
    bool has_seed = false;
    for (const auto& [k, v] : a)
        if (k == "noise.seed") has_seed = true;
    CHECK(has_seed);
}
