#include "clockdimer/config.hpp"

#include <doctest.h>

using namespace clockdimer;

TEST_SUITE("config") {

TEST_CASE("defaults match the reference parameter set") {
    const RunConfig cfg;
    CHECK(cfg.dimer.m1.D == doctest::Approx(21.0));
    CHECK(cfg.dimer.m1.E == doctest::Approx(1.9));
    CHECK(cfg.dimer.m2.D == doctest::Approx(16.5));
    CHECK(cfg.dimer.m2.E == doctest::Approx(2.6));
    CHECK(cfg.dimer.j.j_perp == doctest::Approx(0.1));
    CHECK(cfg.dimer.m1.g == doctest::Approx(2.0));
    CHECK(cfg.drive_amplitude_mT == doctest::Approx(1.0));
}

TEST_CASE("round trip and overrides") {
    const std::string text =
        "# comment\n"
        "[dimer]\n"
        "D1 = 20.0\n"
        "E1 = 1.5\n"
        "J_zz_GHz = 0.1\n"
        "[sweep]\n"
        "t2_us = 0.1, 1, inf\n"
        "[output]\n"
        "directory = /tmp/x\n"
        "seed = 42\n";
    const RunConfig cfg = parse_config_text(text);
    CHECK(cfg.dimer.m1.D == doctest::Approx(20.0));
    CHECK(cfg.dimer.m1.E == doctest::Approx(1.5));
    CHECK(cfg.dimer.j.j_zz == doctest::Approx(0.1));
    CHECK(cfg.dimer.m2.D == doctest::Approx(16.5)); // untouched default
    REQUIRE(cfg.t2_grid_us.size() == 3);
    CHECK(std::isinf(cfg.t2_grid_us[2]));
    CHECK(cfg.out_dir == "/tmp/x");
    CHECK(cfg.seed == 42);

    CHECK_THROWS_AS(parse_config_text("[dimer]\nbogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("[dimer\n"), std::invalid_argument);
}

TEST_CASE("config hash is stable and sensitive") {
    const RunConfig a, b;
    CHECK(a.hash() == b.hash());
    RunConfig c;
    c.dimer.j.j_zz = 0.1;
    CHECK(c.hash() != a.hash());
}

TEST_CASE("jzz override in MHz") {
    const RunConfig cfg;
    const DimerParams d = cfg.dimer_with_jzz_MHz(100.0);
    CHECK(d.j.j_zz == doctest::Approx(0.1));
}

TEST_CASE("numeric formatting") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(13.9962449e-3) == "0.0139962449");
    // 12 significant digits
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("state spec parsing") {
    const Eigen::Vector4cd fig3 = parse_state_spec("fig3");
    CHECK(std::abs(fig3(3) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(fig3(0) - std::complex<double>(0.0, 1.0 / std::sqrt(2.0))) < 1e-12);

    const Eigen::Vector4cd v = parse_state_spec("i,0,0,1");
    CHECK(std::abs(v(0) - std::complex<double>(0.0, 1.0 / std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(v(3) - 1.0 / std::sqrt(2.0)) < 1e-12);

    const Eigen::Vector4cd w = parse_state_spec("0.3+0.4i,0,0,0");
    CHECK(std::abs(w(0) - std::complex<double>(0.6, 0.8)) < 1e-12);

    CHECK_THROWS_AS(parse_state_spec("0,0,0,0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_spec("1,1,1,1,1"), std::invalid_argument);
}

} // TEST_SUITE
