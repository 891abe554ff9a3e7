#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sopcalc/config.hpp"
#include "sopcalc/scenario.hpp"

using namespace sopcalc;

TEST_CASE("from_db converts energies and applies a scalar interference level") {
    const double esi[] = {15.0};
    const std::array<double, 2> pairs[] = {{10.0, 15.0}, {20.0, 10.0}};
    const Scenario s = from_db(35.0, esi, 3.0, 2.5, 25.0, pairs);
    CHECK(s.es_lin == doctest::Approx(3162.2776601684).epsilon(1e-12));
    CHECK(s.n0 == 1.0);
    REQUIRE(s.interferer_count() == 2);
    CHECK(s.interferers[0].esi_lin == doctest::Approx(std::pow(10.0, 1.5)).epsilon(1e-14));
    CHECK(s.interferers[1].esi_lin == doctest::Approx(std::pow(10.0, 1.5)).epsilon(1e-14));
    CHECK(s.interferers[0].d_bi == 10.0);
    CHECK(s.interferers[0].d_ei == 15.0);
    CHECK(s.interferers[1].d_bi == 20.0);
    CHECK(s.interferers[1].d_ei == 10.0);
    CHECK(s.es_db() == doctest::Approx(35.0).epsilon(1e-12));
}

TEST_CASE("from_db accepts per-interferer levels and preserves order") {
    const double esi[] = {10.0, 20.0, 30.0};
    const std::array<double, 2> pairs[] = {{10.0, 15.0}, {20.0, 10.0}, {25.0, 5.0}};
    const Scenario s = from_db(40.0, esi, 3.0, 2.5, 25.0, pairs);
    REQUIRE(s.interferer_count() == 3);
    CHECK(s.interferers[0].esi_lin == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(s.interferers[1].esi_lin == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(s.interferers[2].esi_lin == doctest::Approx(1000.0).epsilon(1e-14));
}

TEST_CASE("from_db rejects a level-count mismatch") {
    const double esi[] = {10.0, 20.0};
    const std::array<double, 2> pairs[] = {{10.0, 15.0}, {20.0, 10.0}, {25.0, 5.0}};
    CHECK_THROWS_AS((void)from_db(40.0, esi, 3.0, 2.5, 25.0, pairs), std::invalid_argument);
}

TEST_CASE("derived quantities match hand values") {
    const Scenario s = default_scenario(3.0, 40.0, 15.0);
    // gamma_tilde_b = 1e4 / (1 + 2.5^3) = 1e4 / 16.625
    CHECK(s.gamma_tilde_b() == doctest::Approx(1e4 / 16.625).epsilon(1e-14));
    CHECK(s.gamma_tilde_e() == doctest::Approx(1e4 / (1.0 + 25.0 * 25.0 * 25.0)).epsilon(1e-14));
    // interference scale at Bob for interferer 0: 10^1.5 / (1 + 10^3)
    CHECK(s.interference_scale_b(0) ==
          doctest::Approx(std::pow(10.0, 1.5) / 1001.0).epsilon(1e-14));
    CHECK(s.interference_scale_e(0) ==
          doctest::Approx(std::pow(10.0, 1.5) / (1.0 + std::pow(15.0, 3.0))).epsilon(1e-14));
}

TEST_CASE("dB round trip is exact to 1e-12") {
    for (double db : {-20.0, 0.0, 12.345, 40.0, 55.5}) {
        const Scenario s = from_db(db, {}, 3.0, 2.5, 25.0, {});
        CHECK(s.es_db() == doctest::Approx(db).epsilon(1e-12));
    }
}

TEST_CASE("collinear layout places interferers along the ray") {
    const Scenario s = collinear_scenario(40.0, 25.0, 3.0, 2.5, 25.0, 3, 14.0, 5.0);
    REQUIRE(s.interferer_count() == 3);
    // positions 14, 9, 4
    CHECK(s.interferers[0].d_bi == doctest::Approx(11.5));
    CHECK(s.interferers[0].d_ei == doctest::Approx(11.0));
    CHECK(s.interferers[1].d_bi == doctest::Approx(6.5));
    CHECK(s.interferers[1].d_ei == doctest::Approx(16.0));
    CHECK(s.interferers[2].d_bi == doctest::Approx(1.5));
    CHECK(s.interferers[2].d_ei == doctest::Approx(21.0));
}

TEST_CASE("collinear layout edge cases") {
    // m = 0 is a valid no-interference scenario
    const Scenario none = collinear_scenario(40.0, 25.0, 3.0, 2.5, 25.0, 0, 14.0, 5.0);
    CHECK(none.interferer_count() == 0);
    // step = 0 stacks interferers at the same spot; allowed at build time
    const Scenario stacked = collinear_scenario(40.0, 25.0, 3.0, 2.5, 25.0, 2, 14.0, 0.0);
    CHECK(stacked.interferers[0].d_bi == stacked.interferers[1].d_bi);
    // a position landing on Bob or Eve gives a zero distance: rejected
    CHECK_THROWS_AS((void)collinear_scenario(40.0, 25.0, 3.0, 2.5, 25.0, 1, 2.5, 5.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)collinear_scenario(40.0, 25.0, 3.0, 2.5, 25.0, 4, 14.0, 5.0),
                    std::invalid_argument);  // 4th position would be -1
}

TEST_CASE("validate rejects broken scenarios") {
    Scenario s = default_scenario(3.0, 40.0, 15.0);
    CHECK_NOTHROW(s.validate());
    Scenario bad = s;
    bad.es_lin = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.d_b = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.alpha = -0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.interferers[1].d_ei = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.n0 = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("scenario config parsing") {
    std::istringstream in(
        "# comment\n"
        "es_db = 30\n"
        "esi_db = 10, 20\n"
        "alpha = 2\n"
        "d_b = 3\n"
        "d_e = 20\n"
        "interferer = 8, 12\n"
        "interferer = 15, 9\n"
        "r_s = 0.5, 1.5\n");
    const ScenarioConfig cfg = parse_scenario_config(in);
    CHECK(cfg.es_db == 30.0);
    REQUIRE(cfg.esi_db.size() == 2);
    CHECK(cfg.esi_db[1] == 20.0);
    CHECK(cfg.alpha == 2.0);
    REQUIRE(cfg.interferer_pairs.size() == 2);
    CHECK(cfg.interferer_pairs[1][0] == 15.0);
    REQUIRE(cfg.r_s.size() == 2);
    CHECK(cfg.r_s[1] == 1.5);

    const Scenario s = cfg.to_scenario();
    CHECK(s.es_lin == doctest::Approx(1000.0).epsilon(1e-12));
    REQUIRE(s.interferer_count() == 2);
    CHECK(s.interferers[0].esi_lin == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.interferers[1].esi_lin == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("scenario config defaults to the standard geometry") {
    std::istringstream in("es_db = 40\n");
    const Scenario s = parse_scenario_config(in).to_scenario();
    const Scenario want = default_scenario(3.0, 40.0, 15.0);
    REQUIRE(s.interferer_count() == want.interferer_count());
    for (std::size_t i = 0; i < s.interferer_count(); ++i) {
        CHECK(s.interferers[i].d_bi == want.interferers[i].d_bi);
        CHECK(s.interferers[i].d_ei == want.interferers[i].d_ei);
    }
}

TEST_CASE("scenario config collinear block") {
    std::istringstream in(
        "es_db = 40\n"
        "esi_db = 25\n"
        "d_b = 1\n"
        "d_e = 10\n"
        "collinear = 3, 15, 1\n");
    const Scenario s = parse_scenario_config(in).to_scenario();
    REQUIRE(s.interferer_count() == 3);
    CHECK(s.interferers[0].d_bi == doctest::Approx(14.0));
    CHECK(s.interferers[2].d_ei == doctest::Approx(3.0));
}

TEST_CASE("scenario config rejects unknown keys and bad values") {
    std::istringstream unknown("es_db = 40\nbogus = 1\n");
    CHECK_THROWS_AS((void)parse_scenario_config(unknown), std::invalid_argument);
    std::istringstream bad("es_db = forty\n");
    CHECK_THROWS_AS((void)parse_scenario_config(bad), std::invalid_argument);
    std::istringstream mode("n0_mode = absolute\n");
    CHECK_THROWS_AS((void)parse_scenario_config(mode), std::invalid_argument);
    std::istringstream ok_mode("n0_mode = normalized\n");
    CHECK_NOTHROW((void)parse_scenario_config(ok_mode));
}
