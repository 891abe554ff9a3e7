#ifndef SOPCALC_CONFIG_HPP
#define SOPCALC_CONFIG_HPP

#include <array>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sopcalc/scenario.hpp"

namespace sopcalc {

/// Parsed form of the scenario configuration file (documented in the README):
/// `key = value` lines, `#` comments, unknown keys rejected.
struct ScenarioConfig {
    double es_db = 40.0;
    std::vector<double> esi_db = {15.0};  // scalar or one entry per interferer
    double alpha = 3.0;
    double d_b = 2.5;
    double d_e = 25.0;
    std::vector<std::array<double, 2>> interferer_pairs;  // (d_bi, d_ei)
    struct Collinear {
        std::size_t m;
        double first_distance;
        double step;
    };
    std::optional<Collinear> collinear;
    std::vector<double> r_s = {1.0};

    Scenario to_scenario() const;
};

ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig parse_scenario_config_file(const std::string& path);

namespace detail {
/// Shared line scanner: strips comments/blank lines and splits `key = value`.
std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in);
std::vector<double> parse_double_list(const std::string& value, const std::string& key);
double parse_double(const std::string& value, const std::string& key);
}  // namespace detail

}  // namespace sopcalc

#endif
