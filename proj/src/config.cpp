#include "sopcalc/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sopcalc {

namespace detail {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value', got '" + line + "'");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

double parse_double(const std::string& value, const std::string& key) {
    std::istringstream ss(value);
    double v;
    if (!(ss >> v) || !(ss >> std::ws).eof())
        throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
    return v;
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item, key));
    if (out.empty()) throw std::invalid_argument("config key '" + key + "': empty list");
    return out;
}

}  // namespace detail

Scenario ScenarioConfig::to_scenario() const {
    if (collinear) {
        if (!interferer_pairs.empty())
            throw std::invalid_argument("config: 'interferer' and 'collinear' are mutually exclusive");
        if (esi_db.size() != 1)
            throw std::invalid_argument("config: collinear layout takes a scalar esi_db");
        return collinear_scenario(es_db, esi_db[0], alpha, d_b, d_e, collinear->m,
                                  collinear->first_distance, collinear->step);
    }
    return from_db(es_db, esi_db, alpha, d_b, d_e, interferer_pairs);
}

ScenarioConfig parse_scenario_config(std::istream& in) {
    ScenarioConfig cfg;
    cfg.interferer_pairs.clear();
    bool have_interferer = false;
    for (const auto& [key, value] : detail::read_key_values(in)) {
        if (key == "es_db") {
            cfg.es_db = detail::parse_double(value, key);
        } else if (key == "esi_db") {
            cfg.esi_db = detail::parse_double_list(value, key);
        } else if (key == "alpha") {
            cfg.alpha = detail::parse_double(value, key);
        } else if (key == "n0_mode") {
            if (value != "normalized")
                throw std::invalid_argument("config: only n0_mode = normalized is supported");
        } else if (key == "d_b") {
            cfg.d_b = detail::parse_double(value, key);
        } else if (key == "d_e") {
            cfg.d_e = detail::parse_double(value, key);
        } else if (key == "interferer") {
            const auto pair = detail::parse_double_list(value, key);
            if (pair.size() != 2)
                throw std::invalid_argument("config: 'interferer' takes 'd_bi, d_ei'");
            cfg.interferer_pairs.push_back({pair[0], pair[1]});
            have_interferer = true;
        } else if (key == "collinear") {
            const auto v = detail::parse_double_list(value, key);
            if (v.size() != 3 || v[0] < 0.0 || v[0] != static_cast<double>(static_cast<std::size_t>(v[0])))
                throw std::invalid_argument("config: 'collinear' takes 'm, first_distance, step'");
            cfg.collinear = ScenarioConfig::Collinear{static_cast<std::size_t>(v[0]), v[1], v[2]};
        } else if (key == "r_s") {
            cfg.r_s = detail::parse_double_list(value, key);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    if (!have_interferer && !cfg.collinear) {
        // Fall back to the default three-interferer geometry.
        cfg.interferer_pairs = {{10.0, 15.0}, {20.0, 10.0}, {25.0, 5.0}};
    }
    return cfg;
}

ScenarioConfig parse_scenario_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_scenario_config(in);
}

}  // namespace sopcalc
