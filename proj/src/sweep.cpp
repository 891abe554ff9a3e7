#include "sopcalc/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sopcalc/config.hpp"
#include "sopcalc/montecarlo.hpp"
#include "sopcalc/quadrature.hpp"

namespace sopcalc {

std::string_view to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::es_db: return "es_db";
        case SweepAxis::r_s: return "r_s";
        case SweepAxis::esi_db: return "esi_db";
        case SweepAxis::d_e: return "d_e";
        case SweepAxis::m_count: return "m_count";
    }
    return "unknown";
}

std::string_view to_string(SweepMethod m) {
    switch (m) {
        case SweepMethod::closed_form: return "closed_form";
        case SweepMethod::quadrature: return "quadrature";
        case SweepMethod::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

SweepAxis sweep_axis_from_string(std::string_view s) {
    if (s == "es_db") return SweepAxis::es_db;
    if (s == "r_s") return SweepAxis::r_s;
    if (s == "esi_db") return SweepAxis::esi_db;
    if (s == "d_e") return SweepAxis::d_e;
    if (s == "m_count") return SweepAxis::m_count;
    throw std::invalid_argument("unknown sweep axis: " + std::string(s));
}

SweepMethod sweep_method_from_string(std::string_view s) {
    if (s == "closed_form") return SweepMethod::closed_form;
    if (s == "quadrature") return SweepMethod::quadrature;
    if (s == "monte_carlo") return SweepMethod::monte_carlo;
    throw std::invalid_argument("unknown method: " + std::string(s));
}

Scenario PointParams::build_scenario() const {
    std::vector<std::array<double, 2>> pairs;
    if (geom.use_positions) {
        const std::size_t count = m.value_or(geom.positions.size());
        if (count > geom.positions.size())
            throw std::invalid_argument("sweep point: m exceeds available interferer positions");
        for (std::size_t k = 0; k < count; ++k) {
            const double p = geom.positions[k];
            pairs.push_back({std::fabs(p - geom.d_b), std::fabs(p - geom.d_e)});
        }
    } else {
        pairs = geom.pairs;
        if (m && *m < pairs.size()) pairs.resize(*m);
        if (m && *m > pairs.size())
            throw std::invalid_argument("sweep point: m exceeds available interferer pairs");
    }
    const double esi[] = {esi_db};
    return from_db(es_db, pairs.empty() ? std::span<const double>{} : std::span<const double>(esi),
                   alpha, geom.d_b, geom.d_e, pairs);
}

std::vector<double> SweepSpec::axis_values() const {
    if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be positive");
    if (stop < start) throw std::invalid_argument("sweep: empty axis range");
    std::vector<double> values;
    for (int k = 0;; ++k) {
        const double v = start + step * k;
        if (v > stop + 1e-9 * step) break;
        values.push_back(v);
    }
    return values;
}

namespace {

void apply_axis(PointParams& p, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::es_db: p.es_db = value; break;
        case SweepAxis::r_s: p.r_s = value; break;
        case SweepAxis::esi_db: p.esi_db = value; break;
        case SweepAxis::d_e: p.geom.d_e = value; break;
        case SweepAxis::m_count: p.m = static_cast<std::size_t>(std::llround(value)); break;
    }
}

void apply_curve(PointParams& p, const Curve& c) {
    if (c.r_s) p.r_s = *c.r_s;
    if (c.es_db) p.es_db = *c.es_db;
    if (c.esi_db) p.esi_db = *c.esi_db;
    if (c.alpha) p.alpha = *c.alpha;
    if (c.m) p.m = *c.m;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.methods.empty()) throw std::invalid_argument("sweep: methods must be nonempty");
    const std::vector<double> values = spec.axis_values();
    if (values.empty()) throw std::invalid_argument("sweep: empty axis range");
    std::vector<Curve> curves = spec.curves;
    if (curves.empty()) curves.push_back(Curve{"base", {}, {}, {}, {}, {}});

    std::vector<SweepRow> rows;
    rows.reserve(values.size() * curves.size() * spec.methods.size());
    std::uint64_t point_index = 0;
    for (double v : values) {
        for (const Curve& curve : curves) {
            PointParams p = spec.base;
            apply_curve(p, curve);
            apply_axis(p, spec.axis, v);
            try {
                const Scenario s = p.build_scenario();
                const SecrecyTarget t{p.r_s};
                for (SweepMethod method : spec.methods) {
                    SweepRow row{v, curve.id, method, 0.0, 0.0, 0};
                    switch (method) {
                        case SweepMethod::closed_form: {
                            const SopResult r = sop_closed_form(s, t, spec.fallback);
                            row.sop = r.value;
                            row.fallback_count = static_cast<int>(r.fallback_pairs.size());
                            break;
                        }
                        case SweepMethod::quadrature: {
                            const SopResult r = sop_quadrature(s, t, spec.quad_tol);
                            row.sop = r.value;
                            row.uncertainty = r.uncertainty.value_or(0.0);
                            break;
                        }
                        case SweepMethod::monte_carlo: {
                            const McEstimate e = estimate_sop(s, t, spec.mc_trials,
                                                             spec.mc_seed + point_index,
                                                             spec.threads);
                            row.sop = e.sop_hat;
                            row.uncertainty = e.ci_half_width;
                            break;
                        }
                    }
                    rows.push_back(std::move(row));
                }
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep failed at " + std::string(to_string(spec.axis)) +
                                         " = " + fmt_g(v) + ", curve '" + curve.id +
                                         "': " + e.what());
            }
            ++point_index;
        }
    }
    return rows;
}

std::vector<PointDiscrepancy> cross_method_discrepancies(std::span<const SweepRow> rows) {
    // Group rows by (axis value, curve); rows arrive in point order.
    std::vector<PointDiscrepancy> out;
    std::map<std::pair<double, std::string>, std::vector<const SweepRow*>> groups;
    for (const SweepRow& r : rows) groups[{r.axis_value, r.curve_id}].push_back(&r);
    for (const auto& [key, group] : groups) {
        PointDiscrepancy d{key.first, key.second, 0.0, 0.0};
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                const double gap = std::fabs(group[i]->sop - group[j]->sop);
                d.max_pairwise = std::max(d.max_pairwise, gap);
                const auto mi = group[i]->method;
                const auto mj = group[j]->method;
                const bool closed_quad =
                    (mi == SweepMethod::closed_form && mj == SweepMethod::quadrature) ||
                    (mi == SweepMethod::quadrature && mj == SweepMethod::closed_form);
                if (closed_quad) d.closed_vs_quadrature = std::max(d.closed_vs_quadrature, gap);
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

template <typename T>
std::vector<T> pick(const std::optional<std::vector<T>>& override_list, std::vector<T> defaults) {
    return override_list ? *override_list : std::move(defaults);
}

void product_curves(SweepSpec& spec, const std::vector<std::pair<std::string, std::vector<double>>>& params,
                    const std::vector<std::size_t>& m_list = {}) {
    // Cartesian product over up to two double-valued curve parameters plus
    // an optional interferer-count list.
    std::vector<Curve> curves{Curve{"", {}, {}, {}, {}, {}}};
    auto expand = [&](const std::string& name, const std::vector<double>& values) {
        std::vector<Curve> next;
        for (const Curve& c : curves) {
            for (double v : values) {
                Curve n = c;
                n.id += (n.id.empty() ? "" : "_") + name + fmt_g(v);
                if (name == "rs") n.r_s = v;
                else if (name == "es") n.es_db = v;
                else if (name == "esi") n.esi_db = v;
                else if (name == "a") n.alpha = v;
                next.push_back(std::move(n));
            }
        }
        curves = std::move(next);
    };
    for (const auto& [name, values] : params) expand(name, values);
    if (!m_list.empty()) {
        std::vector<Curve> next;
        for (const Curve& c : curves) {
            for (std::size_t m : m_list) {
                Curve n = c;
                n.id += (n.id.empty() ? "" : "_") + std::string("m") + std::to_string(m);
                n.m = m;
                next.push_back(std::move(n));
            }
        }
        curves = std::move(next);
    }
    spec.curves = std::move(curves);
}

}  // namespace

SweepSpec figure_preset(std::string_view id, const PresetOverrides& ov) {
    SweepSpec spec;
    if (id == "fig1") {
        // SOP vs Es/N0, default geometry, alpha = 3; curves over (r_s, EsI/N0).
        spec.axis = SweepAxis::es_db;
        spec.start = 0.0; spec.stop = 50.0; spec.step = 2.0;
        product_curves(spec, {{"rs", pick(ov.r_s, {0.1, 1.0})}, {"esi", pick(ov.esi_db, {0.0, 15.0, 35.0})}});
    } else if (id == "fig2") {
        // SOP vs r_s; curves over (alpha, Es/N0). EsI/N0 = 15 dB is a
        // best-guess default, the source text does not pin it.
        spec.axis = SweepAxis::r_s;
        spec.start = 0.1; spec.stop = 5.0; spec.step = 0.1;
        spec.base.esi_db = 15.0;
        product_curves(spec, {{"a", pick(ov.alpha, {2.0, 3.0, 4.0})}, {"es", pick(ov.es_db, {20.0, 30.0, 40.0})}});
    } else if (id == "fig3") {
        // SOP vs EsI/N0, default geometry, alpha = 3; curves over (r_s, Es/N0).
        spec.axis = SweepAxis::esi_db;
        spec.start = 0.0; spec.stop = 60.0; spec.step = 2.0;
        product_curves(spec, {{"rs", pick(ov.r_s, {0.1, 1.0})}, {"es", pick(ov.es_db, {30.0, 40.0})}});
    } else if (id == "fig4") {
        // SOP vs d_E with Eve sliding along the Alice-Bob ray. Interferer
        // positions are a best-guess reconstruction: default-geometry Eve
        // distances on the far side of Eve's default position (see README).
        spec.axis = SweepAxis::d_e;
        spec.start = 1.0; spec.stop = 20.0; spec.step = 1.0;
        spec.base.esi_db = 35.0;
        spec.base.geom.use_positions = true;
        spec.base.geom.positions = {40.0, 35.0, 30.0};
        product_curves(spec, {{"rs", pick(ov.r_s, {0.1, 1.0})}, {"es", pick(ov.es_db, {30.0, 40.0})}});
    } else if (id == "fig5") {
        // SOP vs Es/N0 for varying interferer counts, collinear layout:
        // first interferer 15 m from Alice, 1 m closer each. M caps at 5;
        // the 6th position (10 m) would coincide with Eve.
        spec.axis = SweepAxis::es_db;
        spec.start = 0.0; spec.stop = 50.0; spec.step = 2.0;
        spec.base.esi_db = 25.0;
        spec.base.geom.d_b = 1.0;
        spec.base.geom.d_e = 10.0;
        spec.base.geom.use_positions = true;
        spec.base.geom.positions = {15.0, 14.0, 13.0, 12.0, 11.0};
        product_curves(spec, {{"rs", pick(ov.r_s, {0.1, 1.0})}}, pick(ov.m, {1, 3, 5}));
    } else {
        throw std::invalid_argument("unknown figure id: " + std::string(id));
    }
    return spec;
}

namespace {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void emit_csv(std::span<const SweepRow> rows, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: empty table");
    out << "axis,curve,method,sop,uncertainty,fallbacks\n";
    for (const SweepRow& r : rows) {
        out << csv_num(r.axis_value) << ',' << r.curve_id << ',' << to_string(r.method) << ','
            << csv_num(r.sop) << ',' << csv_num(r.uncertainty) << ',' << r.fallback_count << '\n';
    }
}

void emit_csv_file(std::span<const SweepRow> rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    emit_csv(rows, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

Curve parse_curve_value(const std::string& value) {
    const auto colon = value.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("sweep spec: 'curve' takes 'id : key = value; ...'");
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t");
        return s.substr(a, b - a + 1);
    };
    Curve c;
    c.id = trim(value.substr(0, colon));
    if (c.id.empty() || c.id.find(',') != std::string::npos)
        throw std::invalid_argument("sweep spec: curve id must be nonempty and comma-free");
    std::istringstream rest(value.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("sweep spec: curve override needs 'key = value'");
        const std::string key = trim(item.substr(0, eq));
        const double v = detail::parse_double(trim(item.substr(eq + 1)), "curve." + key);
        if (key == "r_s") c.r_s = v;
        else if (key == "es_db") c.es_db = v;
        else if (key == "esi_db") c.esi_db = v;
        else if (key == "alpha") c.alpha = v;
        else if (key == "m") c.m = static_cast<std::size_t>(v);
        else throw std::invalid_argument("sweep spec: unknown curve key '" + key + "'");
    }
    return c;
}

}  // namespace

SweepSpec parse_sweep_spec(std::istream& in) {
    SweepSpec spec;
    spec.base.geom.pairs.clear();
    bool have_geometry = false;
    for (const auto& [key, value] : detail::read_key_values(in)) {
        if (key == "axis") {
            spec.axis = sweep_axis_from_string(value);
        } else if (key == "range") {
            const auto v = detail::parse_double_list(value, key);
            if (v.size() != 3) throw std::invalid_argument("sweep spec: 'range' takes 'start, stop, step'");
            spec.start = v[0]; spec.stop = v[1]; spec.step = v[2];
        } else if (key == "methods") {
            spec.methods.clear();
            std::istringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto a = item.find_first_not_of(" \t");
                const auto b = item.find_last_not_of(" \t");
                spec.methods.push_back(sweep_method_from_string(item.substr(a, b - a + 1)));
            }
        } else if (key == "trials") {
            spec.mc_trials = static_cast<std::uint64_t>(detail::parse_double(value, key));
        } else if (key == "seed") {
            spec.mc_seed = static_cast<std::uint64_t>(detail::parse_double(value, key));
        } else if (key == "quad_tol") {
            spec.quad_tol = detail::parse_double(value, key);
        } else if (key == "es_db") {
            spec.base.es_db = detail::parse_double(value, key);
        } else if (key == "esi_db") {
            spec.base.esi_db = detail::parse_double(value, key);
        } else if (key == "alpha") {
            spec.base.alpha = detail::parse_double(value, key);
        } else if (key == "r_s") {
            spec.base.r_s = detail::parse_double(value, key);
        } else if (key == "d_b") {
            spec.base.geom.d_b = detail::parse_double(value, key);
        } else if (key == "d_e") {
            spec.base.geom.d_e = detail::parse_double(value, key);
        } else if (key == "interferer") {
            const auto pair = detail::parse_double_list(value, key);
            if (pair.size() != 2) throw std::invalid_argument("sweep spec: 'interferer' takes 'd_bi, d_ei'");
            spec.base.geom.pairs.push_back({pair[0], pair[1]});
            have_geometry = true;
        } else if (key == "positions") {
            spec.base.geom.positions = detail::parse_double_list(value, key);
            spec.base.geom.use_positions = true;
            have_geometry = true;
        } else if (key == "m") {
            spec.base.m = static_cast<std::size_t>(detail::parse_double(value, key));
        } else if (key == "curve") {
            spec.curves.push_back(parse_curve_value(value));
        } else {
            throw std::invalid_argument("sweep spec: unknown key '" + key + "'");
        }
    }
    if (!have_geometry) spec.base.geom.pairs = {{10.0, 15.0}, {20.0, 10.0}, {25.0, 5.0}};
    if (spec.axis == SweepAxis::m_count && !spec.base.geom.use_positions)
        throw std::invalid_argument("sweep spec: m_count axis needs 'positions' geometry");
    return spec;
}

SweepSpec parse_sweep_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep spec file: " + path);
    return parse_sweep_spec(in);
}

}  // namespace sopcalc
