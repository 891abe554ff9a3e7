#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "sopcalc/analytic.hpp"
#include "sopcalc/config.hpp"
#include "sopcalc/montecarlo.hpp"
#include "sopcalc/quadrature.hpp"
#include "sopcalc/sweep.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitRegression = 2;
constexpr double kRegressionThreshold = 1e-5;

std::vector<sopcalc::SweepMethod> parse_methods(const std::vector<std::string>& names) {
    std::vector<sopcalc::SweepMethod> out;
    for (const std::string& n : names) out.push_back(sopcalc::sweep_method_from_string(n));
    return out;
}

// Prints per-point cross-method spreads and flags the closed-form vs
// quadrature regression tripwire.
int report_discrepancies(const std::vector<sopcalc::SweepRow>& rows, std::size_t n_methods) {
    if (n_methods < 2) return 0;
    double worst = 0.0;
    for (const auto& d : sopcalc::cross_method_discrepancies(rows)) {
        std::cerr << "discrepancy axis=" << d.axis_value << " curve=" << d.curve_id
                  << " max_pairwise=" << d.max_pairwise
                  << " closed_vs_quadrature=" << d.closed_vs_quadrature << '\n';
        worst = std::max(worst, d.closed_vs_quadrature);
    }
    if (worst > kRegressionThreshold) {
        std::cerr << "error: closed form vs quadrature discrepancy " << worst << " exceeds "
                  << kRegressionThreshold << '\n';
        return kExitRegression;
    }
    return 0;
}

int run_sweep_and_emit(sopcalc::SweepSpec spec, const std::string& out_path) {
    const std::vector<sopcalc::SweepRow> rows = sopcalc::run_sweep(spec);
    if (out_path.empty() || out_path == "-") {
        sopcalc::emit_csv(rows, std::cout);
    } else {
        sopcalc::emit_csv_file(rows, out_path);
    }
    return report_discrepancies(rows, spec.methods.size());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage probability under Rayleigh fading with co-channel interference"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::vector<std::string> method_names = {"closed_form"};
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    double quad_tol = 1e-9;
    double fallback_pair_tol = 1e-7;
    double fallback_unit_tol = 1e-9;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--methods", method_names, "closed_form, quadrature, monte_carlo");
        cmd->add_option("--trials", trials, "Monte Carlo trials");
        cmd->add_option("--seed", seed, "Monte Carlo seed");
        cmd->add_option("--threads", threads, "worker threads for Monte Carlo");
        cmd->add_option("--quad-tol", quad_tol, "quadrature absolute tolerance");
        cmd->add_option("--fallback-pair-tol", fallback_pair_tol,
                        "relative L_B/L_E proximity that reroutes a term to quadrature");
        cmd->add_option("--fallback-unit-tol", fallback_unit_tol,
                        "L_E-to-1 proximity that reroutes a term to quadrature");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate the SOP at a single configuration");
    eval->add_option("--config", config_path, "scenario config file")->required();
    add_common(eval);

    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep from a spec file");
    std::string spec_path;
    sweep->add_option("spec", spec_path, "sweep spec file or preset id fig1..fig5")->required();
    sweep->add_option("-o,--out", out_path, "output CSV path (default stdout)");
    add_common(sweep);

    CLI::App* figure = app.add_subcommand("figure", "reproduce one of the evaluation figures");
    std::string figure_id;
    std::vector<double> curve_rs, curve_es, curve_esi, curve_alpha;
    std::vector<std::size_t> curve_m;
    figure->add_option("id", figure_id, "fig1, fig2, fig3, fig4 or fig5")->required();
    figure->add_option("-o,--out", out_path, "output CSV path (default stdout)");
    figure->add_option("--curve-rs", curve_rs, "override the preset r_s curve list");
    figure->add_option("--curve-es", curve_es, "override the preset Es/N0 curve list");
    figure->add_option("--curve-esi", curve_esi, "override the preset EsI/N0 curve list");
    figure->add_option("--curve-alpha", curve_alpha, "override the preset alpha curve list");
    figure->add_option("--curve-m", curve_m, "override the preset interferer-count list");
    add_common(figure);

    CLI::App* validate = app.add_subcommand(
        "validate", "cross-check closed form vs quadrature (and optionally Monte Carlo) on a grid");
    bool with_mc = false;
    validate->add_option("--config", config_path, "scenario config file (default geometry otherwise)");
    validate->add_flag("--with-mc", with_mc, "also run Monte Carlo at each grid point");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try {
        sopcalc::FallbackTolerances fallback{fallback_pair_tol, fallback_unit_tol};

        if (eval->parsed()) {
            const sopcalc::ScenarioConfig cfg = sopcalc::parse_scenario_config_file(config_path);
            const sopcalc::Scenario s = cfg.to_scenario();
            const auto methods = parse_methods(method_names);
            for (double rs : cfg.r_s) {
                const sopcalc::SecrecyTarget t{rs};
                std::cout << "r_s = " << rs << '\n';
                double closed = 0.0, quad = 0.0;
                bool have_closed = false, have_quad = false;
                for (sopcalc::SweepMethod m : methods) {
                    switch (m) {
                        case sopcalc::SweepMethod::closed_form: {
                            const auto r = sopcalc::sop_closed_form(s, t, fallback);
                            std::cout << "  " << sopcalc::to_string(r.method) << ": " << r.value;
                            if (!r.fallback_pairs.empty())
                                std::cout << "  (" << r.fallback_pairs.size() << " terms via quadrature)";
                            std::cout << '\n';
                            closed = r.value;
                            have_closed = true;
                            break;
                        }
                        case sopcalc::SweepMethod::quadrature: {
                            const auto r = sopcalc::sop_quadrature(s, t, quad_tol);
                            std::cout << "  quadrature: " << r.value << '\n';
                            quad = r.value;
                            have_quad = true;
                            break;
                        }
                        case sopcalc::SweepMethod::monte_carlo: {
                            const auto e = sopcalc::estimate_sop(s, t, trials, seed, threads);
                            std::cout << "  monte_carlo: " << e.sop_hat << " +/- " << e.ci_half_width
                                      << "  (" << e.trials << " trials, seed " << e.seed << ")\n";
                            break;
                        }
                    }
                }
                if (have_closed && have_quad && std::fabs(closed - quad) > kRegressionThreshold) {
                    std::cerr << "error: closed form vs quadrature discrepancy "
                              << std::fabs(closed - quad) << " exceeds " << kRegressionThreshold << '\n';
                    return kExitRegression;
                }
            }
            return 0;
        }

        if (sweep->parsed()) {
            sopcalc::SweepSpec spec;
            if (spec_path.rfind("fig", 0) == 0 && spec_path.size() == 4) {
                spec = sopcalc::figure_preset(spec_path);
            } else {
                spec = sopcalc::parse_sweep_spec_file(spec_path);
            }
            if (sweep->count("--methods")) spec.methods = parse_methods(method_names);
            if (sweep->count("--trials")) spec.mc_trials = trials;
            if (sweep->count("--seed")) spec.mc_seed = seed;
            spec.threads = threads;
            if (sweep->count("--quad-tol")) spec.quad_tol = quad_tol;
            spec.fallback = fallback;
            return run_sweep_and_emit(std::move(spec), out_path);
        }

        if (figure->parsed()) {
            sopcalc::PresetOverrides ov;
            if (!curve_rs.empty()) ov.r_s = curve_rs;
            if (!curve_es.empty()) ov.es_db = curve_es;
            if (!curve_esi.empty()) ov.esi_db = curve_esi;
            if (!curve_alpha.empty()) ov.alpha = curve_alpha;
            if (!curve_m.empty()) ov.m = curve_m;
            sopcalc::SweepSpec spec = sopcalc::figure_preset(figure_id, ov);
            if (figure->count("--methods")) spec.methods = parse_methods(method_names);
            if (figure->count("--trials")) spec.mc_trials = trials;
            if (figure->count("--seed")) spec.mc_seed = seed;
            spec.threads = threads;
            if (figure->count("--quad-tol")) spec.quad_tol = quad_tol;
            spec.fallback = fallback;
            return run_sweep_and_emit(std::move(spec), out_path);
        }

        if (validate->parsed()) {
            sopcalc::SweepSpec spec;
            if (!config_path.empty()) {
                const sopcalc::ScenarioConfig cfg = sopcalc::parse_scenario_config_file(config_path);
                spec.base.alpha = cfg.alpha;
                spec.base.esi_db = cfg.esi_db.front();
                spec.base.geom.d_b = cfg.d_b;
                spec.base.geom.d_e = cfg.d_e;
                if (!cfg.interferer_pairs.empty()) spec.base.geom.pairs = cfg.interferer_pairs;
            }
            spec.axis = sopcalc::SweepAxis::es_db;
            spec.start = 0.0;
            spec.stop = 50.0;
            spec.step = 10.0;
            spec.methods = {sopcalc::SweepMethod::closed_form, sopcalc::SweepMethod::quadrature};
            if (with_mc) spec.methods.push_back(sopcalc::SweepMethod::monte_carlo);
            spec.mc_trials = trials;
            spec.mc_seed = seed;
            spec.threads = threads;
            spec.quad_tol = quad_tol;
            spec.fallback = fallback;
            for (double rs : {0.1, 1.0, 3.0})
                for (double esi : {0.0, 15.0, 35.0})
                    spec.curves.push_back(sopcalc::Curve{
                        "rs" + std::to_string(rs).substr(0, 3) + "_esi" + std::to_string(int(esi)),
                        rs, {}, esi, {}, {}});
            const auto rows = sopcalc::run_sweep(spec);
            return report_discrepancies(rows, spec.methods.size());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return 0;
}
