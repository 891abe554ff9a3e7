#ifndef SOPCALC_SWEEP_HPP
#define SOPCALC_SWEEP_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sopcalc/analytic.hpp"
#include "sopcalc/scenario.hpp"

namespace sopcalc {

enum class SweepAxis { es_db, r_s, esi_db, d_e, m_count };
enum class SweepMethod { closed_form, quadrature, monte_carlo };

std::string_view to_string(SweepAxis a);
std::string_view to_string(SweepMethod m);
SweepAxis sweep_axis_from_string(std::string_view s);
SweepMethod sweep_method_from_string(std::string_view s);

/// Interferer layout for a sweep. Explicit (d_bi, d_ei) pairs stay fixed as
/// the axis moves; line positions (distances from Alice on the Bob/Eve ray)
/// re-derive both distances, which is what the d_e and m_count axes need.
struct GeometrySpec {
    double d_b = 2.5;
    double d_e = 25.0;
    std::vector<std::array<double, 2>> pairs = {{10.0, 15.0}, {20.0, 10.0}, {25.0, 5.0}};
    std::vector<double> positions;
    bool use_positions = false;
};

/// One evaluation point before the axis value and curve overrides land.
struct PointParams {
    double es_db = 40.0;
    double esi_db = 15.0;
    double alpha = 3.0;
    double r_s = 1.0;
    GeometrySpec geom;
    std::optional<std::size_t> m;  ///< take only the first m interferers

    Scenario build_scenario() const;
};

/// Per-curve parameter overrides on top of the base point.
struct Curve {
    std::string id;
    std::optional<double> r_s;
    std::optional<double> es_db;
    std::optional<double> esi_db;
    std::optional<double> alpha;
    std::optional<std::size_t> m;
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::es_db;
    double start = 0.0;
    double stop = 50.0;
    double step = 2.0;
    PointParams base;
    std::vector<Curve> curves;  ///< empty means a single curve named "base"
    std::vector<SweepMethod> methods = {SweepMethod::closed_form};
    std::uint64_t mc_trials = 1'000'000;
    std::uint64_t mc_seed = 42;
    unsigned threads = 1;
    FallbackTolerances fallback;
    double quad_tol = 1e-9;

    std::vector<double> axis_values() const;
};

struct SweepRow {
    double axis_value;
    std::string curve_id;
    SweepMethod method;
    double sop;
    double uncertainty;    ///< 0 for closed form
    int fallback_count;    ///< 0 except closed form with reroutes
};

/// Evaluates the whole grid. Rows come out ordered by axis value, then curve
/// order, then method order; deterministic given the spec. Any engine error
/// is rethrown annotated with the failing (axis value, curve).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Per-point cross-method spread, for the regression tripwire.
struct PointDiscrepancy {
    double axis_value;
    std::string curve_id;
    double max_pairwise;
    double closed_vs_quadrature;  ///< 0 when either method is absent
};
std::vector<PointDiscrepancy> cross_method_discrepancies(std::span<const SweepRow> rows);

/// Overrides for the best-guess curve grids the figure presets ship with.
struct PresetOverrides {
    std::optional<std::vector<double>> r_s;
    std::optional<std::vector<double>> es_db;
    std::optional<std::vector<double>> esi_db;
    std::optional<std::vector<double>> alpha;
    std::optional<std::vector<std::size_t>> m;
};

/// The sweep configurations behind the five evaluation figures
/// (ids "fig1".."fig5"); throws std::invalid_argument for unknown ids.
SweepSpec figure_preset(std::string_view id, const PresetOverrides& overrides = {});

/// CSV with header `axis,curve,method,sop,uncertainty,fallbacks`, 12
/// significant digits, newline-terminated final row.
void emit_csv(std::span<const SweepRow> rows, std::ostream& out);
void emit_csv_file(std::span<const SweepRow> rows, const std::string& path);

/// Sweep spec file: the scenario config schema plus axis/range/methods/curve
/// keys (see README).
SweepSpec parse_sweep_spec(std::istream& in);
SweepSpec parse_sweep_spec_file(const std::string& path);

}  // namespace sopcalc

#endif
