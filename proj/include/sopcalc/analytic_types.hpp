#ifndef SOPCALC_ANALYTIC_TYPES_HPP
#define SOPCALC_ANALYTIC_TYPES_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace sopcalc {

enum class SopMethod {
    closed_form,
    closed_form_with_fallback,
    quadrature,
    monte_carlo,
    baseline_no_interference,
};

std::string_view to_string(SopMethod m);

/// A secrecy outage probability with its provenance. `uncertainty` is the
/// CI half-width for Monte Carlo or the achieved error bound for quadrature.
struct SopResult {
    double value;
    SopMethod method;
    std::vector<std::pair<std::size_t, std::size_t>> fallback_pairs;
    std::optional<double> uncertainty;
};

}  // namespace sopcalc

#endif
