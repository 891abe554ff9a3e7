#ifndef SOPCALC_ANALYTIC_HPP
#define SOPCALC_ANALYTIC_HPP

#include <stdexcept>

#include "sopcalc/analytic_types.hpp"
#include "sopcalc/scenario.hpp"
#include "sopcalc/special.hpp"

namespace sopcalc {

/// Everything the closed-form SOP needs, precomputed from a Scenario and a
/// target rate. All interferer-indexed lists have length M and share order
/// with the scenario's interferer list.
struct ClosedFormTerms {
    double gamma_tilde_b;
    double gamma_tilde_e;
    double k_const;            ///< 2^{r_s}/gamma_tilde_b + 1/gamma_tilde_e
    std::vector<double> b_b;   ///< interference scales at Bob (post jitter policy)
    std::vector<double> b_e;   ///< interference scales at Eve (post jitter policy)
    std::vector<double> l_b;   ///< (E_s - (1+d_B^a) b_Bi) / ((1+d_B^a) 2^{r_s} b_Bi)
    std::vector<double> l_e;   ///< (E_s - (1+d_E^a) b_Ej) / ((1+d_E^a) b_Ej)
    XiCoefficients xi_b;
    XiCoefficients xi_e;
};

/// Thrown when a closed-form term turns non-finite; carries the offending
/// (i, j) pair and the raw exponents involved.
class numerical_breakdown_error : public std::runtime_error {
public:
    numerical_breakdown_error(std::size_t i, std::size_t j, double exponent_b, double exponent_e);
    std::size_t pair_i;
    std::size_t pair_j;
};

/// Reroute thresholds for near-singular (i, j) terms; spec defaults,
/// overridable through the CLI.
struct FallbackTolerances {
    double l_pair_rel = 1e-7;  ///< |L_Bi - L_Ej| < l_pair_rel * max(1, |L_Bi|)
    double l_e_unit = 1e-9;    ///< |L_Ej - 1| < l_e_unit
};

/// Builds the closed-form constants. Requires M >= 1 (throws std::invalid_argument
/// with "use baseline" for M = 0) and r_s >= 0.
ClosedFormTerms build_terms(const Scenario& s, SecrecyTarget t);

/// The closed-form SOP. Near-singular (i, j) terms are computed by direct
/// quadrature of the underlying integrals instead and reported in
/// fallback_pairs. M = 0 scenarios route to sop_no_interference.
SopResult sop_closed_form(const Scenario& s, SecrecyTarget t, const FallbackTolerances& tol = {});

/// Classical Rayleigh wiretap baseline, the M = 0 limit:
/// 1 - (g_B / (g_B + 2^{r_s} g_E)) e^{-(2^{r_s} - 1)/g_B}.
SopResult sop_no_interference(double gamma_tilde_b, double gamma_tilde_e, SecrecyTarget t);

/// Closed forms of the core integrals I1 and I2, exposed so the tests
/// can pit them against the direct quadrature route.
double closed_form_i1(double l_b, double l_e, double k);
double closed_form_i2(double l_b, double l_e, double k);

}  // namespace sopcalc

#endif
