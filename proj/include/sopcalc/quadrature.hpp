#ifndef SOPCALC_QUADRATURE_HPP
#define SOPCALC_QUADRATURE_HPP

#include <functional>
#include <span>
#include <stdexcept>

#include "sopcalc/analytic_types.hpp"
#include "sopcalc/scenario.hpp"

namespace sopcalc {

enum class Side { bob, eve };

/// Thrown when the adaptive integrator exhausts its subdivision budget
/// before reaching the requested tolerance. Carries the best estimate and
/// the error bound actually achieved.
class quadrature_convergence_error : public std::runtime_error {
public:
    quadrature_convergence_error(double estimate, double error_bound);
    double estimate;
    double error_bound;
};

struct QuadratureResult {
    double value;
    double error_bound;
    int subdivisions;
};

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// error bound drops below abs_tol; throws quadrature_convergence_error if
/// the budget runs out first. Endpoints are never evaluated.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_subdivisions = 2000);

/// Same, but seeded with interior breakpoints so integrands whose mass sits
/// in a very narrow region near one endpoint cannot slip through the first
/// error estimate. Breakpoints outside (a, b) are ignored.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    std::span<const double> breakpoints, double abs_tol,
                                    int max_subdivisions = 2000);

/// CDF of the SINR at Bob or Eve, via the closed expression
/// 1 - sum_i Xi(i) E_s e^{-(1+d^a) N0 x / E_s} / (E_s + (1+d^a) b_i x).
double cdf_sinr(const Scenario& s, Side side, double x);

/// PDF of Y = gamma_E + 1 on [1, inf), from the explicit two-term form
/// (not by numerical differentiation of cdf_sinr).
double pdf_y(const Scenario& s, double x);

/// SOP by adaptive quadrature of the integral of F_X(2^{r_s} x) f_Y(x) over
/// [1, inf), mapped to [0, 1) via x = 1 + u/(1-u). Independent of the
/// closed-form path; this is the analytic engine's oracle.
SopResult sop_quadrature(const Scenario& s, SecrecyTarget t, double abs_tol = 1e-9);

/// Complementary-event route Pr(X > 2^{r_s} Y); sums with sop_quadrature to 1.
double sop_quadrature_complement(const Scenario& s, SecrecyTarget t, double abs_tol = 1e-9);

/// The two core SOP integrals over [1, inf):
///   I1 = int e^{-Ky} / ((L_b+y)(L_e+y)^2) dy,
///   I2 = int e^{-Ky} / ((L_b+y)(L_e+y))   dy.
/// Requires K > 0, L_b + 1 > 0, L_e + 1 > 0. Absolute tolerance 1e-12.
double integral_i1(double l_b, double l_e, double k);
double integral_i2(double l_b, double l_e, double k);

/// Overflow-safe variants e^{K} * I1 and e^{K} * I2 (the damping factor is
/// taken at the lower limit instead), used by the closed-form fallback path.
double integral_i1_scaled(double l_b, double l_e, double k);
double integral_i2_scaled(double l_b, double l_e, double k);

}  // namespace sopcalc

#endif
