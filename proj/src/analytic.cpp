#include "sopcalc/analytic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "sopcalc/quadrature.hpp"

namespace sopcalc {

std::string_view to_string(SopMethod m) {
    switch (m) {
        case SopMethod::closed_form: return "closed_form";
        case SopMethod::closed_form_with_fallback: return "closed_form_with_fallback";
        case SopMethod::quadrature: return "quadrature";
        case SopMethod::monte_carlo: return "monte_carlo";
        case SopMethod::baseline_no_interference: return "baseline_no_interference";
    }
    return "unknown";
}

numerical_breakdown_error::numerical_breakdown_error(std::size_t i, std::size_t j, double eb, double ee)
    : std::runtime_error("numerical breakdown in closed-form term (" + std::to_string(i) + ", " +
                         std::to_string(j) + "), exponents " + std::to_string(eb) + ", " +
                         std::to_string(ee)),
      pair_i(i),
      pair_j(j) {}

ClosedFormTerms build_terms(const Scenario& s, SecrecyTarget t) {
    s.validate();
    if (!(t.r_s >= 0.0)) throw std::invalid_argument("build_terms: r_s must be >= 0");
    if (s.interferers.empty())
        throw std::invalid_argument("build_terms: no interferers; use baseline");

    const std::size_t m = s.interferer_count();
    const double srs = std::exp2(t.r_s);
    const double c_b = 1.0 + std::pow(s.d_b, s.alpha);
    const double c_e = 1.0 + std::pow(s.d_e, s.alpha);

    ClosedFormTerms terms;
    terms.gamma_tilde_b = s.gamma_tilde_b();
    terms.gamma_tilde_e = s.gamma_tilde_e();
    terms.k_const = srs / terms.gamma_tilde_b + 1.0 / terms.gamma_tilde_e;
    assert(terms.k_const > 0.0);

    std::vector<double> b_b(m), b_e(m);
    for (std::size_t i = 0; i < m; ++i) {
        b_b[i] = s.interference_scale_b(i);
        b_e[i] = s.interference_scale_e(i);
    }
    terms.b_b = enforce_distinct_scales(b_b, "build_terms (Bob scales)");
    terms.b_e = enforce_distinct_scales(b_e, "build_terms (Eve scales)");
    terms.xi_b = hypoexp_coefficients(terms.b_b);
    terms.xi_e = hypoexp_coefficients(terms.b_e);

    terms.l_b.resize(m);
    terms.l_e.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        terms.l_b[i] = (s.es_lin - c_b * terms.b_b[i]) / (c_b * srs * terms.b_b[i]);
        terms.l_e[i] = (s.es_lin - c_e * terms.b_e[i]) / (c_e * terms.b_e[i]);
        // Algebraic consequence of the L definitions; a violation means the
        // scenario fields are inconsistent.
        assert(terms.l_b[i] + 1.0 > 0.0);
        assert(terms.l_e[i] + 1.0 > 0.0);
    }
    return terms;
}

namespace {

long double psi(long double l, long double k) {
    const long double arg = (1.0L + l) * k;
    assert(arg > 0.0L);  // Ei argument -(1+L)K stays strictly negative
    return detail::e1_scaled_ld(arg);
}

// e^{K} * I1 and e^{K} * I2 in one pass, in long double: the (L_E - L_B)
// differences cancel hard when the two poles approach each other.
void closed_terms_scaled(long double a, long double c, long double k, long double* i1s,
                         long double* i2s) {
    const long double pa = psi(a, k);
    const long double pc = psi(c, k);
    const long double d = c - a;
    *i2s = (pa - pc) / d;
    *i1s = (pa - pc) / (d * d) - 1.0L / ((1.0L + c) * d) + k * pc / d;
}

}  // namespace

double closed_form_i1(double l_b, double l_e, double k) {
    long double i1s, i2s;
    closed_terms_scaled(l_b, l_e, k, &i1s, &i2s);
    return static_cast<double>(std::exp(-static_cast<long double>(k)) * i1s);
}

double closed_form_i2(double l_b, double l_e, double k) {
    long double i1s, i2s;
    closed_terms_scaled(l_b, l_e, k, &i1s, &i2s);
    return static_cast<double>(std::exp(-static_cast<long double>(k)) * i2s);
}

SopResult sop_no_interference(double gamma_tilde_b, double gamma_tilde_e, SecrecyTarget t) {
    if (!(gamma_tilde_b > 0.0) || !(gamma_tilde_e > 0.0))
        throw std::invalid_argument("sop_no_interference: gamma values must be positive");
    if (!(t.r_s >= 0.0)) throw std::invalid_argument("sop_no_interference: r_s must be >= 0");
    const double srs = std::exp2(t.r_s);
    const double v = 1.0 - gamma_tilde_b / (gamma_tilde_b + srs * gamma_tilde_e) *
                               std::exp(-(srs - 1.0) / gamma_tilde_b);
    return {std::clamp(v, 0.0, 1.0), SopMethod::baseline_no_interference, {}, std::nullopt};
}

SopResult sop_closed_form(const Scenario& s, SecrecyTarget t, const FallbackTolerances& tol) {
    s.validate();
    if (!(t.r_s >= 0.0)) throw std::invalid_argument("sop_closed_form: r_s must be >= 0");
    if (s.interferers.empty()) return sop_no_interference(s.gamma_tilde_b(), s.gamma_tilde_e(), t);

    const ClosedFormTerms terms = build_terms(s, t);
    const std::size_t m = s.interferer_count();
    const long double srs = std::exp2(static_cast<long double>(t.r_s));
    const long double k = terms.k_const;
    const long double gte = terms.gamma_tilde_e;
    const double c_b = 1.0 + std::pow(s.d_b, s.alpha);
    // All per-term exponentials share e^{1/g_B + 1/g_E - K} = e^{(1 - 2^{r_s})/g_B},
    // which never exceeds 1 for r_s >= 0; forming it fused keeps low-SNR
    // scenarios out of overflow territory.
    const long double fused = std::exp((1.0L - srs) / terms.gamma_tilde_b);

    std::vector<std::pair<std::size_t, std::size_t>> fallback;
    long double acc = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const long double a = terms.l_b[i];
            const long double c = terms.l_e[j];
            const long double coeff = static_cast<long double>(s.es_lin) * s.n0 * terms.xi_b[i] *
                                      terms.xi_e[j] /
                                      (srs * c_b * terms.b_b[i] * terms.b_e[j]);
            long double i1s, i2s;
            const bool near_pole =
                std::fabs(static_cast<double>(a - c)) <
                    tol.l_pair_rel * std::max(1.0, std::fabs(terms.l_b[i])) ||
                std::fabs(terms.l_e[j] - 1.0) < tol.l_e_unit;
            if (near_pole) {
                i1s = integral_i1_scaled(terms.l_b[i], terms.l_e[j], terms.k_const);
                i2s = integral_i2_scaled(terms.l_b[i], terms.l_e[j], terms.k_const);
                fallback.emplace_back(i, j);
            } else {
                closed_terms_scaled(a, c, k, &i1s, &i2s);
            }
            const long double contrib = coeff * fused * (gte * i1s + i2s);
            if (!std::isfinite(static_cast<double>(contrib)))
                throw numerical_breakdown_error(i, j, static_cast<double>((1.0L + a) * k),
                                                static_cast<double>((1.0L + c) * k));
            acc += contrib;
        }
    }
    const double raw = static_cast<double>(1.0L - acc);
    const double clamped = std::clamp(raw, 0.0, 1.0);
    if (std::fabs(raw - clamped) >= 1e-9)
        throw std::runtime_error("sop_closed_form: raw value " + std::to_string(raw) +
                                 " outside [0,1] sanity band");
    return {clamped,
            fallback.empty() ? SopMethod::closed_form : SopMethod::closed_form_with_fallback,
            std::move(fallback), std::nullopt};
}

}  // namespace sopcalc
