#include "sopcalc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "sopcalc/special.hpp"

namespace sopcalc {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] and the embedded 7-point Gauss
// weights, positive half (node 0 listed last).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kronrod = 0.0;
    double gauss = 0.0;
    const double fc = f(mid);
    kronrod += kWgk[7] * fc;
    gauss += kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fs = f(mid - dx) + f(mid + dx);
        kronrod += kWgk[i] * fs;
        if (i % 2 == 1) gauss += kWg[i / 2] * fs;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * h;
    const double diff = std::fabs((kronrod - gauss) * h);
    // QUADPACK-style sharpened error estimate.
    p.error = diff;
    if (diff > 0.0) {
        const double scale = std::fabs(kronrod * h);
        if (scale > 0.0) p.error = std::min(diff, scale * std::pow(200.0 * diff / scale, 1.5));
    }
    return p;
}

}  // namespace

quadrature_convergence_error::quadrature_convergence_error(double est, double err)
    : std::runtime_error("quadrature failed to converge: estimate " + std::to_string(est) +
                         ", error bound " + std::to_string(err)),
      estimate(est),
      error_bound(err) {}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    std::span<const double> breakpoints, double abs_tol,
                                    int max_subdivisions) {
    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> panels;
    double total_value = 0.0;
    double total_error = 0.0;
    int n = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gk15(f, edges[i], edges[i + 1]);
        total_value += p.value;
        total_error += p.error;
        panels.push(p);
        ++n;
    }
    while (total_error > abs_tol && n < max_subdivisions) {
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in double precision.
            panels.push(worst);
            break;
        }
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++n;
    }
    if (!(total_error <= abs_tol)) throw quadrature_convergence_error(total_value, total_error);
    return {total_value, total_error, n};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_subdivisions) {
    return integrate_adaptive(f, a, b, {}, abs_tol, max_subdivisions);
}

namespace {

// Seed points for the [1, inf) -> (0, 1) mapped integrands: their mass can be
// concentrated in an extremely narrow layer near u = 0 when the mean SINRs are
// small, which a single opening panel would miss entirely.
constexpr double kMappedSeeds[] = {1e-14, 1e-11, 1e-8, 1e-5, 1e-3, 1e-2, 0.1, 0.3, 0.6, 0.9};

}  // namespace

double cdf_sinr(const Scenario& s, Side side, double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("cdf_sinr: x must be nonnegative");
    if (s.interferers.empty()) throw std::invalid_argument("cdf_sinr: scenario has no interferers");
    const double c = 1.0 + std::pow(side == Side::bob ? s.d_b : s.d_e, s.alpha);
    std::vector<double> b(s.interferer_count());
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = side == Side::bob ? s.interference_scale_b(i) : s.interference_scale_e(i);
    b = enforce_distinct_scales(b, "cdf_sinr");
    const XiCoefficients xi = hypoexp_coefficients(b);
    const double damp = std::exp(-c * s.n0 * x / s.es_lin);
    long double sum = 0.0L;
    for (std::size_t i = 0; i < b.size(); ++i)
        sum += static_cast<long double>(xi[i]) * s.es_lin / (s.es_lin + c * b[i] * x);
    const double v = 1.0 - static_cast<double>(sum) * damp;
    return std::clamp(v, 0.0, 1.0);
}

double pdf_y(const Scenario& s, double x) {
    if (!(x >= 1.0)) throw std::invalid_argument("pdf_y: x must be >= 1");
    if (s.interferers.empty()) throw std::invalid_argument("pdf_y: scenario has no interferers");
    const double c = 1.0 + std::pow(s.d_e, s.alpha);
    std::vector<double> b(s.interferer_count());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = s.interference_scale_e(i);
    b = enforce_distinct_scales(b, "pdf_y");
    const XiCoefficients xi = hypoexp_coefficients(b);
    const double damp = std::exp(-c * s.n0 * (x - 1.0) / s.es_lin);
    long double sum = 0.0L;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const long double den = s.es_lin + b[i] * c * (x - 1.0);
        sum += static_cast<long double>(xi[i]) *
               (static_cast<long double>(s.es_lin) * b[i] / (den * den) + s.n0 / den);
    }
    return c * damp * static_cast<double>(sum);
}

namespace {

// Maps the SOP integrand from [1, inf) to u in (0, 1) via x = 1 + u/(1-u).
double sop_integrand(const Scenario& s, double srs, double u, bool complement) {
    const double om = 1.0 - u;
    const double x = 1.0 + u / om;
    if (!std::isfinite(x)) return 0.0;
    const double fx = cdf_sinr(s, Side::bob, srs * x - 1.0);
    const double fy = pdf_y(s, x);
    return (complement ? 1.0 - fx : fx) * fy / (om * om);
}

double sop_quadrature_raw(const Scenario& s, SecrecyTarget t, double abs_tol, bool complement) {
    s.validate();
    if (!(t.r_s >= 0.0)) throw std::invalid_argument("sop_quadrature: r_s must be >= 0");
    if (s.interferers.empty()) throw std::invalid_argument("sop_quadrature: scenario has no interferers");
    const double srs = std::exp2(t.r_s);
    auto f = [&](double u) { return sop_integrand(s, srs, u, complement); };
    return integrate_adaptive(f, 0.0, 1.0, kMappedSeeds, abs_tol, 4000).value;
}

}  // namespace

SopResult sop_quadrature(const Scenario& s, SecrecyTarget t, double abs_tol) {
    const double v = sop_quadrature_raw(s, t, abs_tol, false);
    return {std::clamp(v, 0.0, 1.0), SopMethod::quadrature, {}, abs_tol};
}

double sop_quadrature_complement(const Scenario& s, SecrecyTarget t, double abs_tol) {
    return sop_quadrature_raw(s, t, abs_tol, true);
}

namespace {

void check_i_args(double l_b, double l_e, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("core integral: K must be positive");
    if (!(l_b + 1.0 > 0.0) || !(l_e + 1.0 > 0.0))
        throw std::invalid_argument("core integral: L + 1 must be positive");
}

// e^{k} * int_1^inf e^{-ky} / ((l_b+y)(l_e+y)^p) dy, damped from the lower limit.
double integral_scaled(double l_b, double l_e, double k, int p) {
    check_i_args(l_b, l_e, k);
    auto f = [=](double u) {
        const double om = 1.0 - u;
        const double y = 1.0 + u / om;
        if (!std::isfinite(y)) return 0.0;
        const double den = (l_b + y) * std::pow(l_e + y, p);
        return std::exp(-k * (y - 1.0)) / (den * om * om);
    };
    return integrate_adaptive(f, 0.0, 1.0, kMappedSeeds, 1e-12, 4000).value;
}

}  // namespace

double integral_i1_scaled(double l_b, double l_e, double k) { return integral_scaled(l_b, l_e, k, 2); }

double integral_i2_scaled(double l_b, double l_e, double k) { return integral_scaled(l_b, l_e, k, 1); }

double integral_i1(double l_b, double l_e, double k) {
    return std::exp(-k) * integral_i1_scaled(l_b, l_e, k);
}

double integral_i2(double l_b, double l_e, double k) {
    return std::exp(-k) * integral_i2_scaled(l_b, l_e, k);
}

}  // namespace sopcalc
