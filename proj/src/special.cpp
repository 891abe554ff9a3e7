#include "sopcalc/special.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

namespace sopcalc {

namespace {

constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;

// Ascending series, A&S 5.1.11: E1(x) = -gamma - ln x + sum (-1)^{n+1} x^n / (n n!).
// Used for x <= 1 where the alternating sum loses no precision to speak of.
long double e1_series_ld(long double x) {
    long double sum = 0.0L;
    long double term = 1.0L;  // x^n / n!
    for (int n = 1; n < 80; ++n) {
        term *= x / n;
        const long double add = (n % 2 == 1 ? term : -term) / n;
        sum += add;
        if (std::fabs(add) < 1e-22L * std::fabs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Stieltjes continued fraction, A&S 5.1.22, evaluated with modified Lentz:
// e^x E1(x) = 1/(x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...))))).
long double e1_scaled_cf_ld(long double x) {
    const long double tiny = 1e-300L;
    long double f = tiny;
    long double c = f;
    long double d = 0.0L;
    // Partial numerators a_k = 1, 1, 1, 2, 2, 3, 3, ...; denominators x,1,x,1,...
    for (int k = 1; k < 400; ++k) {
        const long double a = (k == 1) ? 1.0L : static_cast<long double>(k / 2);
        const long double b = (k % 2 == 1) ? x : 1.0L;
        d = b + a * d;
        if (d == 0.0L) d = tiny;
        c = b + a / c;
        if (c == 0.0L) c = tiny;
        d = 1.0L / d;
        const long double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0L) < 1e-20L) break;
    }
    return f;
}

}  // namespace

namespace detail {

long double e1_scaled_ld(long double x) {
    if (x <= 1.0L) return e1_series_ld(x) * std::exp(x);
    return e1_scaled_cf_ld(x);
}

}  // namespace detail

double expint_ei(double x) {
    if (!(x < 0.0)) throw std::domain_error("expint_ei: argument must be negative, got " + std::to_string(x));
    const long double ax = -static_cast<long double>(x);
    // Ei(x) = -E1(-x) = -e^{x} * (e^{-x} E1(-x))
    return static_cast<double>(-std::exp(-ax) * detail::e1_scaled_ld(ax));
}

double expint_e1_scaled(double x) {
    if (!(x > 0.0)) throw std::domain_error("expint_e1_scaled: argument must be positive, got " + std::to_string(x));
    return static_cast<double>(detail::e1_scaled_ld(x));
}

degenerate_coefficients_error::degenerate_coefficients_error(std::size_t i, std::size_t j)
    : std::invalid_argument("degenerate coefficients: scales " + std::to_string(i) + " and " +
                            std::to_string(j) + " are not separated"),
      index_a(i),
      index_b(j) {}

XiCoefficients hypoexp_coefficients(std::span<const double> b) {
    if (b.empty()) throw std::invalid_argument("hypoexp_coefficients: empty scale list");
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!(b[i] > 0.0) || !std::isfinite(b[i]))
            throw std::invalid_argument("hypoexp_coefficients: scales must be positive and finite");
        for (std::size_t j = 0; j < i; ++j) {
            if (std::fabs(b[i] - b[j]) <= kHypoexpSeparation * std::max(b[i], b[j]))
                throw degenerate_coefficients_error(j, i);
        }
    }
    XiCoefficients out;
    out.xi.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        long double p = 1.0L;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (j == i) continue;
            p *= static_cast<long double>(b[i]) / (static_cast<long double>(b[i]) - b[j]);
        }
        out.xi[i] = static_cast<double>(p);
    }
    return out;
}

std::vector<double> enforce_distinct_scales(std::span<const double> b, const std::string& context) {
    std::vector<double> out(b.begin(), b.end());
    bool jittered = false;
    for (std::size_t i = 1; i < out.size(); ++i) {
        bool collides = true;
        while (collides) {
            collides = false;
            for (std::size_t j = 0; j < i; ++j) {
                if (std::fabs(out[i] - out[j]) <= kHypoexpSeparation * std::max(out[i], out[j])) {
                    out[i] *= 1.0 + 1e-6 * static_cast<double>(i + 1);
                    jittered = true;
                    collides = true;
                    break;
                }
            }
        }
    }
    if (jittered) {
        std::clog << "warning: " << context
                  << ": near-equal exponential scales; applied deterministic 1e-6 relative jitter\n";
    }
    return out;
}

}  // namespace sopcalc
