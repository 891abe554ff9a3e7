#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sopcalc/quadrature.hpp"
#include "sopcalc/special.hpp"

using namespace sopcalc;

namespace {

// Independent oracle for e^x E1(x): ascending series below x = 3, and the
// contracted continued fraction 1/(x+1 - 1/(x+3 - 4/(x+5 - 9/(...)))) above,
// evaluated by backward recurrence with depth doubling. Different algorithm
// and switchover than the library path.
long double oracle_e1_scaled(long double x) {
    if (x < 3.0L) {
        const long double euler = 0.57721566490153286060651209008240243L;
        long double sum = 0.0L, term = 1.0L;
        for (int n = 1; n < 200; ++n) {
            term *= -x / n;
            sum += term / n;
            if (std::fabs(term / n) < 1e-24L * (std::fabs(sum) + 1.0L)) break;
        }
        return (-euler - std::log(x) - sum) * std::exp(x);
    }
    long double prev = -1.0L;
    for (int depth = 32;; depth *= 2) {
        long double tail = 0.0L;
        for (int k = depth; k >= 1; --k)
            tail = static_cast<long double>(k) * k / (x + (2 * k + 1) - tail);
        const long double v = 1.0L / (x + 1.0L - tail);
        if (std::fabs(v - prev) <= 1e-21L * v || depth > 1 << 20) return v;
        prev = v;
    }
}

double hypoexp_pdf(const std::vector<double>& b, const XiCoefficients& xi, double z) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += xi[i] / b[i] * std::exp(-z / b[i]);
    return s;
}

}  // namespace

TEST_CASE("Ei at reference points") {
    CHECK(expint_ei(-1.0) == doctest::Approx(-0.21938393439552).epsilon(1e-11));
    CHECK(expint_ei(-0.5) == doctest::Approx(-0.55977359477616).epsilon(1e-11));
    CHECK(std::fabs(expint_ei(-50.0)) < 1e-23);
}

TEST_CASE("Ei rejects nonnegative arguments") {
    CHECK_THROWS_AS(expint_ei(0.0), std::domain_error);
    CHECK_THROWS_AS(expint_ei(1.0), std::domain_error);
    CHECK_THROWS_AS(expint_e1_scaled(0.0), std::domain_error);
    CHECK_THROWS_AS(expint_e1_scaled(-2.0), std::domain_error);
}

TEST_CASE("scaled E1 at reference points") {
    CHECK(expint_e1_scaled(1.0) == doctest::Approx(0.59634736232319).epsilon(1e-11));
    // leading asymptotics 1/x (1 - 1/x + 2/x^2 - ...)
    CHECK(expint_e1_scaled(1000.0) == doctest::Approx(0.00099900199402388).epsilon(1e-12));
    for (double x : {1e4, 1e6, 1e8, 1e12}) {
        CHECK(x * expint_e1_scaled(x) == doctest::Approx(1.0).epsilon(2.0 / x));
    }
    CHECK(std::isfinite(expint_e1_scaled(1e308)));
}

TEST_CASE("Ei and scaled E1 match the independent oracle to 1e-12") {
    const int n = 1000;
    for (int k = 0; k < n; ++k) {
        const double x = std::pow(10.0, -6.0 + (std::log10(700.0) + 6.0) * k / (n - 1));
        const double want = static_cast<double>(oracle_e1_scaled(x));
        CHECK(std::fabs(expint_e1_scaled(x) - want) <= 1e-12 * std::fabs(want));
        const double want_ei = static_cast<double>(-std::exp(-static_cast<long double>(x)) *
                                                   oracle_e1_scaled(x));
        CHECK(std::fabs(expint_ei(-x) - want_ei) <= 1e-12 * std::fabs(want_ei));
    }
}

TEST_CASE("Ei / scaled E1 identity") {
    for (double x = 0.01; x <= 100.0; x *= 1.7) {
        const double lhs = expint_ei(-x);
        const double rhs = -expint_e1_scaled(x) * std::exp(-x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("hypoexponential coefficients at reference lists") {
    const double b1[] = {5.0};
    auto xi1 = hypoexp_coefficients(b1);
    REQUIRE(xi1.size() == 1);
    CHECK(xi1[0] == doctest::Approx(1.0));

    const double b2[] = {2.0, 1.0};
    auto xi2 = hypoexp_coefficients(b2);
    CHECK(xi2[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(xi2[1] == doctest::Approx(-1.0).epsilon(1e-14));

    const double b3[] = {1.0, 2.0, 4.0};
    auto xi3 = hypoexp_coefficients(b3);
    CHECK(xi3[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(xi3[1] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(xi3[2] == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("hypoexponential PDF matches a two-exponential convolution") {
    // f(z) = int_0^z (1/2) e^{-u/2} e^{-(z-u)} du for scales (2, 1)
    const std::vector<double> b = {2.0, 1.0};
    const auto xi = hypoexp_coefficients(b);
    for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const auto conv = integrate_adaptive(
            [&](double u) { return 0.5 * std::exp(-u / 2.0) * std::exp(-(z - u)); }, 0.0, z, 1e-13);
        CHECK(hypoexp_pdf(b, xi, z) == doctest::Approx(conv.value).epsilon(1e-10));
    }
}

TEST_CASE("hypoexponential invariants on random lists") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = 1 + gen() % 8;
        std::vector<double> b;
        double v = 0.05 + u(gen);
        for (std::size_t i = 0; i < m; ++i) {
            b.push_back(v);
            v *= 1.2 + u(gen);
        }
        std::shuffle(b.begin(), b.end(), gen);
        const auto xi = hypoexp_coefficients(b);

        long double sum = 0.0L;
        for (std::size_t i = 0; i < m; ++i) sum += xi[i];
        CHECK(std::fabs(static_cast<double>(sum) - 1.0) < 1e-10);

        // integral of the reconstructed PDF over [0, inf)
        const auto norm = integrate_adaptive(
            [&](double t) {
                const double z = t / (1.0 - t);
                return hypoexp_pdf(b, xi, z) / ((1.0 - t) * (1.0 - t));
            },
            0.0, 1.0, 1e-10);
        CHECK(norm.value == doctest::Approx(1.0).epsilon(1e-8));

        // the signed mixture stays a valid density
        for (int k = 0; k <= 60; ++k) {
            const double z = std::pow(10.0, -2.0 + 4.0 * k / 60.0);
            CHECK(hypoexp_pdf(b, xi, z) >= -1e-12);
        }
    }
}

TEST_CASE("hypoexponential coefficients are scale free") {
    const std::vector<double> b = {0.7, 1.9, 4.2, 11.0};
    const auto xi = hypoexp_coefficients(b);
    for (double c : {1e-6, 0.5, 3.0, 1e8}) {
        std::vector<double> scaled;
        for (double v : b) scaled.push_back(c * v);
        const auto xi_s = hypoexp_coefficients(scaled);
        for (std::size_t i = 0; i < b.size(); ++i)
            CHECK(xi_s[i] == doctest::Approx(xi[i]).epsilon(1e-12));
    }
}

TEST_CASE("near-equal scales are rejected with indices") {
    const double b[] = {1.0, 2.0, 1.0 + 1e-12};
    try {
        hypoexp_coefficients(b);
        FAIL("expected degenerate_coefficients_error");
    } catch (const degenerate_coefficients_error& e) {
        CHECK(e.index_a == 0);
        CHECK(e.index_b == 2);
    }
    CHECK_THROWS_AS((void)hypoexp_coefficients(std::vector<double>{1.0, -2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)hypoexp_coefficients(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("jitter policy separates colliding scales deterministically") {
    const std::vector<double> b = {3.0, 3.0, 5.0};
    const auto once = enforce_distinct_scales(b, "test");
    const auto twice = enforce_distinct_scales(b, "test");
    CHECK(once == twice);
    CHECK_NOTHROW((void)hypoexp_coefficients(once));
    CHECK(once[0] == 3.0);
    CHECK(once[1] == doctest::Approx(3.0).epsilon(1e-5));
    CHECK(once[1] != 3.0);
    // already-distinct lists pass through untouched
    const std::vector<double> ok = {1.0, 2.0, 3.0};
    CHECK(enforce_distinct_scales(ok, "test") == ok);
}
