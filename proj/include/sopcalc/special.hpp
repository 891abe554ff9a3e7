#ifndef SOPCALC_SPECIAL_HPP
#define SOPCALC_SPECIAL_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sopcalc {

/// Partial-fraction weights of a hypoexponential PDF. Same length and order
/// as the scale list that produced them; they sum to 1.
struct XiCoefficients {
    std::vector<double> xi;

    std::size_t size() const { return xi.size(); }
    double operator[](std::size_t i) const { return xi[i]; }
};

/// Thrown when two scales in a hypoexponential list are too close for the
/// partial-fraction decomposition to be meaningful in double precision.
class degenerate_coefficients_error : public std::invalid_argument {
public:
    degenerate_coefficients_error(std::size_t i, std::size_t j);
    std::size_t index_a;
    std::size_t index_b;
};

/// Exponential integral Ei(x) for x < 0 (equivalently -E1(-x)).
/// Throws std::domain_error for x >= 0: every argument produced by the
/// closed-form SOP is strictly negative, so a nonnegative one means an
/// invariant was broken upstream.
double expint_ei(double x);

/// e^x * E1(x) for x > 0. Stays finite over the whole double range, which is
/// what lets e^{LK} * Ei(-(L+1)K) products be formed without overflow.
double expint_e1_scaled(double x);

namespace detail {
/// Long-double core behind both public entry points; also used directly by
/// the closed-form engine where the (L_B - L_E) cancellation needs the
/// extra mantissa bits.
long double e1_scaled_ld(long double x);
}  // namespace detail

/// Minimum relative separation below which a scale pair counts as degenerate.
inline constexpr double kHypoexpSeparation = 1e-9;

/// Partial-fraction coefficients Xi_i = prod_{j != i} b_i / (b_i - b_j) of
/// the PDF of sum_i w_i with w_i ~ exponential(mean b_i).
/// Requires all b_i > 0 and pairwise relative separation above
/// kHypoexpSeparation; throws degenerate_coefficients_error otherwise.
XiCoefficients hypoexp_coefficients(std::span<const double> b);

/// Jitter policy for near-degenerate scale lists: bumps colliding entries by
/// a deterministic relative offset (1e-6 steps) and warns on std::clog.
/// Returns the list unchanged when it is already separated.
std::vector<double> enforce_distinct_scales(std::span<const double> b,
                                            const std::string& context);

}  // namespace sopcalc

#endif
