#ifndef SOPCALC_MONTECARLO_HPP
#define SOPCALC_MONTECARLO_HPP

#include <cstdint>

#include "sopcalc/scenario.hpp"

namespace sopcalc {

/// Counter-based generator: draw n is a splitmix64-style bijective mix of
/// (stream base + n * golden ratio). Any draw is addressable directly, so
/// substreams are just disjoint counter ranges and results cannot depend on
/// thread count.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed);

    std::uint64_t bits_at(std::uint64_t counter) const;
    /// Uniform in the open interval (0, 1).
    double uniform_at(std::uint64_t counter) const;
    /// Unit-mean exponential draw.
    double exponential_at(std::uint64_t counter) const;

private:
    std::uint64_t base_;
};

/// One Monte Carlo draw of the two SINRs.
struct SinrSample {
    double gamma_b;
    double gamma_e;
};

/// SOP estimate with its 95% normal-approximation confidence interval,
/// ci_half_width = 1.96 sqrt(p(1-p)/n).
struct McEstimate {
    double sop_hat;
    std::uint64_t trials;
    double ci_half_width;
    std::uint64_t seed;
};

/// Draws trial `trial_index` of the stream: |g|^2 values are unit-mean
/// exponentials; Bob's and Eve's fading (direct and per interferer) are all
/// independent. Counters 2(M+1) per trial.
SinrSample sample_sinr_pair(const Scenario& s, const CounterRng& rng, std::uint64_t trial_index);

/// Estimates the SOP as the outage fraction over `trials` draws. Identical
/// (seed, trials, scenario) give a bit-identical estimate at any thread
/// count: threads own disjoint trial blocks and the reduction is an integer
/// sum in block order.
McEstimate estimate_sop(const Scenario& s, SecrecyTarget t, std::uint64_t trials,
                        std::uint64_t seed, unsigned threads = 1);

}  // namespace sopcalc

#endif
