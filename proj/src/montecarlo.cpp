#include "sopcalc/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace sopcalc {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer (Vigna / Stafford mix13).
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed) : base_(mix64(seed + kGolden)) {}

std::uint64_t CounterRng::bits_at(std::uint64_t counter) const {
    return mix64(base_ + counter * kGolden);
}

double CounterRng::uniform_at(std::uint64_t counter) const {
    return (static_cast<double>(bits_at(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::exponential_at(std::uint64_t counter) const {
    return -std::log(uniform_at(counter));
}

SinrSample sample_sinr_pair(const Scenario& s, const CounterRng& rng, std::uint64_t trial_index) {
    const std::size_t m = s.interferer_count();
    const std::uint64_t base = trial_index * (2 * (m + 1));
    const double w_b = rng.exponential_at(base);
    const double w_e = rng.exponential_at(base + 1);
    double interf_b = 0.0;
    double interf_e = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        interf_b += s.interference_scale_b(i) * rng.exponential_at(base + 2 + 2 * i);
        interf_e += s.interference_scale_e(i) * rng.exponential_at(base + 3 + 2 * i);
    }
    const double a_b = s.es_lin / (1.0 + std::pow(s.d_b, s.alpha));
    const double a_e = s.es_lin / (1.0 + std::pow(s.d_e, s.alpha));
    return {a_b * w_b / (s.n0 + interf_b), a_e * w_e / (s.n0 + interf_e)};
}

McEstimate estimate_sop(const Scenario& s, SecrecyTarget t, std::uint64_t trials,
                        std::uint64_t seed, unsigned threads) {
    s.validate();
    if (trials < 1) throw std::invalid_argument("estimate_sop: trials must be >= 1");
    if (!(t.r_s >= 0.0)) throw std::invalid_argument("estimate_sop: r_s must be >= 0");
    if (threads == 0) threads = 1;

    const CounterRng rng(seed);
    const double srs = std::exp2(t.r_s);
    // Precompute the fixed per-interferer scales once; the sampler recomputes
    // them per call, which is too slow for 1e7-trial runs.
    const std::size_t m = s.interferer_count();
    std::vector<double> sc_b(m), sc_e(m);
    for (std::size_t i = 0; i < m; ++i) {
        sc_b[i] = s.interference_scale_b(i);
        sc_e[i] = s.interference_scale_e(i);
    }
    const double a_b = s.es_lin / (1.0 + std::pow(s.d_b, s.alpha));
    const double a_e = s.es_lin / (1.0 + std::pow(s.d_e, s.alpha));

    auto count_block = [&](std::uint64_t first, std::uint64_t last) {
        std::uint64_t outages = 0;
        const std::uint64_t stride = 2 * (m + 1);
        for (std::uint64_t trial = first; trial < last; ++trial) {
            const std::uint64_t base = trial * stride;
            double interf_b = 0.0;
            double interf_e = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                interf_b += sc_b[i] * rng.exponential_at(base + 2 + 2 * i);
                interf_e += sc_e[i] * rng.exponential_at(base + 3 + 2 * i);
            }
            const double gamma_b = a_b * rng.exponential_at(base) / (s.n0 + interf_b);
            const double gamma_e = a_e * rng.exponential_at(base + 1) / (s.n0 + interf_e);
            if (gamma_b + 1.0 <= srs * (gamma_e + 1.0)) ++outages;
        }
        return outages;
    };

    // Fixed substream blocks; block boundaries do not depend on thread count.
    constexpr std::uint64_t kBlock = 1 << 16;
    const std::uint64_t n_blocks = (trials + kBlock - 1) / kBlock;
    std::uint64_t total = 0;
    if (threads == 1 || n_blocks == 1) {
        for (std::uint64_t blk = 0; blk < n_blocks; ++blk)
            total += count_block(blk * kBlock, std::min(trials, (blk + 1) * kBlock));
    } else {
        std::vector<std::uint64_t> per_block(n_blocks, 0);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t blk = w; blk < n_blocks; blk += threads)
                    per_block[blk] = count_block(blk * kBlock, std::min(trials, (blk + 1) * kBlock));
            });
        }
        for (auto& th : pool) th.join();
        for (std::uint64_t c : per_block) total += c;
    }

    const double p = static_cast<double>(total) / static_cast<double>(trials);
    const double ci = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return {p, trials, ci, seed};
}

}  // namespace sopcalc
