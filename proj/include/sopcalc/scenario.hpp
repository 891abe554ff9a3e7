#ifndef SOPCALC_SCENARIO_HPP
#define SOPCALC_SCENARIO_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace sopcalc {

/// One co-channel interfering base station: linear transmit energy plus its
/// distances to Bob and Eve. All fields strictly positive.
struct Interferer {
    double esi_lin;
    double d_bi;
    double d_ei;
};

/// Full system description shared by the closed-form, quadrature and
/// Monte Carlo engines. Immutable value type once built; the interferer
/// list order is the index i of the SINR model and is never reordered.
struct Scenario {
    double es_lin;   ///< Alice's transmit energy, linear scale
    double n0;       ///< noise PSD (1 in normalized mode)
    double alpha;    ///< path-loss exponent, >= 0
    double d_b;      ///< Alice-Bob distance, m
    double d_e;      ///< Alice-Eve distance, m
    std::vector<Interferer> interferers;

    std::size_t interferer_count() const { return interferers.size(); }
    double es_db() const;  ///< transmit energy back in dB over N0

    /// Mean received SNR of the direct link to Bob/Eve, E_s/((1+d^alpha) N0).
    double gamma_tilde_b() const;
    double gamma_tilde_e() const;

    /// Mean interference energy component at Bob/Eve from interferer i,
    /// E_si/(1+d^alpha); the exponential scale entering every distribution.
    double interference_scale_b(std::size_t i) const;
    double interference_scale_e(std::size_t i) const;

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// Target secrecy rate in bit/s/Hz; must be >= 0.
struct SecrecyTarget {
    double r_s;
};

/// Builds a Scenario from dB-over-N0 energies (N0 normalized to 1) and
/// explicit (d_bi, d_ei) distance pairs. esi_db must be empty (no
/// interferers), a single value applied to every pair, or one value per pair.
Scenario from_db(double es_db, std::span<const double> esi_db, double alpha, double d_b,
                 double d_e, std::span<const std::array<double, 2>> interferer_distances);

/// Collinear layout: interferer k (1-based) sits at first_distance - (k-1)*step
/// from Alice on the Bob/Eve ray; distances are |position - d_b| and
/// |position - d_e|. Rejects any resulting nonpositive distance.
Scenario collinear_scenario(double es_db, double esi_db, double alpha, double d_b, double d_e,
                            std::size_t m, double first_distance, double step);

/// The default evaluation geometry: d_b = 2.5 m, d_e = 25 m, three
/// interferers with Bob-distances (10, 20, 25) and Eve-distances (15, 10, 5).
Scenario default_scenario(double alpha, double es_db, double esi_db);

}  // namespace sopcalc

#endif
