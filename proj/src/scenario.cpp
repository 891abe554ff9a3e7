#include "sopcalc/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sopcalc {

namespace {

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

double Scenario::es_db() const { return 10.0 * std::log10(es_lin / n0); }

double Scenario::gamma_tilde_b() const { return es_lin / ((1.0 + std::pow(d_b, alpha)) * n0); }

double Scenario::gamma_tilde_e() const { return es_lin / ((1.0 + std::pow(d_e, alpha)) * n0); }

double Scenario::interference_scale_b(std::size_t i) const {
    const Interferer& f = interferers.at(i);
    return f.esi_lin / (1.0 + std::pow(f.d_bi, alpha));
}

double Scenario::interference_scale_e(std::size_t i) const {
    const Interferer& f = interferers.at(i);
    return f.esi_lin / (1.0 + std::pow(f.d_ei, alpha));
}

void Scenario::validate() const {
    require_finite(es_lin, "es_lin");
    require_finite(n0, "n0");
    require_finite(alpha, "alpha");
    require_finite(d_b, "d_b");
    require_finite(d_e, "d_e");
    if (!(es_lin > 0.0)) throw std::invalid_argument("es_lin must be positive");
    if (!(n0 > 0.0)) throw std::invalid_argument("n0 must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
    if (!(d_b > 0.0) || !(d_e > 0.0)) throw std::invalid_argument("distances must be positive");
    for (std::size_t i = 0; i < interferers.size(); ++i) {
        const Interferer& f = interferers[i];
        require_finite(f.esi_lin, "esi_lin");
        if (!(f.esi_lin > 0.0))
            throw std::invalid_argument("interferer " + std::to_string(i) + ": esi_lin must be positive");
        if (!(f.d_bi > 0.0) || !(f.d_ei > 0.0) || !std::isfinite(f.d_bi) || !std::isfinite(f.d_ei))
            throw std::invalid_argument("interferer " + std::to_string(i) + ": distances must be positive");
    }
}

Scenario from_db(double es_db, std::span<const double> esi_db, double alpha, double d_b,
                 double d_e, std::span<const std::array<double, 2>> interferer_distances) {
    require_finite(es_db, "es_db");
    for (double v : esi_db) require_finite(v, "esi_db");
    if (esi_db.size() > 1 && esi_db.size() != interferer_distances.size())
        throw std::invalid_argument("esi_db must be scalar or one entry per interferer");
    if (esi_db.empty() && !interferer_distances.empty())
        throw std::invalid_argument("interferers given but no esi_db");

    Scenario s;
    s.n0 = 1.0;
    s.es_lin = db_to_lin(es_db) * s.n0;
    s.alpha = alpha;
    s.d_b = d_b;
    s.d_e = d_e;
    s.interferers.reserve(interferer_distances.size());
    for (std::size_t i = 0; i < interferer_distances.size(); ++i) {
        const double db = esi_db.size() == 1 ? esi_db[0] : esi_db[i];
        s.interferers.push_back({db_to_lin(db) * s.n0, interferer_distances[i][0],
                                 interferer_distances[i][1]});
    }
    s.validate();
    return s;
}

Scenario collinear_scenario(double es_db, double esi_db, double alpha, double d_b, double d_e,
                            std::size_t m, double first_distance, double step) {
    std::vector<std::array<double, 2>> dist;
    dist.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double pos = first_distance - static_cast<double>(k) * step;
        const double d_bk = std::fabs(pos - d_b);
        const double d_ek = std::fabs(pos - d_e);
        if (!(pos > 0.0) || !(d_bk > 0.0) || !(d_ek > 0.0))
            throw std::invalid_argument("collinear_scenario: interferer " + std::to_string(k + 1) +
                                        " yields a nonpositive distance");
        dist.push_back({d_bk, d_ek});
    }
    const double esi[] = {esi_db};
    return from_db(es_db, m == 0 ? std::span<const double>{} : std::span<const double>(esi),
                   alpha, d_b, d_e, dist);
}

Scenario default_scenario(double alpha, double es_db, double esi_db) {
    static constexpr std::array<std::array<double, 2>, 3> kDistances = {{{10.0, 15.0}, {20.0, 10.0}, {25.0, 5.0}}};
    const double esi[] = {esi_db};
    return from_db(es_db, esi, alpha, 2.5, 25.0, kDistances);
}

}  // namespace sopcalc
