#include "udmdi/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace udmdi::channel {

LinkParams LinkParams::symmetric_quadratures(double eta_a, double eps_a,
                                             double eta_b, double eps_b) {
    LinkParams lp;
    lp.eta_a_x = lp.eta_a_p = eta_a;
    lp.eta_b_x = lp.eta_b_p = eta_b;
    lp.eps_a_x = lp.eps_a_p = eps_a;
    lp.eps_b_x = lp.eps_b_p = eps_b;
    return lp;
}

void LinkParams::validate() const {
    auto check_eta = [](double eta, const char* name) {
        if (!(eta > 0.0) || eta > 1.0)
            throw std::domain_error(std::string(name) + " must lie in (0,1]");
    };
    auto check_eps = [](double eps, const char* name) {
        if (!(eps >= 0.0))
            throw std::domain_error(std::string(name) + " must be >= 0");
    };
    check_eta(eta_a_x, "eta_a_x");
    check_eta(eta_b_x, "eta_b_x");
    check_eta(eta_a_p, "eta_a_p");
    check_eta(eta_b_p, "eta_b_p");
    check_eps(eps_a_x, "eps_a_x");
    check_eps(eps_b_x, "eps_b_x");
    check_eps(eps_a_p, "eps_a_p");
    check_eps(eps_b_p, "eps_b_p");
}

void Topology::validate() const {
    if (l_ac_km < 0.0 || l_bc_km < 0.0)
        throw std::domain_error("fiber length must be >= 0");
    if (!(alpha_db_per_km > 0.0))
        throw std::domain_error("attenuation must be > 0 dB/km");
    if (!(bob_side_efficiency > 0.0) || bob_side_efficiency > 1.0)
        throw std::domain_error("bob_side_efficiency must lie in (0,1]");
}

double fiber_transmittance(double length_km, double alpha_db_per_km) {
    if (length_km < 0.0)
        throw std::domain_error("fiber length must be >= 0");
    if (!(alpha_db_per_km > 0.0))
        throw std::domain_error("attenuation must be > 0 dB/km");
    return std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
}

double optimal_gain_sq(double v_m, double eta_b_x) {
    if (!(v_m > 0.0))
        throw std::domain_error("modulation variance must be > 0");
    if (!(eta_b_x > 0.0))
        throw std::domain_error("eta_b_x must be > 0");
    return 2.0 * v_m / (eta_b_x * (v_m + 2.0));
}

namespace {

double chi_line(double eta, double eps) { return (1.0 - eta) / eta + eps; }

// Equivalent excess noise of one quadrature for an arbitrary gain. The
// last term vanishes at the noise-minimizing gain with matched eta_b.
double eps_prime(double eta_a, double eps_a, double eta_b, double eps_b,
                 double v_m, double gain_sq) {
    const double g = std::sqrt(gain_sq);
    const double mismatch =
        std::sqrt(2.0 * v_m) / g - std::sqrt(eta_b * (v_m + 2.0));
    return 1.0 + (eta_b / eta_a) * (chi_line(eta_b, eps_b) - 1.0) +
           chi_line(eta_a, eps_a) + mismatch * mismatch / eta_a;
}

}  // namespace

EquivalentChannel equivalent_channel(const LinkParams& links, double v_m,
                                     double gain_sq) {
    links.validate();
    if (!(v_m > 0.0))
        throw std::domain_error("modulation variance must be > 0");
    if (!(gain_sq > 0.0))
        throw std::domain_error("gain squared must be > 0");
    EquivalentChannel ch;
    ch.gain_sq = gain_sq;
    ch.t_x = 0.5 * links.eta_a_x * gain_sq;
    ch.t_p = 0.5 * links.eta_a_p * gain_sq;
    ch.eps_prime_x = eps_prime(links.eta_a_x, links.eps_a_x, links.eta_b_x,
                               links.eps_b_x, v_m, gain_sq);
    ch.eps_prime_p = eps_prime(links.eta_a_p, links.eps_a_p, links.eta_b_p,
                               links.eps_b_p, v_m, gain_sq);
    return ch;
}

EquivalentChannel equivalent_channel(const LinkParams& links, double v_m) {
    return equivalent_channel(links, v_m, optimal_gain_sq(v_m, links.eta_b_x));
}

bool physicality_check(double eta_x, double eps_x, double eta_p, double eps_p,
                       PhysicalityForm form) {
    if (!(eta_x > 0.0) || eta_x > 1.0 || !(eta_p > 0.0) || eta_p > 1.0)
        throw std::domain_error("transmittances must lie in (0,1]");
    if (!(eps_x >= 0.0) || !(eps_p >= 0.0))
        throw std::domain_error("excess noise must be >= 0");

    double correction;
    if (form == PhysicalityForm::literal) {
        if (eps_x == 0.0)
            throw std::domain_error(
                "literal physicality form is singular at eps_x = 0");
        correction = 1.0 / (eta_x * eps_x);
    } else {
        correction = 1.0 / (1.0 + eta_x * eps_x);
    }

    const double root = std::sqrt(eta_x) / (1.0 + eta_x * eps_x);
    const double lhs = (root - std::sqrt(eta_p)) * (root - std::sqrt(eta_p));
    const double rhs = (1.0 - eta_x / (1.0 + eta_x * eps_x)) *
                       (1.0 + eta_p * eps_p - correction);
    return lhs <= rhs;
}

LinkParams links_from_topology(const Topology& topo, double eps_a, double eps_b) {
    topo.validate();
    const double eta_a = fiber_transmittance(topo.l_ac_km, topo.alpha_db_per_km);
    const double eta_b = topo.bob_side_efficiency *
                         fiber_transmittance(topo.l_bc_km, topo.alpha_db_per_km);
    return LinkParams::symmetric_quadratures(eta_a, eps_a, eta_b, eps_b);
}

}  // namespace udmdi::channel
