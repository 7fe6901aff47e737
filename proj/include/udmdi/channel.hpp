#pragma once

#include <string>

namespace udmdi::channel {

/// Per-link, per-quadrature channel parameters of the two physical MDI
/// links. Transmittances are in (0,1], excess noises in shot-noise
/// units (>= 0). The p-quadrature entries are independently settable
/// but default to their x-quadrature values.
struct LinkParams {
    double eta_a_x = 1.0;
    double eta_b_x = 1.0;
    double eta_a_p = 1.0;
    double eta_b_p = 1.0;
    double eps_a_x = 0.0;
    double eps_b_x = 0.0;
    double eps_a_p = 0.0;
    double eps_b_p = 0.0;

    /// Links with p-quadrature parameters mirrored from x.
    static LinkParams symmetric_quadratures(double eta_a, double eps_a,
                                            double eta_b, double eps_b);

    void validate() const;  // throws std::domain_error on violation
};

/// Reduced one-way channel: equivalent transmittance and excess noise
/// per quadrature, plus the displacement gain squared that produced
/// them.
struct EquivalentChannel {
    double t_x = 0.0;
    double t_p = 0.0;
    double eps_prime_x = 0.0;
    double eps_prime_p = 0.0;
    double gain_sq = 1.0;
};

/// Relay placement and fiber model. bob_side_efficiency is applied
/// multiplicatively to Bob's link transmittance (both quadratures).
struct Topology {
    double l_ac_km = 0.0;
    double l_bc_km = 0.0;
    double alpha_db_per_km = 0.2;
    double bob_side_efficiency = 1.0;

    void validate() const;
};

/// 10^(-alpha*L/10). Throws std::domain_error for L < 0 or alpha <= 0.
double fiber_transmittance(double length_km, double alpha_db_per_km);

/// Displacement gain squared that minimizes the equivalent excess
/// noise: 2*V_m / (eta_b_x * (V_m + 2)).
double optimal_gain_sq(double v_m, double eta_b_x);

/// One-way reduction with an explicit displacement gain squared.
EquivalentChannel equivalent_channel(const LinkParams& links, double v_m,
                                     double gain_sq);

/// One-way reduction at the noise-minimizing gain.
EquivalentChannel equivalent_channel(const LinkParams& links, double v_m);

/// Which form of the unmodulated-quadrature constraint to evaluate.
/// `corrected` regularizes the correction term to 1/(1 + eta_x*eps_x);
/// `literal` keeps the 1/(eta_x*eps_x) form, which is singular at
/// eps_x = 0 and rejects symmetric operating points.
enum class PhysicalityForm { corrected, literal };

/// True iff (eta_p, eps_p) is admissible for the unmodulated quadrature
/// given the modulated-quadrature channel (eta_x, eps_x).
bool physicality_check(double eta_x, double eps_x, double eta_p, double eps_p,
                       PhysicalityForm form = PhysicalityForm::corrected);

/// Link transmittances implied by a topology: eta_a = fiber(L_AC),
/// eta_b = bob_side_efficiency * fiber(L_BC). Excess noise is
/// channel-input-referred and distance-independent.
LinkParams links_from_topology(const Topology& topo, double eps_a, double eps_b);

}  // namespace udmdi::channel
