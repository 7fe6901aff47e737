#pragma once

#include <optional>

#include "udmdi/channel.hpp"

namespace udmdi::keyrate {

enum class Scenario { symmetric, asymmetric };

/// Relay placement for a given total distance: symmetric splits the
/// distance evenly (L_AC = L_BC = L/2, unit relay efficiency),
/// asymmetric puts the relay at Bob's side (L_AC = L, L_BC = 0) with
/// the given relay-side efficiency folded into Bob's link.
channel::Topology topology_for(Scenario scenario, double distance_km,
                               double alpha_db_per_km,
                               double bob_side_efficiency);

/// Full protocol configuration. Link parameters are derived from the
/// topology and per-link excess noise unless an explicit override is
/// set.
struct ProtocolConfig {
    double v_m = 100.0;  // modulation variance, SNU
    double beta = 0.98;  // reconciliation efficiency
    channel::Topology topology;
    double eps_a = 0.002;  // Alice-link excess noise, SNU
    double eps_b = 0.002;  // Bob-link excess noise, SNU
    std::optional<channel::LinkParams> links_override;

    void validate() const;
    /// Source EPR variance V = sqrt(V_m + 1).
    double source_variance() const;
    channel::LinkParams effective_links() const;
};

ProtocolConfig make_config(Scenario scenario, double distance_km,
                           double v_m = 100.0, double beta = 0.98,
                           double eps = 0.002, double alpha_db_per_km = 0.2,
                           double bob_side_efficiency = 0.98);

/// Key rate with every intermediate quantity retained for audit.
/// key_rate is clamped at zero; key_rate_raw keeps the sign.
struct KeyRateResult {
    double key_rate = 0.0;
    double key_rate_raw = 0.0;
    double mutual_info = 0.0;
    double holevo = 0.0;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double lambda3 = 1.0;
    channel::EquivalentChannel equivalent_channel;
};

/// Shannon mutual information of the modulated quadrature, closed
/// form: (1/2) log2( V / (V - T_x V (V^2-1) / (T_x (V^2+eps'-1)+1)) ).
double mutual_information_ud(double v, double t_x, double eps_prime_x);

/// Same quantity through the generic conditional-covariance route
/// (Schur complement with measurement pseudo-inverse). Agrees with
/// the closed form to 1e-10; kept as an independent path.
double mutual_information_ud_conditional(double v, double t_x,
                                         double eps_prime_x);

/// Eavesdropper information bound chi_E = G(l1) + G(l2) - G(l3) for
/// the purification of the shared state, conditioned on Bob's
/// homodyne x-measurement.
double holevo_bound(double v, const channel::EquivalentChannel& ch);

/// Asymptotic unidimensional key rate K = max(0, beta*I - chi_E).
KeyRateResult key_rate_ud(const ProtocolConfig& cfg);

/// Baseline: symmetric Gaussian-modulation protocol over the same
/// equivalent channel (x-quadrature values applied to both
/// quadratures), EPR variance V_m + 1, homodyne detection, reverse
/// reconciliation.
KeyRateResult key_rate_symmetric_gm(const ProtocolConfig& cfg);

/// Repeaterless secret-key capacity bound -log2(1 - T) of a lossy
/// channel with transmittance T. Returns +inf at T = 1.
double plob_bound(double t_total);

struct ModulationOptimum {
    double v_m = 0.0;
    double key_rate = 0.0;
    bool all_zero = false;  // no positive rate anywhere on the range
};

/// Modulation variance maximizing key_rate_ud on [v_min, v_max]:
/// coarse scan plus golden-section refinement, deterministic for a
/// fixed tolerance (1e-3 relative on the rate).
ModulationOptimum optimize_modulation(const ProtocolConfig& cfg, double v_min,
                                      double v_max);

}  // namespace udmdi::keyrate
