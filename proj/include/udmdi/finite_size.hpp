#pragma once

#include "udmdi/channel.hpp"
#include "udmdi/keyrate.hpp"

namespace udmdi::finite_size {

/// Block accounting and failure probabilities of the finite-size
/// analysis. n_key signals generate key, the remaining
/// m = n_total - n_key estimate the channel.
struct FiniteSizeConfig {
    double n_total = 1e9;
    double n_key = 5e8;  // default split: half of the block
    double eps_pe = 1e-10;
    double eps_pa = 1e-10;
    double eps_smooth = 1e-10;

    double m_pe() const { return n_total - n_key; }
    void validate() const;

    static FiniteSizeConfig half_split(double n_total);
};

/// Maximum-likelihood point estimate of one link plus the confidence
/// half-widths attached to it.
struct LinkEstimate {
    double t_hat = 1.0;        // amplitude transmission, sqrt(eta) scale
    double sigma2_hat = 1.0;   // noise variance, SNU
    double delta_t = 0.0;      // confidence half-width on t_hat
    double delta_sigma2 = 0.0; // confidence half-width on sigma2_hat
};

struct EstimatedChannel {
    LinkEstimate link_a;
    LinkEstimate link_b;
};

/// Privacy-amplification correction
/// 7*sqrt(log2(2/eps_smooth)/n) + (2/n)*log2(1/eps_pa), in bits.
double delta_n(double n, double eps_smooth, double eps_pa);

/// Two-sided Gaussian confidence quantile z_{eps/2}, computed from the
/// inverse complementary error function: erfc(z/sqrt(2)) = eps.
double quantile_z(double eps_pe);

struct ConfidenceHalfWidths {
    double delta_t = 0.0;
    double delta_sigma2 = 0.0;
};

/// Half-widths for an explicit quantile:
/// delta_t = z*sqrt(sigma2_hat/(m*V_m)), delta_sigma2 = z*sigma2_hat*sqrt(2/m).
ConfidenceHalfWidths confidence_half_widths(double m, double v_m,
                                            double sigma2_hat, double z);

/// Half-widths at the z-quantile implied by eps_pe.
ConfidenceHalfWidths confidence_bounds(double m, double v_m, double sigma2_hat,
                                       double eps_pe);

/// Worst-case link parameters: eta = (t_hat - delta_t)^2,
/// sigma2 = sigma2_hat + delta_sigma2, eps = (sigma2 - 1)/eta, per
/// link; p-quadrature entries mirrored from x. Throws
/// EstimationFailureError if t_hat - delta_t <= 0.
channel::LinkParams worst_case_channel(const EstimatedChannel& est);

/// Simulation-mode estimates: point values set to the model truth
/// (t = sqrt(eta), sigma2 = 1 + eta*eps) with confidence half-widths
/// from the estimation budget.
EstimatedChannel model_estimates(const keyrate::ProtocolConfig& cfg,
                                 const FiniteSizeConfig& fcfg);

/// Finite-size key rate
/// K_f = (n/N) * max(0, beta*I - chi_E - delta_n), with I and chi_E
/// evaluated at the worst-case channel propagated through the one-way
/// reduction (gain chosen from the worst-case Bob transmittance).
keyrate::KeyRateResult finite_size_key_rate(const keyrate::ProtocolConfig& cfg,
                                            const FiniteSizeConfig& fcfg,
                                            const EstimatedChannel& est);

/// Same, with model-derived estimates (simulation mode).
keyrate::KeyRateResult finite_size_key_rate(const keyrate::ProtocolConfig& cfg,
                                            const FiniteSizeConfig& fcfg);

}  // namespace udmdi::finite_size
