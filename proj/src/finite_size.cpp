#include "udmdi/finite_size.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

#include "udmdi/errors.hpp"

namespace udmdi::finite_size {

void FiniteSizeConfig::validate() const {
    if (!(n_total >= 2.0))
        throw std::domain_error("block length must be >= 2");
    if (!(n_key >= 1.0) || !(n_key < n_total))
        throw std::domain_error("key-signal count must lie in [1, N)");
    auto check_eps = [](double eps, const char* name) {
        if (!(eps > 0.0) || !(eps < 1.0))
            throw std::domain_error(std::string(name) + " must lie in (0,1)");
    };
    check_eps(eps_pe, "eps_pe");
    check_eps(eps_pa, "eps_pa");
    check_eps(eps_smooth, "eps_smooth");
}

FiniteSizeConfig FiniteSizeConfig::half_split(double n_total) {
    FiniteSizeConfig cfg;
    cfg.n_total = n_total;
    cfg.n_key = 0.5 * n_total;
    return cfg;
}

double delta_n(double n, double eps_smooth, double eps_pa) {
    if (!(n >= 1.0))
        throw std::domain_error("key-signal count must be >= 1");
    if (!(eps_smooth > 0.0) || !(eps_smooth < 1.0) || !(eps_pa > 0.0) ||
        !(eps_pa < 1.0))
        throw std::domain_error("failure probabilities must lie in (0,1)");
    return 7.0 * std::sqrt(std::log2(2.0 / eps_smooth) / n) +
           (2.0 / n) * std::log2(1.0 / eps_pa);
}

double quantile_z(double eps_pe) {
    if (!(eps_pe > 0.0) || eps_pe > 1.0)
        throw std::domain_error("eps_pe must lie in (0,1]");
    if (eps_pe == 1.0) return 0.0;
    return std::sqrt(2.0) * boost::math::erfc_inv(eps_pe);
}

ConfidenceHalfWidths confidence_half_widths(double m, double v_m,
                                            double sigma2_hat, double z) {
    if (!(m >= 2.0))
        throw std::domain_error("estimation count must be >= 2");
    if (!(v_m > 0.0))
        throw std::domain_error("modulation variance must be > 0");
    if (!(sigma2_hat > 0.0))
        throw std::domain_error("noise-variance estimate must be > 0");
    if (!(z >= 0.0))
        throw std::domain_error("quantile must be >= 0");
    ConfidenceHalfWidths hw;
    hw.delta_t = z * std::sqrt(sigma2_hat / (m * v_m));
    hw.delta_sigma2 = z * sigma2_hat * std::sqrt(2.0 / m);
    return hw;
}

ConfidenceHalfWidths confidence_bounds(double m, double v_m, double sigma2_hat,
                                       double eps_pe) {
    return confidence_half_widths(m, v_m, sigma2_hat, quantile_z(eps_pe));
}

namespace {

void worst_case_link(const LinkEstimate& est, double& eta_out, double& eps_out) {
    const double t_low = est.t_hat - est.delta_t;
    if (!(t_low > 0.0))
        throw EstimationFailureError(
            "worst-case amplitude transmission is not positive");
    const double eta = t_low * t_low;
    const double sigma2 = est.sigma2_hat + est.delta_sigma2;
    eta_out = eta;
    eps_out = (sigma2 - 1.0) / eta;
    if (eps_out < 0.0) eps_out = 0.0;  // sub-shot-noise estimate: no excess noise
}

}  // namespace

channel::LinkParams worst_case_channel(const EstimatedChannel& est) {
    double eta_a = 0.0, eps_a = 0.0, eta_b = 0.0, eps_b = 0.0;
    worst_case_link(est.link_a, eta_a, eps_a);
    worst_case_link(est.link_b, eta_b, eps_b);
    return channel::LinkParams::symmetric_quadratures(eta_a, eps_a, eta_b, eps_b);
}

EstimatedChannel model_estimates(const keyrate::ProtocolConfig& cfg,
                                 const FiniteSizeConfig& fcfg) {
    cfg.validate();
    fcfg.validate();
    const channel::LinkParams links = cfg.effective_links();
    const double m = fcfg.m_pe();
    const double z = quantile_z(fcfg.eps_pe);

    auto estimate = [&](double eta, double eps) {
        LinkEstimate est;
        est.t_hat = std::sqrt(eta);
        est.sigma2_hat = 1.0 + eta * eps;
        const ConfidenceHalfWidths hw =
            confidence_half_widths(m, cfg.v_m, est.sigma2_hat, z);
        est.delta_t = hw.delta_t;
        est.delta_sigma2 = hw.delta_sigma2;
        return est;
    };

    EstimatedChannel est;
    est.link_a = estimate(links.eta_a_x, links.eps_a_x);
    est.link_b = estimate(links.eta_b_x, links.eps_b_x);
    return est;
}

keyrate::KeyRateResult finite_size_key_rate(const keyrate::ProtocolConfig& cfg,
                                            const FiniteSizeConfig& fcfg,
                                            const EstimatedChannel& est) {
    cfg.validate();
    fcfg.validate();

    keyrate::ProtocolConfig probe = cfg;
    probe.links_override = worst_case_channel(est);
    keyrate::KeyRateResult result = keyrate::key_rate_ud(probe);

    const double correction = delta_n(fcfg.n_key, fcfg.eps_smooth, fcfg.eps_pa);
    const double ratio = fcfg.n_key / fcfg.n_total;
    const double bracket =
        cfg.beta * result.mutual_info - result.holevo - correction;
    result.key_rate_raw = ratio * bracket;
    result.key_rate = ratio * std::max(0.0, bracket);
    return result;
}

keyrate::KeyRateResult finite_size_key_rate(const keyrate::ProtocolConfig& cfg,
                                            const FiniteSizeConfig& fcfg) {
    return finite_size_key_rate(cfg, fcfg, model_estimates(cfg, fcfg));
}

}  // namespace udmdi::finite_size
