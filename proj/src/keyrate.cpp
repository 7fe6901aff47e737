#include "udmdi/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "udmdi/errors.hpp"
#include "udmdi/gaussian.hpp"

namespace udmdi::keyrate {

channel::Topology topology_for(Scenario scenario, double distance_km,
                               double alpha_db_per_km,
                               double bob_side_efficiency) {
    if (distance_km < 0.0)
        throw std::domain_error("distance must be >= 0");
    channel::Topology topo;
    topo.alpha_db_per_km = alpha_db_per_km;
    if (scenario == Scenario::symmetric) {
        topo.l_ac_km = 0.5 * distance_km;
        topo.l_bc_km = 0.5 * distance_km;
        topo.bob_side_efficiency = 1.0;
    } else {
        topo.l_ac_km = distance_km;
        topo.l_bc_km = 0.0;
        topo.bob_side_efficiency = bob_side_efficiency;
    }
    return topo;
}

void ProtocolConfig::validate() const {
    if (!(v_m > 0.0))
        throw std::domain_error("modulation variance must be > 0");
    if (!(beta > 0.0) || beta > 1.0)
        throw std::domain_error("reconciliation efficiency must lie in (0,1]");
    topology.validate();
    if (!(eps_a >= 0.0) || !(eps_b >= 0.0))
        throw std::domain_error("excess noise must be >= 0");
    if (links_override) links_override->validate();
}

double ProtocolConfig::source_variance() const { return std::sqrt(v_m + 1.0); }

channel::LinkParams ProtocolConfig::effective_links() const {
    if (links_override) return *links_override;
    return channel::links_from_topology(topology, eps_a, eps_b);
}

ProtocolConfig make_config(Scenario scenario, double distance_km, double v_m,
                           double beta, double eps, double alpha_db_per_km,
                           double bob_side_efficiency) {
    ProtocolConfig cfg;
    cfg.v_m = v_m;
    cfg.beta = beta;
    cfg.eps_a = eps;
    cfg.eps_b = eps;
    cfg.topology =
        topology_for(scenario, distance_km, alpha_db_per_km, bob_side_efficiency);
    return cfg;
}

double mutual_information_ud(double v, double t_x, double eps_prime_x) {
    if (!(v > 1.0))
        throw std::domain_error("source variance must be > 1");
    // The gained reduction can push T_x slightly above 1 when Alice's
    // link outperforms Bob's, so only positivity is required here.
    if (!(t_x > 0.0) || !std::isfinite(t_x))
        throw std::domain_error("equivalent transmittance must be positive");
    if (!(eps_prime_x >= 0.0))
        throw std::domain_error("equivalent excess noise must be >= 0");

    const double denom = t_x * (v * v + eps_prime_x - 1.0) + 1.0;
    const double v_cond = v - t_x * v * (v * v - 1.0) / denom;
    const double ratio = v / v_cond;
    if (!(ratio > 0.0))
        throw NumericalDomainError(
            "mutual-information log argument is non-positive");
    return 0.5 * std::log2(ratio);
}

double mutual_information_ud_conditional(double v, double t_x,
                                         double eps_prime_x) {
    channel::EquivalentChannel ch;
    ch.t_x = ch.t_p = t_x;
    // Mirrored p-quadrature entries keep the state physical; they do
    // not enter the x conditioning.
    ch.eps_prime_x = ch.eps_prime_p = eps_prime_x;
    const gaussian::CovMatrix2Mode cov = gaussian::shared_covariance(v, ch);
    const Eigen::Matrix2d cond = gaussian::condition_on_homodyne_x(cov);
    const double ratio = v / cond(0, 0);
    if (!(ratio > 0.0))
        throw NumericalDomainError(
            "mutual-information log argument is non-positive");
    return 0.5 * std::log2(ratio);
}

namespace {

struct HolevoParts {
    double chi = 0.0;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double lambda3 = 1.0;
};

HolevoParts holevo_parts(double v, const channel::EquivalentChannel& ch) {
    const gaussian::CovMatrix2Mode cov = gaussian::shared_covariance(v, ch);
    const gaussian::SymplecticSpectrum spec = gaussian::symplectic_eigenvalues(cov);
    const Eigen::Matrix2d cond = gaussian::condition_on_homodyne_x(cov);

    HolevoParts parts;
    parts.lambda1 = spec.nu1;
    parts.lambda2 = spec.nu2;
    parts.lambda3 = gaussian::single_mode_symplectic(cond);
    parts.chi = gaussian::entropy_g(parts.lambda1) +
                gaussian::entropy_g(parts.lambda2) -
                gaussian::entropy_g(parts.lambda3);
    return parts;
}

void check_link_physicality(const channel::LinkParams& links) {
    const bool alice_ok = channel::physicality_check(
        links.eta_a_x, links.eps_a_x, links.eta_a_p, links.eps_a_p);
    const bool bob_ok = channel::physicality_check(
        links.eta_b_x, links.eps_b_x, links.eta_b_p, links.eps_b_p);
    if (!alice_ok || !bob_ok)
        throw PhysicalityError(
            "unmodulated-quadrature parameters are not physical");
}

}  // namespace

double holevo_bound(double v, const channel::EquivalentChannel& ch) {
    return holevo_parts(v, ch).chi;
}

KeyRateResult key_rate_ud(const ProtocolConfig& cfg) {
    cfg.validate();
    const channel::LinkParams links = cfg.effective_links();
    check_link_physicality(links);

    const channel::EquivalentChannel ch = channel::equivalent_channel(links, cfg.v_m);
    const double v = cfg.source_variance();
    const double info = mutual_information_ud(v, ch.t_x, ch.eps_prime_x);
    const HolevoParts parts = holevo_parts(v, ch);

    KeyRateResult result;
    result.mutual_info = info;
    result.holevo = parts.chi;
    result.lambda1 = parts.lambda1;
    result.lambda2 = parts.lambda2;
    result.lambda3 = parts.lambda3;
    result.equivalent_channel = ch;
    result.key_rate_raw = cfg.beta * info - parts.chi;
    result.key_rate = std::max(0.0, result.key_rate_raw);
    return result;
}

KeyRateResult key_rate_symmetric_gm(const ProtocolConfig& cfg) {
    cfg.validate();
    const channel::LinkParams links = cfg.effective_links();
    check_link_physicality(links);

    const channel::EquivalentChannel reduced =
        channel::equivalent_channel(links, cfg.v_m);
    const double t = reduced.t_x;
    const double eps = reduced.eps_prime_x;
    const double v = cfg.v_m + 1.0;  // symmetric-modulation EPR variance

    const double chi_line = (1.0 - t) / t + eps;
    const double info = 0.5 * std::log2((v + chi_line) / (chi_line + 1.0 / v));

    const double b_diag = t * (v - 1.0) + 1.0 + t * eps;
    const double corr = std::sqrt(t * (v * v - 1.0));
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = m(1, 1) = v;
    m(2, 2) = m(3, 3) = b_diag;
    m(0, 2) = m(2, 0) = corr;
    m(1, 3) = m(3, 1) = -corr;
    const gaussian::CovMatrix2Mode cov(m);

    const gaussian::SymplecticSpectrum spec = gaussian::symplectic_eigenvalues(cov);
    const Eigen::Matrix2d cond = gaussian::condition_on_homodyne_x(cov);
    const double lambda3 = gaussian::single_mode_symplectic(cond);
    const double chi = gaussian::entropy_g(spec.nu1) +
                       gaussian::entropy_g(spec.nu2) -
                       gaussian::entropy_g(lambda3);

    KeyRateResult result;
    result.mutual_info = info;
    result.holevo = chi;
    result.lambda1 = spec.nu1;
    result.lambda2 = spec.nu2;
    result.lambda3 = lambda3;
    channel::EquivalentChannel applied = reduced;
    applied.t_p = t;
    applied.eps_prime_p = eps;
    result.equivalent_channel = applied;
    result.key_rate_raw = cfg.beta * info - chi;
    result.key_rate = std::max(0.0, result.key_rate_raw);
    return result;
}

double plob_bound(double t_total) {
    if (!(t_total >= 0.0) || t_total > 1.0)
        throw std::domain_error("transmittance must lie in [0,1]");
    if (t_total == 1.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-t_total) / std::log(2.0);
}

ModulationOptimum optimize_modulation(const ProtocolConfig& cfg, double v_min,
                                      double v_max) {
    if (!(v_min > 0.0) || !(v_max > v_min))
        throw std::domain_error("invalid modulation-variance range");

    auto rate_at = [&cfg](double v_m) {
        ProtocolConfig probe = cfg;
        probe.v_m = v_m;
        return key_rate_ud(probe).key_rate;
    };

    // Coarse log-spaced scan to bracket the maximum, then golden-section.
    constexpr int kScanPoints = 48;
    const double log_lo = std::log(v_min);
    const double log_hi = std::log(v_max);
    double best_v = v_min;
    double best_k = -1.0;
    for (int i = 0; i < kScanPoints; ++i) {
        const double v =
            std::exp(log_lo + (log_hi - log_lo) * i / (kScanPoints - 1));
        const double k = rate_at(v);
        if (k > best_k) {
            best_k = k;
            best_v = v;
        }
    }
    if (best_k <= 0.0) return {v_max, 0.0, true};

    const double step = (log_hi - log_lo) / (kScanPoints - 1);
    double lo = std::max(v_min, std::exp(std::log(best_v) - step));
    double hi = std::min(v_max, std::exp(std::log(best_v) + step));

    constexpr double kGolden = 0.6180339887498949;
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = rate_at(x1);
    double f2 = rate_at(x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-6 * hi; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = rate_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = rate_at(x1);
        }
        if (std::abs(f1 - f2) <= 1e-3 * std::max(f1, f2) &&
            (hi - lo) <= 1e-3 * hi)
            break;
    }
    const double v_star = 0.5 * (lo + hi);
    return {v_star, rate_at(v_star), false};
}

}  // namespace udmdi::keyrate
