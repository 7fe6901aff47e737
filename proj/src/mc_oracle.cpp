#include "udmdi/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "udmdi/finite_size.hpp"

namespace udmdi::mc {

GaussianSampler::GaussianSampler(std::uint64_t seed) : rng_(seed) {}

double GaussianSampler::uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double GaussianSampler::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // Box-Muller: u1 shifted into (0,1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    // splitmix64 finalizer over a combination of seed and index
    auto mix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    return mix(master_seed ^ mix(trial_index + 0x6a09e667f3bcc909ULL));
}

LinkSample sample_link(std::size_t m, double v_m, double t_true,
                       double sigma2_true, std::uint64_t seed) {
    if (m < 2) throw std::domain_error("sample length must be >= 2");
    if (!(v_m > 0.0))
        throw std::domain_error("modulation variance must be > 0");
    if (!(sigma2_true >= 0.0))
        throw std::domain_error("noise variance must be >= 0");

    GaussianSampler gen(seed);
    const double x_dev = std::sqrt(v_m);
    const double z_dev = std::sqrt(sigma2_true);
    LinkSample sample;
    sample.x.resize(m);
    sample.y.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = gen.next_scaled(x_dev);
        const double z = gen.next_scaled(z_dev);
        sample.x[i] = x;
        sample.y[i] = t_true * x + z;
    }
    return sample;
}

MlEstimate ml_estimate(const LinkSample& sample) {
    if (sample.x.size() != sample.y.size() || sample.x.size() < 2)
        throw std::domain_error("sample vectors must have equal length >= 2");
    const std::size_t m = sample.x.size();

    double sum_xy = 0.0;
    double sum_xx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sum_xy += sample.x[i] * sample.y[i];
        sum_xx += sample.x[i] * sample.x[i];
    }
    if (sum_xx == 0.0)
        throw std::domain_error("degenerate sample: all sender symbols zero");

    MlEstimate est;
    est.t_hat = sum_xy / sum_xx;
    double sum_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = sample.y[i] - est.t_hat * sample.x[i];
        sum_res += r * r;
    }
    est.sigma2_hat = sum_res / static_cast<double>(m);
    return est;
}

namespace {

// Runs fn(trial_index) for every trial, split across threads. Results
// must be written into per-trial slots so the outcome is independent
// of scheduling.
template <typename Fn>
void for_each_trial(std::size_t trials, unsigned threads, Fn&& fn) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < trials; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < trials; i += threads) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

CoverageResult coverage_test(std::size_t trials, std::size_t m, double v_m,
                             double t_true, double sigma2_true, double eps_pe,
                             std::uint64_t seed, unsigned threads) {
    if (trials < 100) throw std::domain_error("need at least 100 trials");
    const double z = finite_size::quantile_z(eps_pe);

    std::vector<std::uint8_t> t_hit(trials, 0);
    std::vector<std::uint8_t> s_hit(trials, 0);
    for_each_trial(trials, threads, [&](std::size_t i) {
        const LinkSample sample =
            sample_link(m, v_m, t_true, sigma2_true, trial_seed(seed, i));
        const MlEstimate est = ml_estimate(sample);
        const finite_size::ConfidenceHalfWidths hw =
            finite_size::confidence_half_widths(static_cast<double>(m), v_m,
                                                est.sigma2_hat, z);
        t_hit[i] = std::abs(est.t_hat - t_true) <= hw.delta_t ? 1 : 0;
        s_hit[i] =
            std::abs(est.sigma2_hat - sigma2_true) <= hw.delta_sigma2 ? 1 : 0;
    });

    std::size_t t_count = 0;
    std::size_t s_count = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        t_count += t_hit[i];
        s_count += s_hit[i];
    }
    CoverageResult result;
    result.trials = trials;
    result.t_coverage = static_cast<double>(t_count) / static_cast<double>(trials);
    result.sigma2_coverage =
        static_cast<double>(s_count) / static_cast<double>(trials);
    return result;
}

DistributionStats estimator_distribution(std::size_t trials, std::size_t m,
                                         double v_m, double t_true,
                                         double sigma2_true, std::uint64_t seed,
                                         unsigned threads) {
    if (trials < 100) throw std::domain_error("need at least 100 trials");
    if (!(sigma2_true > 0.0))
        throw std::domain_error("noise variance must be > 0");

    std::vector<double> t_hats(trials, 0.0);
    std::vector<double> scaled(trials, 0.0);
    for_each_trial(trials, threads, [&](std::size_t i) {
        const LinkSample sample =
            sample_link(m, v_m, t_true, sigma2_true, trial_seed(seed, i));
        const MlEstimate est = ml_estimate(sample);
        t_hats[i] = est.t_hat;
        scaled[i] = static_cast<double>(m) * est.sigma2_hat / sigma2_true;
    });

    auto mean_of = [trials](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(trials);
    };
    auto var_of = [trials](const std::vector<double>& v, double mean) {
        double s = 0.0;
        for (double x : v) s += (x - mean) * (x - mean);
        return s / static_cast<double>(trials - 1);
    };

    DistributionStats stats;
    stats.trials = trials;
    stats.t_hat_mean = mean_of(t_hats);
    stats.t_hat_var = var_of(t_hats, stats.t_hat_mean);
    stats.scaled_sigma2_mean = mean_of(scaled);
    stats.scaled_sigma2_var = var_of(scaled, stats.scaled_sigma2_mean);
    return stats;
}

}  // namespace udmdi::mc
