#pragma once

#include <cstdint>
#include <cstddef>
#include <random>
#include <vector>

// Monte Carlo validation of the parameter-estimation model: samples
// the normal linear channel y = t*x + z, forms the maximum-likelihood
// estimators, and checks their sampling distributions and the
// confidence-interval coverage empirically.

namespace udmdi::mc {

/// Seedable, platform-independent standard-normal generator:
/// mt19937_64 drives uniform doubles built directly from the high 53
/// bits of each output word, converted by the Box-Muller transform.
/// Identical seeds give bit-identical streams on any platform.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed);

    /// One standard-normal draw.
    double next();
    /// One draw with the given standard deviation.
    double next_scaled(double stddev) { return stddev * next(); }

private:
    double uniform01();  // [0,1), 53-bit resolution

    std::mt19937_64 rng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Deterministic per-trial seed stream: a 64-bit mix of the master
/// seed and the trial index, so trials can be distributed across
/// threads without changing results.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

/// One estimation block: sender symbols x and received values y.
struct LinkSample {
    std::vector<double> x;
    std::vector<double> y;
};

/// x_i ~ N(0, V_m), y_i = t_true*x_i + z_i with z_i ~ N(0, sigma2_true).
LinkSample sample_link(std::size_t m, double v_m, double t_true,
                       double sigma2_true, std::uint64_t seed);

struct MlEstimate {
    double t_hat = 0.0;
    double sigma2_hat = 0.0;
};

/// t_hat = sum(x*y)/sum(x^2); sigma2_hat = mean of squared residuals.
MlEstimate ml_estimate(const LinkSample& sample);

struct CoverageResult {
    double t_coverage = 0.0;
    double sigma2_coverage = 0.0;
    std::size_t trials = 0;
};

/// Empirical confidence-interval coverage of the true (t, sigma2)
/// over repeated estimation blocks. Deterministic for a fixed master
/// seed regardless of the thread count.
CoverageResult coverage_test(std::size_t trials, std::size_t m, double v_m,
                             double t_true, double sigma2_true, double eps_pe,
                             std::uint64_t seed, unsigned threads = 1);

struct DistributionStats {
    double t_hat_mean = 0.0;
    double t_hat_var = 0.0;
    /// Mean and variance of m*sigma2_hat/sigma2_true, to be compared
    /// against the chi-square(m-1) law.
    double scaled_sigma2_mean = 0.0;
    double scaled_sigma2_var = 0.0;
    std::size_t trials = 0;
};

/// Sampling-distribution moments of the estimators over repeated
/// blocks; same determinism guarantee as coverage_test.
DistributionStats estimator_distribution(std::size_t trials, std::size_t m,
                                         double v_m, double t_true,
                                         double sigma2_true,
                                         std::uint64_t seed,
                                         unsigned threads = 1);

}  // namespace udmdi::mc
