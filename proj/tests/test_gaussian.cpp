#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "udmdi/channel.hpp"
#include "udmdi/gaussian.hpp"

using namespace udmdi;
using gaussian::CovMatrix2Mode;

namespace {

// Independent conditioning oracle: generic Moore-Penrose pseudo-inverse
// of the measured block, no reuse of the implementation's shortcut.
Eigen::Matrix2d conditional_oracle(const Eigen::Matrix4d& cov) {
    const Eigen::Matrix2d a = cov.topLeftCorner<2, 2>();
    const Eigen::Matrix2d b = cov.bottomRightCorner<2, 2>();
    const Eigen::Matrix2d sigma = cov.topRightCorner<2, 2>();
    Eigen::Matrix2d x = Eigen::Matrix2d::Zero();
    x(0, 0) = 1.0;
    const Eigen::Matrix2d xbx = x * b * x;
    const Eigen::Matrix2d pinv =
        xbx.completeOrthogonalDecomposition().pseudoInverse();
    return a - sigma * pinv * sigma.transpose();
}

channel::EquivalentChannel make_channel(double t_x, double eps_x, double t_p,
                                        double eps_p) {
    channel::EquivalentChannel ch;
    ch.t_x = t_x;
    ch.eps_prime_x = eps_x;
    ch.t_p = t_p;
    ch.eps_prime_p = eps_p;
    return ch;
}

// Random physical shared states, drawn through the link reduction.
CovMatrix2Mode random_shared(std::mt19937& rng) {
    std::uniform_real_distribution<double> eta_dist(0.3, 1.0);
    std::uniform_real_distribution<double> eps_dist(0.0, 0.05);
    std::uniform_real_distribution<double> vm_dist(5.0, 300.0);
    const double v_m = vm_dist(rng);
    const auto links = channel::LinkParams::symmetric_quadratures(
        eta_dist(rng), eps_dist(rng), eta_dist(rng), eps_dist(rng));
    const auto ch = channel::equivalent_channel(links, v_m);
    return gaussian::shared_covariance(std::sqrt(v_m + 1.0), ch);
}

}  // namespace

TEST_CASE("source covariance matches the closed form") {
    SUBCASE("vacuum at V = 1") {
        const auto cov = gaussian::source_covariance(1.0);
        CHECK(cov.matrix().isApprox(Eigen::Matrix4d::Identity(), 1e-15));
    }
    SUBCASE("x correlation at V = sqrt(101)") {
        const auto cov = gaussian::source_covariance(std::sqrt(101.0));
        CHECK(cov(0, 2) == doctest::Approx(31.701538797227005).epsilon(1e-12));
        CHECK(cov(2, 2) == doctest::Approx(101.0).epsilon(1e-12));
        CHECK(cov(3, 3) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(cov(1, 3) ==
              doctest::Approx(-std::sqrt(100.0 / std::sqrt(101.0))).epsilon(1e-12));
    }
    SUBCASE("rejects nonphysical variance") {
        CHECK_THROWS_AS(gaussian::source_covariance(0.99), std::domain_error);
    }
}

TEST_CASE("source states are pure: unit symplectic spectrum") {
    for (int i = 0; i < 100; ++i) {
        const double v = 1.0 + 49.0 * i / 99.0;
        const auto spec =
            gaussian::symplectic_eigenvalues(gaussian::source_covariance(v));
        CHECK(spec.nu1 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(spec.nu2 == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("shared covariance") {
    const double v = std::sqrt(101.0);
    SUBCASE("fully lossy channel decorrelates") {
        const auto cov =
            gaussian::shared_covariance(v, make_channel(0.0, 0.0, 0.0, 0.0));
        CHECK(cov(0, 0) == doctest::Approx(v));
        CHECK(cov(2, 2) == doctest::Approx(1.0));
        CHECK(cov(3, 3) == doctest::Approx(1.0));
        CHECK(cov(0, 2) == 0.0);
        CHECK(cov(1, 3) == 0.0);
    }
    SUBCASE("lossless identity channel") {
        const auto cov =
            gaussian::shared_covariance(v, make_channel(1.0, 0.0, 1.0, 0.0));
        CHECK(cov(2, 2) == doctest::Approx(101.0).epsilon(1e-12));
    }
    SUBCASE("near-ideal reduced channel") {
        const auto cov = gaussian::shared_covariance(
            v, make_channel(0.9804, 0.004, 0.9804, 0.004));
        CHECK(cov(2, 2) == doctest::Approx(99.0439216).epsilon(1e-12));
    }
    SUBCASE("rejects channel parameters that break the state") {
        // x correlations without any p transmission violate Heisenberg
        CHECK_THROWS_AS(
            gaussian::shared_covariance(v, make_channel(1.0, 0.0, 0.0, 0.0)),
            std::domain_error);
    }
}

TEST_CASE("symplectic eigenvalues") {
    SUBCASE("identity") {
        const auto spec =
            gaussian::symplectic_eigenvalues(CovMatrix2Mode(Eigen::Matrix4d::Identity()));
        CHECK(spec.nu1 == doctest::Approx(1.0));
        CHECK(spec.nu2 == doctest::Approx(1.0));
    }
    SUBCASE("product of thermal states") {
        Eigen::Vector4d diag(2.0, 2.0, 3.0, 3.0);
        const auto spec = gaussian::symplectic_eigenvalues(
            CovMatrix2Mode(diag.asDiagonal().toDenseMatrix()));
        CHECK(spec.nu1 == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(spec.nu2 == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("non-symmetric input is rejected") {
        Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
        m(0, 2) = 0.5;  // no matching (2,0) entry
        CHECK_THROWS_AS(CovMatrix2Mode{m}, std::invalid_argument);
    }
}

TEST_CASE("closed-form spectrum agrees with the symplectic-form route") {
    std::mt19937 rng(20240811);
    for (int i = 0; i < 200; ++i) {
        const auto cov = random_shared(rng);
        const auto a = gaussian::symplectic_eigenvalues(cov);
        const auto b = gaussian::symplectic_eigenvalues_via_form(cov);
        CHECK(a.nu1 == doctest::Approx(b.nu1).epsilon(1e-9));
        CHECK(a.nu2 == doctest::Approx(b.nu2).epsilon(1e-9));
    }
}

TEST_CASE("entropy of a symplectic eigenvalue") {
    CHECK(gaussian::entropy_g(1.0) == 0.0);
    CHECK(gaussian::entropy_g(3.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gaussian::entropy_g(5.0) ==
          doctest::Approx(2.7548875021634685).epsilon(1e-12));
    CHECK(gaussian::entropy_g(1.0 - 5e-10) == 0.0);  // clamp zone
    CHECK_THROWS_AS(gaussian::entropy_g(0.9), std::domain_error);

    // strictly increasing on (1, inf)
    double previous = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double nu = 1.0 + 0.5 * i;
        const double value = gaussian::entropy_g(nu);
        CHECK(value > previous);
        previous = value;
    }
}

TEST_CASE("conditioning on Bob's x homodyne") {
    const double v = std::sqrt(101.0);
    SUBCASE("independent mode leaves Alice unchanged") {
        const auto cov =
            gaussian::shared_covariance(v, make_channel(0.0, 0.0, 0.0, 0.0));
        const Eigen::Matrix2d cond = gaussian::condition_on_homodyne_x(cov);
        CHECK(cond(0, 0) == doctest::Approx(v).epsilon(1e-12));
        CHECK(cond(1, 1) == doctest::Approx(v).epsilon(1e-12));
    }
    SUBCASE("near-ideal channel squeezes the conditional variance") {
        const auto cov = gaussian::shared_covariance(
            v, make_channel(0.9804, 0.004, 0.9804, 0.004));
        const Eigen::Matrix2d cond = gaussian::condition_on_homodyne_x(cov);
        CHECK(cond(0, 0) ==
              doctest::Approx(0.10186679859167327).epsilon(1e-10));
        // independent pseudo-inverse route
        const Eigen::Matrix2d oracle = conditional_oracle(cov.matrix());
        CHECK(cond.isApprox(oracle, 1e-10));
    }
    SUBCASE("matches the generic pseudo-inverse oracle on random states") {
        std::mt19937 rng(7071);
        for (int i = 0; i < 200; ++i) {
            const auto cov = random_shared(rng);
            const Eigen::Matrix2d cond = gaussian::condition_on_homodyne_x(cov);
            const Eigen::Matrix2d oracle = conditional_oracle(cov.matrix());
            CHECK(cond.isApprox(oracle, 1e-9));
            // conditioning never increases the x uncertainty
            CHECK(cond(0, 0) <= cov(0, 0) + 1e-12);
        }
    }
}

TEST_CASE("two-mode purity invariants") {
    // S(pure) = G(1) + G(1) = 0 exactly
    const auto spec = gaussian::symplectic_eigenvalues(
        gaussian::source_covariance(std::sqrt(101.0)));
    CHECK(gaussian::entropy_g(std::max(1.0, spec.nu1)) +
              gaussian::entropy_g(std::max(1.0, spec.nu2)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}
