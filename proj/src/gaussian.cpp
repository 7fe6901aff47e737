#include "udmdi/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "udmdi/errors.hpp"

namespace udmdi::gaussian {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSpectrumTol = 1e-9;

void require_symmetric(const Eigen::Matrix4d& m) {
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const double scale =
                std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))});
            if (std::abs(m(i, j) - m(j, i)) > kSymmetryTol * scale)
                throw std::invalid_argument(
                    "covariance matrix is not symmetric");
        }
    }
}

}  // namespace

CovMatrix2Mode::CovMatrix2Mode(const Eigen::Matrix4d& m) {
    require_symmetric(m);
    m_ = 0.5 * (m + m.transpose());
    for (int i = 0; i < 4; ++i) {
        if (m_(i, i) < 1.0 - kSymmetryTol)
            throw std::domain_error(
                "covariance diagonal below the shot-noise limit");
    }
}

CovMatrix2Mode source_covariance(double v) {
    if (!(v >= 1.0))
        throw std::domain_error("source variance must be >= 1");
    const double corr_x = std::sqrt(v * (v * v - 1.0));
    const double corr_p = -std::sqrt((v * v - 1.0) / v);
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = v;
    m(1, 1) = v;
    m(2, 2) = v * v;
    m(3, 3) = 1.0;
    m(0, 2) = m(2, 0) = corr_x;
    m(1, 3) = m(3, 1) = corr_p;
    return CovMatrix2Mode(m);
}

CovMatrix2Mode shared_covariance(double v, const channel::EquivalentChannel& ch) {
    if (!(v >= 1.0))
        throw std::domain_error("source variance must be >= 1");
    if (!(ch.t_x >= 0.0) || !(ch.t_p >= 0.0) || !std::isfinite(ch.t_x) ||
        !std::isfinite(ch.t_p) || !std::isfinite(ch.eps_prime_x) ||
        !std::isfinite(ch.eps_prime_p))
        throw std::domain_error("equivalent channel must be finite with T >= 0");

    const double corr_x = std::sqrt(ch.t_x) * std::sqrt(v * (v * v - 1.0));
    const double corr_p = -std::sqrt(ch.t_p) * std::sqrt((v * v - 1.0) / v);
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = v;
    m(1, 1) = v;
    m(2, 2) = ch.t_x * (v * v - 1.0 + ch.eps_prime_x) + 1.0;
    m(3, 3) = 1.0 + ch.t_p * ch.eps_prime_p;
    m(0, 2) = m(2, 0) = corr_x;
    m(1, 3) = m(3, 1) = corr_p;
    CovMatrix2Mode cov(m);

    const SymplecticSpectrum spec = symplectic_eigenvalues(cov);
    if (spec.nu2 < 1.0 - kSpectrumTol)
        throw std::domain_error(
            "channel parameters produce an unphysical shared state");
    return cov;
}

SymplecticSpectrum symplectic_eigenvalues(const CovMatrix2Mode& cov) {
    const Eigen::Matrix4d& m = cov.matrix();
    const double det_a = cov.mode_a().determinant();
    const double det_b = cov.mode_b().determinant();
    const double det_c = cov.cross().determinant();
    const double delta = det_a + det_b + 2.0 * det_c;
    const double det_g = m.determinant();

    double disc = delta * delta - 4.0 * det_g;
    if (disc < 0.0) disc = 0.0;  // pure states sit exactly on the boundary
    const double root = std::sqrt(disc);

    auto safe_sqrt = [](double x) { return std::sqrt(std::max(x, 0.0)); };
    SymplecticSpectrum spec;
    spec.nu1 = safe_sqrt(0.5 * (delta + root));
    spec.nu2 = safe_sqrt(0.5 * (delta - root));
    return spec;
}

SymplecticSpectrum symplectic_eigenvalues_via_form(const CovMatrix2Mode& cov) {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;

    const Eigen::Matrix4d product = omega * cov.matrix();
    Eigen::EigenSolver<Eigen::Matrix4d> solver(product, false);
    std::array<double, 4> moduli{};
    for (int i = 0; i < 4; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
    std::sort(moduli.begin(), moduli.end());

    // Moduli come in duplicate pairs (+/- i*nu); average each pair.
    SymplecticSpectrum spec;
    spec.nu2 = 0.5 * (moduli[0] + moduli[1]);
    spec.nu1 = 0.5 * (moduli[2] + moduli[3]);
    return spec;
}

double entropy_g(double nu) {
    if (nu < 1.0 - kSpectrumTol)
        throw std::domain_error("symplectic eigenvalue must be >= 1");
    if (nu <= 1.0) return 0.0;
    const double up = 0.5 * (nu + 1.0);
    const double down = 0.5 * (nu - 1.0);
    return up * std::log2(up) - down * std::log2(down);
}

Eigen::Matrix2d condition_on_homodyne_x(const CovMatrix2Mode& cov) {
    const Eigen::Matrix2d a = cov.mode_a();
    const Eigen::Matrix2d b = cov.mode_b();
    const Eigen::Matrix2d sigma = cov.cross();

    const double b_xx = b(0, 0);
    if (b_xx == 0.0) return a;  // pseudo-inverse of the zero matrix
    Eigen::Matrix2d pinv = Eigen::Matrix2d::Zero();
    pinv(0, 0) = 1.0 / b_xx;
    return a - sigma * pinv * sigma.transpose();
}

double single_mode_symplectic(const Eigen::Matrix2d& cov) {
    const double det = cov.determinant();
    if (det <= 0.0)
        throw NumericalDomainError(
            "conditional covariance has non-positive determinant");
    return std::sqrt(det);
}

}  // namespace udmdi::gaussian
