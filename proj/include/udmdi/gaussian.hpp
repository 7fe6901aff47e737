#pragma once

#include <Eigen/Dense>

#include "udmdi/channel.hpp"

// Two-mode Gaussian covariance algebra in shot-noise units (vacuum
// quadrature variance = 1). Mode ordering is fixed as
// (x_A, p_A, x_B, p_B) throughout.

namespace udmdi::gaussian {

/// Real symmetric 4x4 covariance matrix of a two-mode Gaussian state.
/// Construction validates symmetry (1e-12 relative) and
/// Heisenberg-admissible marginals (diagonal >= 1).
class CovMatrix2Mode {
public:
    explicit CovMatrix2Mode(const Eigen::Matrix4d& m);

    const Eigen::Matrix4d& matrix() const { return m_; }
    double operator()(int row, int col) const { return m_(row, col); }

    Eigen::Matrix2d mode_a() const { return m_.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d mode_b() const { return m_.bottomRightCorner<2, 2>(); }
    /// Upper-right correlation block sigma_{AB}.
    Eigen::Matrix2d cross() const { return m_.topRightCorner<2, 2>(); }

private:
    Eigen::Matrix4d m_;
};

/// Symplectic spectrum of a two-mode state, descending (nu1 >= nu2).
struct SymplecticSpectrum {
    double nu1 = 1.0;
    double nu2 = 1.0;
};

/// Covariance matrix of the source: one EPR mode of variance V kept,
/// the other squeezed into the unidimensionally modulated mode.
/// Pure for every V >= 1, so its symplectic spectrum is (1,1).
CovMatrix2Mode source_covariance(double v);

/// State shared after the reduced one-way channel acted on the
/// modulated mode, assuming perfect homodyne detection.
CovMatrix2Mode shared_covariance(double v, const channel::EquivalentChannel& ch);

/// Symplectic spectrum via the two-mode invariant closed form
/// nu^2 = (Delta +/- sqrt(Delta^2 - 4 det(gamma)))/2 with
/// Delta = det A + det B + 2 det C.
SymplecticSpectrum symplectic_eigenvalues(const CovMatrix2Mode& cov);

/// Same spectrum through the moduli of the eigenvalues of
/// i*Omega*gamma. Cross-check route for the closed form.
SymplecticSpectrum symplectic_eigenvalues_via_form(const CovMatrix2Mode& cov);

/// Von Neumann entropy contribution of one symplectic eigenvalue,
/// in bits. Values in [1 - 1e-9, 1) are clamped to 1 before
/// evaluation; nu < 1 - 1e-9 is a domain error.
double entropy_g(double nu);

/// Covariance of mode A conditioned on a homodyne x-measurement of
/// mode B: gamma_A - sigma (X gamma_B X)^+ sigma^T with X = diag(1,0),
/// the pseudo-inverse taken as diag(1/v, 0) for v > 0 and zero for
/// v = 0.
Eigen::Matrix2d condition_on_homodyne_x(const CovMatrix2Mode& cov);

/// Symplectic eigenvalue of a single-mode covariance: sqrt(det).
double single_mode_symplectic(const Eigen::Matrix2d& cov);

}  // namespace udmdi::gaussian
