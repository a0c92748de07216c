#pragma once

#include <complex>

#include <Eigen/Dense>

#include "paramlc/errors.hpp"

namespace paramlc {

/// Physical parameters of the N-mode parametrically driven Kerr model.
///
/// The Hamiltonian is u (sum_i n_i)^2 - D sum_i (a_i^+ a_i^+ + h.c.)
/// - i h sum_ij K_ij a_i^+ a_j, with independent single-photon loss at
/// rate kappa on every mode. `coupling` holds the dimensionless
/// antisymmetric pattern K.
///
/// Sign convention: the semiclassical right-hand side uses +h K a (K takes
/// the place of the rotation generator J of the two-mode model), so
/// two_mode() fills in K = [[0,-1],[1,0]] to make the N=2 limit-cycle phase
/// advance at +h.
struct ModelParams {
    int n_modes = 2;
    double u = 1.0;      // Kerr strength
    double drive = 1.0;  // parametric drive amplitude D
    double kappa = 1.0;  // single-photon loss rate
    double h = 0.0;      // antisymmetric coupling strength
    Eigen::MatrixXd coupling;  // n_modes x n_modes antisymmetric pattern

    ModelParams() : coupling(Eigen::MatrixXd::Zero(2, 2)) {}

    /// Two-mode setup with the canonical rotation pattern.
    static ModelParams two_mode(double u, double drive, double kappa, double h = 0.0);

    /// Throws if invariants are violated (u, kappa > 0; D >= 0; K antisymmetric).
    void validate() const;

    [[nodiscard]] double threshold() const { return kappa / 4.0; }
    [[nodiscard]] bool above_threshold() const { return drive > threshold(); }

    /// delta = 1 - i kappa / (4u)
    [[nodiscard]] std::complex<double> delta() const {
        return {1.0, -kappa / (4.0 * u)};
    }

    /// lambda = (D/u)^2
    [[nodiscard]] double lambda() const {
        const double r = drive / u;
        return r * r;
    }

    /// Semiclassical attractor photon number (D/u) sqrt(1 - kappa^2/16D^2),
    /// zero at or below threshold.
    [[nodiscard]] double n_ss() const;

    /// Quadrature frame angle theta = arcsin(kappa/4D)/2 for D > kappa/4,
    /// zero otherwise (no canceling frame exists below threshold).
    [[nodiscard]] double frame_angle() const;
};

} // namespace paramlc
