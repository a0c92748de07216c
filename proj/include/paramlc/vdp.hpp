#pragma once

#include <vector>

#include "paramlc/errors.hpp"

namespace paramlc::vdp {

/// Quantum van der Pol oscillator: single-photon loss kappa, incoherent
/// gain gamma1, two-photon loss gamma2.
struct VdpParams {
    double kappa = 0.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;

    void validate() const;
    [[nodiscard]] double a() const { return kappa / gamma2; }  // kappa / gamma2
    [[nodiscard]] double b() const { return gamma1 / gamma2; } // gamma1 / gamma2
};

/// Steady-state Fock populations rho_0..rho_m_max from the closed form
/// rho_m = b^m / (a+b)_m * 1F1(1+m; a+b+m; b) / 1F1(1; a+b; 2b).
/// Throws CutoffTooSmall when the tail mass beyond m_max exceeds 1e-8.
std::vector<double> vdp_fock_distribution(const VdpParams& params, int m_max);

/// <n> = (alpha/beta) 1F1(2; beta+1; 2 alpha) / 1F1(1; beta; 2 alpha)
/// with alpha = gamma1/gamma2 and beta = (kappa + gamma1)/gamma2.
double vdp_mean_photon(const VdpParams& params);

/// Closed-form Fano ratio from the generating function.
double vdp_fano(const VdpParams& params);

/// Max residual of the three-term steady-state recursion over the given
/// populations, normalized by the largest population. Boundary terms use
/// rho_{-1} = 0 and the provided tail.
double vdp_recursion_residual(const VdpParams& params, const std::vector<double>& rho);

} // namespace paramlc::vdp
