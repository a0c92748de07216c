#pragma once

#include <complex>
#include <vector>

#include "paramlc/model.hpp"
#include "paramlc/specfun.hpp"

namespace paramlc::exact_ness {

/// Derived quantities of the exact steady-state solution.
///
/// The purification coefficients obey c_0 = 1 and
/// m (2mu - i kappa/2) c_m = 2D c_{m-1}, equivalently
/// c_m = (D/u)^m / (m! (delta)_m). norm_z is the squared norm
/// 1F2(N/2; delta, delta*; lambda); log_norm_z is always finite even when
/// norm_z itself overflows the double range.
struct NessDescriptor {
    std::complex<double> delta;
    double lambda = 0.0;
    double norm_z = 1.0;
    double log_norm_z = 0.0;
    std::vector<std::complex<double>> coefficients;
};

enum class Phase { symmetric, ssb_static, limit_cycle_or_torus };

struct PhaseClassification {
    Phase phase = Phase::symmetric;
    bool at_boundary = false;  // set when D == kappa/4 within tolerance
};

struct PairMoments {
    double mean_m = 0.0;      // <m> = <n>
    double m_mminus1 = 0.0;   // <m(m-1)>
    double var_m = 0.0;       // <m(m-1)> + <m> - <m>^2
};

/// Purification coefficients c_0..c_m_max plus normalization.
NessDescriptor descriptor(const ModelParams& params, int m_max);

/// Smallest pair budget whose norm-series tail |c_m|^2 (N/2)_m m! falls
/// below 1e-14 of the running norm for three consecutive terms.
int auto_m_max(const ModelParams& params);

/// Exact steady-state photon number
/// lambda (N/2)/|delta|^2 * 1F2(N/2+1; delta+1, delta*+1; lambda) / 1F2(N/2; delta, delta*; lambda).
double mean_photon_number(const ModelParams& params);

/// Mean and variance of the pair-excitation number.
PairMoments pair_moments(const ModelParams& params);

/// Fano ratio Var(n)/<n> = Var(m)/<m> + 1/2. Requires D > 0.
double fano(const ModelParams& params);

/// Rescaled photon number <n> / (D/u). Requires D > 0.
double order_parameter(const ModelParams& params);

/// Phase diagram location: symmetric below threshold, static symmetry
/// breaking above it, limit cycle / torus when the antisymmetric coupling
/// is active. The boundary D = kappa/4 is reported as symmetric with
/// at_boundary set.
PhaseClassification classify_phase(const ModelParams& params);

/// Semiclassical attractor photon number; zero at or below threshold.
double semiclassical_nss(const ModelParams& params);

} // namespace paramlc::exact_ness
