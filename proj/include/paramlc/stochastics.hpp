#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "paramlc/model.hpp"

namespace paramlc::stochastics {

/// Monte Carlo phase-diffusion estimate.
struct DiffusionEstimate {
    double d_phi_hat = 0.0;
    double std_error = 0.0;
    int n_trajectories = 0;
    double analytic = 0.0;
    std::uint64_t seed = 0;

    // per-sample ensemble statistics of phi(t) - h t, for CSV emission
    std::vector<double> sample_times;
    std::vector<double> var_phi;
    std::vector<double> mean_phi;
};

struct SdeOptions {
    double coupling_scale = 1.0;  // scales the 4 u sqrt(n_ss) amplitude-phase term
    double noise_scale = 1.0;     // scales both white-noise drives
    double sample_interval = 0.0; // 0: pick 0.1/kappa
    int n_batches = 16;           // batches for the slope standard error
    int threads = 0;              // 0: hardware concurrency
};

/// Analytic diffusion coefficient
/// D_phi = (kappa / 8 n_ss) (1 + 16 u^2 n_ss^2 / kappa^2). Requires D > kappa/4.
double analytic_phase_diffusion(const ModelParams& params);

/// Same value in the drive form (kappa / 8 n_ss) r^2 with r = 4 D / kappa.
double analytic_phase_diffusion_r_form(const ModelParams& params);

/// D_phi normalized to the Schawlow-Townes reference kappa / (4 n_ss); equals r^2 / 2.
double schawlow_townes_ratio(const ModelParams& params);

/// Euler-Maruyama ensemble of the coupled (phi, delta-y) Langevin system
///   d phi = (h + 4 u sqrt(n_ss) y) dt + sqrt(kappa / n_ss) dW1
///   d y   = -kappa y dt + sqrt(kappa) dW2
/// with vacuum-strength noises <xi_i xi_j> = (1/4) delta_ij delta(t - t').
/// The diffusion coefficient is the regression slope of Var[phi - h t]
/// against 2 t over t in [5/kappa, T]; the standard error comes from the
/// spread of per-batch slopes.
///
/// Deterministic for fixed (seed, n_traj, T, dt): trajectory j draws from a
/// splitmix64 stream keyed by (seed, j) with Box-Muller normals, and batch
/// reductions run in fixed order regardless of thread count.
DiffusionEstimate simulate_phase_sde(const ModelParams& params, int n_traj, double total_time,
                                     double dt, std::uint64_t seed, const SdeOptions& opts = {});

struct LyapunovResult {
    Eigen::Matrix2d covariance;
    double fano_semi = 0.0;
    double residual = 0.0;  // || A C + C A^T + Q ||_max
};

/// Closed-form stationary covariance of the radial fluctuation pair under
/// A = [[0, 4 u n_ss], [-4 u n_ss, -kappa]], Q = (kappa/4) I, and the
/// semiclassical Fano ratio 4 C_11 = 1 + kappa^2 / (32 u^2 n_ss^2).
LyapunovResult lyapunov_covariance(const ModelParams& params);

} // namespace paramlc::stochastics
