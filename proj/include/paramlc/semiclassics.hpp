#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "paramlc/model.hpp"

namespace paramlc::semiclassics {

/// Real quadratures in the frame a = e^{i theta} (x + i y).
struct QuadratureState {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    double theta = 0.0;
};

struct QuadratureTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> x;
    std::vector<Eigen::VectorXd> y;
    std::vector<double> photon_number;
    double theta = 0.0;

    [[nodiscard]] std::size_t size() const { return times.size(); }
    [[nodiscard]] QuadratureState back() const {
        return {x.back(), y.back(), theta};
    }
};

/// Orthogonal reduction of an antisymmetric matrix: rotation * K * rotation^T
/// is block diagonal with blocks lambda_r [[0,1],[-1,0]] (lambda_r > 0,
/// sorted descending) followed by a zero block.
struct BlockForm {
    Eigen::MatrixXd rotation;     // rows are the block basis vectors
    std::vector<double> lambdas;  // positive block frequencies
    bool has_zero_mode = false;

    [[nodiscard]] int zero_dim() const {
        return static_cast<int>(rotation.rows()) - 2 * static_cast<int>(lambdas.size());
    }
};

/// Polar coordinates of the block planes along a trajectory sample.
struct TorusState {
    double t = 0.0;
    std::vector<double> rho;     // block radii
    std::vector<double> theta;   // unwrapped block angles
    double sigma_leftover = 0.0; // residual coordinate outside the blocks
};

struct StabilityReport {
    int n_zero_modes = 0;          // tangential gapless directions (N - 1)
    double tangential_decay = 0.0; // -kappa
    std::complex<double> radial_plus;
    std::complex<double> radial_minus;
};

enum class TorusKind { periodic, quasiperiodic };

/// Mean-field right-hand side
/// da_i/dt = -2iu n a_i + 2iD a_i* - (kappa/2) a_i + h sum_j K_ij a_j.
Eigen::VectorXcd complex_rhs(const ModelParams& params, const Eigen::VectorXcd& a);

/// Step size heuristic for the fixed-step integrator.
double default_dt(const ModelParams& params);

/// Fixed-step RK4 integration, sampled every `record_stride` steps.
/// Throws StepUnstable if the photon number exceeds 1e3 n_ss or turns
/// non-finite.
QuadratureTrajectory integrate(const ModelParams& params, const Eigen::VectorXcd& a0,
                               double total_time, double dt, int record_stride = 1);

/// Linearization spectrum around the attractor ring: N-1 exact zero modes,
/// the tangential -kappa pair, and the radial pair
/// (-kappa +- sqrt(kappa^2 - 64 u^2 n_ss^2)) / 2. Requires D > kappa/4.
StabilityReport linear_stability(const ModelParams& params);

/// Throws NotAntisymmetric when K + K^T is not negligible.
BlockForm block_canonical_form(const Eigen::MatrixXd& k_matrix);

/// Integrate and express the trajectory in block polar coordinates.
std::vector<TorusState> torus_trajectory(const ModelParams& params,
                                         const Eigen::VectorXcd& a0, double total_time,
                                         double dt, int record_stride = 1);

/// Angular velocity of each block angle, from a linear fit over the final
/// half of the samples. Signs follow the integrated motion; magnitudes
/// equal h * lambda_r on the attractor.
std::vector<double> torus_frequencies(const std::vector<TorusState>& states);

/// Periodic when every pairwise frequency ratio admits a rational p/q with
/// q <= max_denominator within the exactness window 1e-9 / q^2 (continued
/// fraction convergents).
TorusKind torus_classify(const std::vector<double>& lambdas, long max_denominator);

/// Scalar Adler phase velocity h + (2 u delta_u / kappa) n_ss^2 sin(4 phi).
double adler_rhs(const ModelParams& params, double delta_u, double phi);

/// RK4 integration of the Adler equation; returns phi at each sample.
std::vector<double> integrate_adler(const ModelParams& params, double delta_u,
                                    double phi0, double total_time, double dt);

/// Critical coupling |2 u delta_u n_ss^2 / kappa| separating winding from
/// phase locking.
double locking_boundary(const ModelParams& params, double delta_u);

/// Acceleration of the fictitious 2-D particle: -grad U + kappa h J x
/// + (-kappa I + 2 h J) xdot with U = (2/3) u^2 |x|^6
/// - [(2 D cos 2theta)^2 + h^2] |x|^2 / 2.
Eigen::Vector2d mechanical_rhs(const ModelParams& params, const Eigen::Vector2d& x,
                               const Eigen::Vector2d& xdot);

} // namespace paramlc::semiclassics
