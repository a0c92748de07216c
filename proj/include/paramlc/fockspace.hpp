#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "paramlc/model.hpp"

namespace paramlc::fockspace {

enum class BasisTag { a_basis, b_basis };

/// Complex Hermitian matrix over a truncated multi-mode Fock space.
/// Dimension is prod(cutoff+1) with mode 0 as the slow index.
struct DensityMatrix {
    std::vector<int> mode_cutoffs;
    BasisTag basis = BasisTag::a_basis;
    Eigen::MatrixXcd matrix;

    [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }
    [[nodiscard]] double trace() const { return matrix.trace().real(); }
    [[nodiscard]] double hermiticity_error() const {
        return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    }
};

struct TmstReference {
    double r = 0.0;
    double n_th = 0.0;
    double log_negativity = 0.0;
};

struct IntermodeCovariances {
    std::complex<double> a1a2;
    std::complex<double> a1a2dag;
    std::complex<double> a1;
    std::complex<double> a2;
};

/// Exact N=2 steady state on a truncated two-mode Fock space, built from
/// the pair-condensate purification and traced over the auxiliary copy.
/// Coefficients are accumulated in log space; the result is normalized to
/// unit trace. Throws CutoffTooSmall when the square truncation drops more
/// than 1e-6 of the purification weight.
DensityMatrix build_ness_density_matrix(const ModelParams& params, int cutoff);

/// Same state expressed in the rotated mode basis b1 = (a1 + i a2)/sqrt(2),
/// b2 = (a1 - i a2)/sqrt(2). The rotation is applied sector by sector in
/// total photon number (a passive mode transformation preserves it), which
/// is exact below the cutoff and clips only the negligible sectors above it.
DensityMatrix to_b_basis(const ModelParams& params, int cutoff);

/// Partial transpose on the Fock indices of one mode (0 or 1) of a
/// two-mode density matrix. Trace is preserved exactly.
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, int mode_index);

/// E_N = log2 of the trace norm of the partial transpose.
double log_negativity(const DensityMatrix& rho, int mode_index);

/// Thermal two-mode squeezed reference state at matched purity and total
/// photon number: n_th = (1/sqrt(purity) - 1)/2, cosh(2r) = sqrt(purity)
/// * (total_photons + 1), E_N = max(0, (2r - ln(2 n_th + 1)) / ln 2).
/// Throws Infeasible when the cosh equation has no solution.
TmstReference tmst_reference(double purity, double total_photons);

/// First and second intermode moments from ladder-operator matrix elements.
IntermodeCovariances intermode_covariances(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);
double mean_total_photons(const DensityMatrix& rho);

/// Cutoff heuristic keeping the dropped purification weight well below the
/// build tolerance for the given parameters.
int suggested_cutoff(const ModelParams& params);

} // namespace paramlc::fockspace
