#pragma once

#include <complex>

#include <Eigen/Sparse>

#include "paramlc/fockspace.hpp"
#include "paramlc/model.hpp"

namespace paramlc::liouville {

/// Vectorized Lindblad generator on a truncated two-mode Fock space
/// (column-stacking convention, ladder operators clipped at the cutoff).
struct LiouvillianMatrix {
    Eigen::SparseMatrix<std::complex<double>> matrix;
    ModelParams params;
    int cutoff = 0;

    [[nodiscard]] Eigen::Index hilbert_dim() const {
        return static_cast<Eigen::Index>(cutoff + 1) * (cutoff + 1);
    }
};

/// Result of the steady-state solve, with the spectral-gap estimate used
/// for the uniqueness check.
struct SteadyStateSolution {
    fockspace::DensityMatrix rho;
    double residual = 0.0;       // ||L vec(rho)|| / ||L||
    double gap_estimate = 0.0;   // |second eigenvalue| / ||L||
};

/// Assemble the sparse generator for the two-mode model.
/// Throws DimensionOverflow when the superoperator dimension exceeds ~1e7.
LiouvillianMatrix build_liouvillian(const ModelParams& params, int cutoff);

/// Right null vector via shifted inverse iteration, reshaped and normalized
/// into a unit-trace Hermitian density matrix. Uniqueness is verified by a
/// deflated second iteration; DegenerateKernel is thrown when the estimated
/// second eigenvalue is below 1e-8 ||L||.
SteadyStateSolution steady_state_nullvector(const LiouvillianMatrix& liouvillian);

/// Apply L to a density-matrix-shaped operator (for invariant checks).
Eigen::MatrixXcd apply(const LiouvillianMatrix& liouvillian, const Eigen::MatrixXcd& op);

/// Observables of a two-mode state used by the oracle comparisons.
struct OracleObservables {
    double mean_n = 0.0;
    double fano = 0.0;
    double log_negativity = 0.0;
};
OracleObservables observables(const fockspace::DensityMatrix& rho);

} // namespace paramlc::liouville
