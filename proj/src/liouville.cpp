#include "paramlc/liouville.hpp"

#include <cmath>
#include <random>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

namespace paramlc::liouville {

using complex_t = std::complex<double>;
using Sparse = Eigen::SparseMatrix<complex_t>;

namespace {

Sparse annihilation(int cutoff) {
    Sparse a(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) a.insert(n - 1, n) = std::sqrt(double(n));
    a.makeCompressed();
    return a;
}

Sparse identity(Eigen::Index d) {
    Sparse id(d, d);
    id.setIdentity();
    return id;
}

} // namespace

LiouvillianMatrix build_liouvillian(const ModelParams& params, int cutoff) {
    params.validate();
    if (params.n_modes != 2)
        throw ConfigInvalid("the Liouvillian oracle is limited to N = 2");
    if (cutoff < 1) throw ConfigInvalid("cutoff must be positive");

    const Eigen::Index d = cutoff + 1;
    const Eigen::Index dim = d * d;
    if (dim * dim > 10'000'000)
        throw DimensionOverflow("superoperator dimension exceeds the practical limit");

    const Sparse a = annihilation(cutoff);
    const Sparse id = identity(d);
    const Sparse a1 = Eigen::kroneckerProduct(a, id).eval();
    const Sparse a2 = Eigen::kroneckerProduct(id, a).eval();

    const Sparse n1 = (Sparse(a1.adjoint()) * a1).pruned();
    const Sparse n2 = (Sparse(a2.adjoint()) * a2).pruned();
    const Sparse ntot = n1 + n2;

    Sparse ham = params.u * Sparse(ntot * ntot);
    for (const Sparse* ai : {&a1, &a2}) {
        const Sparse sq = (*ai) * (*ai);
        ham = ham - params.drive * (Sparse(sq.adjoint()) + sq);
    }
    const complex_t ih{0.0, params.h};
    ham = ham - ih * params.coupling(0, 1) * Sparse(Sparse(a1.adjoint()) * a2) -
          ih * params.coupling(1, 0) * Sparse(Sparse(a2.adjoint()) * a1);

    const Sparse id_dim = identity(dim);
    Sparse gen = complex_t{0.0, -1.0} *
                 (Eigen::kroneckerProduct(id_dim, ham).eval() -
                  Eigen::kroneckerProduct(Sparse(ham.transpose()), id_dim).eval());
    for (const Sparse* ai : {&a1, &a2}) {
        const Sparse ada = (Sparse(ai->adjoint()) * (*ai)).pruned();
        gen = gen + params.kappa * (Eigen::kroneckerProduct(Sparse(ai->conjugate()), *ai).eval() -
                                    0.5 * Eigen::kroneckerProduct(id_dim, ada).eval() -
                                    0.5 * Eigen::kroneckerProduct(Sparse(ada.transpose()), id_dim).eval());
    }
    gen.makeCompressed();

    LiouvillianMatrix out;
    out.matrix = std::move(gen);
    out.params = params;
    out.cutoff = cutoff;
    return out;
}

namespace {

struct SectorSolver {
    Eigen::SparseLU<Sparse> lu;
    std::vector<Eigen::Index> indices;  // vec-space indices of this sector
    double scale = 0.0;

    void factor(const Sparse& sector_matrix) {
        Sparse shifted = sector_matrix;
        const complex_t shift = scale * complex_t{1e-12, 1e-12};
        for (Eigen::Index k = 0; k < shifted.rows(); ++k) shifted.coeffRef(k, k) -= shift;
        shifted.makeCompressed();
        lu.compute(shifted);
        if (lu.info() != Eigen::Success)
            throw EigenFailure("sparse LU factorization of the shifted generator failed");
    }
};

Eigen::VectorXcd random_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = complex_t{gauss(rng), gauss(rng)};
    v.normalize();
    return v;
}

// smallest-eigenvalue magnitude of a sector block by inverse iteration,
// deflating against an optional known kernel vector
double sector_gap(const Sparse& block, const Eigen::SparseLU<Sparse>& lu,
                  const Eigen::VectorXcd* kernel, double scale, std::mt19937_64& rng) {
    Eigen::VectorXcd y = random_unit_vector(block.rows(), rng);
    if (kernel) y -= kernel->dot(y) * (*kernel);
    y.normalize();
    for (int it = 0; it < 10; ++it) {
        y = lu.solve(y);
        if (kernel) y -= kernel->dot(y) * (*kernel);
        y.normalize();
    }
    return (block * y).norm() / scale;
}

// same estimate with an iterative inner solve; avoids a second expensive
// factorization for the sector that cannot hold the steady state
double sector_gap_iterative(const Sparse& block, double scale, std::mt19937_64& rng) {
    Sparse shifted = block;
    const complex_t shift = scale * complex_t{1e-12, 1e-12};
    for (Eigen::Index k = 0; k < shifted.rows(); ++k) shifted.coeffRef(k, k) -= shift;
    shifted.makeCompressed();

    Eigen::BiCGSTAB<Sparse, Eigen::IncompleteLUT<complex_t>> solver;
    solver.preconditioner().setFillfactor(12);
    solver.setTolerance(1e-10);
    solver.setMaxIterations(800);
    solver.compute(shifted);
    Eigen::VectorXcd y = random_unit_vector(block.rows(), rng);
    if (solver.info() == Eigen::Success) {
        bool converged = true;
        for (int it = 0; it < 4 && converged; ++it) {
            const Eigen::VectorXcd z = solver.solve(y);
            converged = solver.info() == Eigen::Success;
            if (converged) y = z.normalized();
        }
        if (converged) return (block * y).norm() / scale;
    }
    // iterative solve failed: fall back to a direct factorization
    Eigen::SparseLU<Sparse> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success)
        throw EigenFailure("sector gap factorization failed");
    for (int it = 0; it < 10; ++it) y = lu.solve(y).normalized();
    return (block * y).norm() / scale;
}

} // namespace

SteadyStateSolution steady_state_nullvector(const LiouvillianMatrix& liouvillian) {
    const Sparse& gen = liouvillian.matrix;
    const Eigen::Index n = gen.rows();
    const Eigen::Index dim = liouvillian.hilbert_dim();
    const int d = liouvillian.cutoff + 1;

    const double scale = gen.coeffs().abs().maxCoeff();

    // the generator never mixes the two photon-parity superoperator sectors
    // (every term changes row and column occupations by the same parity); the
    // steady state lives in the even sector, so solve there and use the odd
    // block only for the uniqueness gap
    const auto vec_sector = [&](Eigen::Index v) {
        const Eigen::Index r = v % dim, c = v / dim;
        const int pr = (static_cast<int>(r) / d + static_cast<int>(r) % d) % 2;
        const int pc = (static_cast<int>(c) / d + static_cast<int>(c) % d) % 2;
        return (pr + pc) % 2;
    };
    std::vector<Eigen::Index> to_sector(n);
    SectorSolver even, odd;
    even.scale = odd.scale = scale;
    for (Eigen::Index v = 0; v < n; ++v) {
        auto& sec = vec_sector(v) == 0 ? even : odd;
        to_sector[v] = static_cast<Eigen::Index>(sec.indices.size());
        sec.indices.push_back(v);
    }

    bool block_structure = true;
    std::vector<Eigen::Triplet<complex_t>> te, to;
    te.reserve(gen.nonZeros() / 2);
    to.reserve(gen.nonZeros() / 2);
    for (int k = 0; k < gen.outerSize(); ++k) {
        for (Sparse::InnerIterator it(gen, k); it; ++it) {
            const int sr = vec_sector(it.row()), sc = vec_sector(it.col());
            if (sr != sc) {
                block_structure = false;
                break;
            }
            (sr == 0 ? te : to)
                .emplace_back(to_sector[it.row()], to_sector[it.col()], it.value());
        }
        if (!block_structure) break;
    }

    std::mt19937_64 rng(12345);
    Eigen::VectorXcd x(n);
    double residual = 0.0;
    double gap = 0.0;

    if (block_structure) {
        Sparse gen_even(static_cast<Eigen::Index>(even.indices.size()),
                        static_cast<Eigen::Index>(even.indices.size()));
        gen_even.setFromTriplets(te.begin(), te.end());
        Sparse gen_odd(static_cast<Eigen::Index>(odd.indices.size()),
                       static_cast<Eigen::Index>(odd.indices.size()));
        gen_odd.setFromTriplets(to.begin(), to.end());
        even.factor(gen_even);

        Eigen::VectorXcd xe = random_unit_vector(gen_even.rows(), rng);
        for (int it = 0; it < 50; ++it) {
            xe = even.lu.solve(xe);
            xe.normalize();
            if ((gen_even * xe).norm() / scale < 1e-13) break;
        }
        gap = std::min(sector_gap(gen_even, even.lu, &xe, scale, rng),
                       sector_gap_iterative(gen_odd, scale, rng));
        x.setZero();
        for (std::size_t k = 0; k < even.indices.size(); ++k) x[even.indices[k]] = xe[k];
    } else {
        // general path for inputs without the parity grading
        SectorSolver full;
        full.scale = scale;
        full.factor(gen);
        x = random_unit_vector(n, rng);
        for (int it = 0; it < 50; ++it) {
            x = full.lu.solve(x);
            x.normalize();
            if ((gen * x).norm() / scale < 1e-13) break;
        }
        gap = sector_gap(gen, full.lu, &x, scale, rng);
    }

    residual = (gen * x).norm() / scale;
    if (gap < 1e-8)
        throw DegenerateKernel("steady state is not unique at this parameter point");

    Eigen::MatrixXcd rho_m = Eigen::Map<Eigen::MatrixXcd>(x.data(), dim, dim);
    const complex_t tr = rho_m.trace();
    if (std::abs(tr) < 1e-300)
        throw DegenerateKernel("null vector has vanishing trace");
    rho_m /= tr;
    rho_m = 0.5 * (rho_m + rho_m.adjoint()).eval();

    SteadyStateSolution sol;
    sol.rho.mode_cutoffs = {liouvillian.cutoff, liouvillian.cutoff};
    sol.rho.basis = fockspace::BasisTag::a_basis;
    sol.rho.matrix = std::move(rho_m);
    sol.residual = residual;
    sol.gap_estimate = gap;
    return sol;
}

Eigen::MatrixXcd apply(const LiouvillianMatrix& liouvillian, const Eigen::MatrixXcd& op) {
    const Eigen::Index dim = liouvillian.hilbert_dim();
    if (op.rows() != dim || op.cols() != dim)
        throw ConfigInvalid("operator dimension does not match the Liouvillian");
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(op.data(), dim * dim);
    Eigen::VectorXcd w = liouvillian.matrix * v;
    return Eigen::Map<Eigen::MatrixXcd>(w.data(), dim, dim);
}

OracleObservables observables(const fockspace::DensityMatrix& rho) {
    OracleObservables obs;
    const int d2 = rho.mode_cutoffs[1] + 1;
    double n1m = 0.0, n2m = 0.0;
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
        const double ntot = double(int(k) / d2 + int(k) % d2);
        const double p = rho.matrix(k, k).real();
        n1m += ntot * p;
        n2m += ntot * ntot * p;
    }
    obs.mean_n = n1m;
    obs.fano = (n2m - n1m * n1m) / n1m;
    obs.log_negativity = fockspace::log_negativity(rho, 1);
    return obs;
}

} // namespace paramlc::liouville
