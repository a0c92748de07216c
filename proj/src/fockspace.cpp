#include "paramlc/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "paramlc/exact_ness.hpp"
#include "paramlc/specfun.hpp"

namespace paramlc::fockspace {

using complex_t = std::complex<double>;

namespace {

// log of the purification coefficient A_{i,j} = (D/2u)^{i+j} / (delta)_{i+j}
// * sqrt((2i)!(2j)!) / (i! j!)
complex_t log_coeff_a(const ModelParams& p, int i, int j) {
    const int m = i + j;
    const double log_half_ratio = std::log(p.drive / (2.0 * p.u));
    return complex_t{m * log_half_ratio, 0.0} - specfun::log_pochhammer(p.delta(), m) +
           complex_t{0.5 * (std::lgamma(2.0 * i + 1.0) + std::lgamma(2.0 * j + 1.0)) -
                         std::lgamma(i + 1.0) - std::lgamma(j + 1.0),
                     0.0};
}

// fraction of the binomial split of |n>_s|0>_a that survives k <= c and n-k <= c
double binomial_kept_fraction(int n, int c) {
    if (n <= c) return 1.0;
    double kept = 0.0;
    const double ln_tot = n * std::log(2.0);
    for (int k = n - c; k <= c; ++k) {
        kept += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                         std::lgamma(n - k + 1.0) - ln_tot);
    }
    return kept;
}

// dropped purification weight of the square truncation, relative to the
// full norm (both evaluated by log-sum-exp over the coefficient table)
double dropped_weight(const ModelParams& p, int cutoff) {
    const int m_ext = 2 * cutoff + 40;
    std::vector<double> log_w;       // log |A_ij|^2 over the extended table
    std::vector<double> kept_frac;   // surviving fraction for each entry
    log_w.reserve(static_cast<std::size_t>(m_ext) * m_ext / 2);
    for (int i = 0; i <= m_ext; ++i) {
        for (int j = 0; j <= m_ext - i; ++j) {
            log_w.push_back(2.0 * log_coeff_a(p, i, j).real());
            const bool inside = (i + j) <= cutoff;
            kept_frac.push_back(inside ? binomial_kept_fraction(2 * i, cutoff) *
                                             binomial_kept_fraction(2 * j, cutoff)
                                       : 0.0);
        }
    }
    const double lmax = *std::max_element(log_w.begin(), log_w.end());
    double total = 0.0, kept = 0.0;
    for (std::size_t k = 0; k < log_w.size(); ++k) {
        const double w = std::exp(log_w[k] - lmax);
        total += w;
        kept += w * kept_frac[k];
    }
    return 1.0 - kept / total;
}

void require_two_modes(const DensityMatrix& rho) {
    if (rho.mode_cutoffs.size() != 2)
        throw BadModeIndex("operation requires a two-mode density matrix");
}

// single-mode ladder operator, truncated at cutoff
Eigen::SparseMatrix<complex_t> annihilation(int cutoff) {
    Eigen::SparseMatrix<complex_t> a(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) a.insert(n - 1, n) = std::sqrt(double(n));
    a.makeCompressed();
    return a;
}

Eigen::SparseMatrix<complex_t> kron(const Eigen::SparseMatrix<complex_t>& A,
                                    const Eigen::SparseMatrix<complex_t>& B) {
    Eigen::SparseMatrix<complex_t> out(A.rows() * B.rows(), A.cols() * B.cols());
    std::vector<Eigen::Triplet<complex_t>> trips;
    trips.reserve(static_cast<std::size_t>(A.nonZeros()) * B.nonZeros());
    for (int ka = 0; ka < A.outerSize(); ++ka)
        for (Eigen::SparseMatrix<complex_t>::InnerIterator ia(A, ka); ia; ++ia)
            for (int kb = 0; kb < B.outerSize(); ++kb)
                for (Eigen::SparseMatrix<complex_t>::InnerIterator ib(B, kb); ib; ++ib)
                    trips.emplace_back(ia.row() * B.rows() + ib.row(),
                                       ia.col() * B.cols() + ib.col(),
                                       ia.value() * ib.value());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

// eigenvalues of a Hermitian matrix, splitting into total-photon parity
// blocks when the matrix is block diagonal in them (the NESS always is)
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m,
                                      const std::vector<int>& cutoffs) {
    const Eigen::Index dim = m.rows();
    const int c2 = cutoffs[1];
    std::vector<Eigen::Index> even, odd;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const int n1 = static_cast<int>(k) / (c2 + 1);
        const int n2 = static_cast<int>(k) % (c2 + 1);
        ((n1 + n2) % 2 == 0 ? even : odd).push_back(k);
    }
    const double scale = m.cwiseAbs().maxCoeff();
    double off = 0.0;
    for (Eigen::Index r : even)
        for (Eigen::Index c : odd) off = std::max(off, std::abs(m(r, c)));

    const auto solve_block = [](const Eigen::MatrixXcd& blk) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw EigenFailure("hermitian eigensolver failed to converge");
        return es.eigenvalues();
    };

    if (off > 1e-13 * std::max(scale, 1e-300)) {
        return solve_block(m);
    }
    Eigen::MatrixXcd me(even.size(), even.size()), mo(odd.size(), odd.size());
    for (std::size_t r = 0; r < even.size(); ++r)
        for (std::size_t c = 0; c < even.size(); ++c) me(r, c) = m(even[r], even[c]);
    for (std::size_t r = 0; r < odd.size(); ++r)
        for (std::size_t c = 0; c < odd.size(); ++c) mo(r, c) = m(odd[r], odd[c]);
    Eigen::VectorXd ev(dim);
    ev << solve_block(me), solve_block(mo);
    return ev;
}

// change-of-basis matrix whose columns are b-basis Fock states expanded in
// the a basis; block diagonal in total photon number
Eigen::SparseMatrix<complex_t> b_basis_states(int cutoff) {
    const int d = cutoff + 1;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Eigen::Triplet<complex_t>> trips;
    std::vector<complex_t> poly(2 * cutoff + 2), next(2 * cutoff + 2);
    for (int n = 0; n <= 2 * cutoff; ++n) {
        const int k_lo = std::max(0, n - cutoff), k_hi = std::min(cutoff, n);
        for (int m = k_lo; m <= k_hi; ++m) {
            // |m, n-m>_b = (b1^+)^m (b2^+)^{n-m} |0> / sqrt(m!(n-m)!)
            // with b1^+ = (a1^+ - i a2^+)/sqrt(2), b2^+ = (a1^+ + i a2^+)/sqrt(2).
            // poly[k] is the coefficient of (a1^+)^k (a2^+)^{deg-k}.
            std::fill(poly.begin(), poly.begin() + n + 1, complex_t{0.0, 0.0});
            poly[0] = 1.0;
            int deg = 0;
            const auto mul = [&](complex_t a2_factor) {
                std::fill(next.begin(), next.begin() + deg + 2, complex_t{0.0, 0.0});
                for (int k = 0; k <= deg; ++k) {
                    next[k + 1] += poly[k] * inv_sqrt2;
                    next[k] += poly[k] * a2_factor;
                }
                std::swap(poly, next);
                ++deg;
            };
            for (int t = 0; t < m; ++t) mul(complex_t{0.0, -inv_sqrt2});
            for (int t = 0; t < n - m; ++t) mul(complex_t{0.0, inv_sqrt2});
            for (int k = k_lo; k <= k_hi; ++k) {
                const double lnorm = 0.5 * (std::lgamma(k + 1.0) + std::lgamma(n - k + 1.0) -
                                            std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0));
                const complex_t w = poly[k] * std::exp(lnorm);
                if (std::abs(w) > 0.0) trips.emplace_back(k * d + (n - k), m * d + (n - m), w);
            }
        }
    }
    Eigen::SparseMatrix<complex_t> w(d * d, d * d);
    w.setFromTriplets(trips.begin(), trips.end());
    return w;
}

} // namespace

DensityMatrix build_ness_density_matrix(const ModelParams& params, int cutoff) {
    params.validate();
    if (params.n_modes != 2)
        throw ConfigInvalid("density matrix construction is limited to N = 2");
    if (cutoff < 1) throw ConfigInvalid("cutoff must be positive");

    const int c = cutoff;
    const int d = c + 1;
    const Eigen::Index dim = static_cast<Eigen::Index>(d) * d;

    DensityMatrix rho;
    rho.mode_cutoffs = {c, c};
    rho.basis = BasisTag::a_basis;

    if (params.drive == 0.0) {
        rho.matrix = Eigen::MatrixXcd::Zero(dim, dim);
        rho.matrix(0, 0) = 1.0;
        return rho;
    }

    if (dropped_weight(params, c) > 1e-6)
        throw CutoffTooSmall("square Fock truncation drops more than 1e-6 of the state");

    // purification coefficients, organized by auxiliary (R) index
    std::vector<std::vector<std::pair<int, complex_t>>> columns(dim);
    // all coefficients share an overall scale; offset by the largest log
    // magnitude so the exponentials stay in range before normalization
    double log_offset = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= c; ++i)
        for (int j = 0; j <= c - i; ++j)
            log_offset = std::max(log_offset, log_coeff_a(params, i, j).real());

    for (int i = 0; i <= c; ++i) {
        for (int j = 0; j <= c - i; ++j) {
            const complex_t la = log_coeff_a(params, i, j) - log_offset;
            for (int k = std::max(0, 2 * i - c); k <= std::min(c, 2 * i); ++k) {
                const double lb1 = 0.5 * (std::lgamma(2.0 * i + 1.0) - std::lgamma(k + 1.0) -
                                          std::lgamma(2.0 * i - k + 1.0)) -
                                   i * std::log(2.0);
                for (int p = std::max(0, 2 * j - c); p <= std::min(c, 2 * j); ++p) {
                    const double lb2 =
                        0.5 * (std::lgamma(2.0 * j + 1.0) - std::lgamma(p + 1.0) -
                               std::lgamma(2.0 * j - p + 1.0)) -
                        j * std::log(2.0);
                    const complex_t amp = std::exp(la + lb1 + lb2);
                    const int left = k * d + p;
                    const int right = (2 * i - k) * d + (2 * j - p);
                    columns[right].emplace_back(left, amp);
                }
            }
        }
    }

    // rho = sum_beta v_beta v_beta^+, accumulated on the upper triangle
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& col : columns) {
        for (std::size_t a = 0; a < col.size(); ++a) {
            const auto& [ra, va] = col[a];
            for (std::size_t b = a; b < col.size(); ++b) {
                const auto& [rb, vb] = col[b];
                if (ra <= rb)
                    m(ra, rb) += va * std::conj(vb);
                else
                    m(rb, ra) += vb * std::conj(va);
            }
        }
    }
    m = m.selfadjointView<Eigen::Upper>();
    m /= m.trace().real();
    rho.matrix = std::move(m);
    return rho;
}

DensityMatrix to_b_basis(const ModelParams& params, int cutoff) {
    DensityMatrix rho = build_ness_density_matrix(params, cutoff);
    const auto w = b_basis_states(cutoff);
    Eigen::MatrixXcd rotated = w.adjoint() * rho.matrix * w;
    rotated /= rotated.trace().real();
    rho.matrix = std::move(rotated);
    rho.basis = BasisTag::b_basis;
    return rho;
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, int mode_index) {
    require_two_modes(rho);
    if (mode_index != 0 && mode_index != 1)
        throw BadModeIndex("mode index must be 0 or 1");
    const int d1 = rho.mode_cutoffs[0] + 1;
    const int d2 = rho.mode_cutoffs[1] + 1;
    Eigen::MatrixXcd out(rho.matrix.rows(), rho.matrix.cols());
    for (int n1 = 0; n1 < d1; ++n1)
        for (int n2 = 0; n2 < d2; ++n2)
            for (int m1 = 0; m1 < d1; ++m1)
                for (int m2 = 0; m2 < d2; ++m2) {
                    const Eigen::Index r = n1 * d2 + n2, s = m1 * d2 + m2;
                    if (mode_index == 1)
                        out(r, s) = rho.matrix(n1 * d2 + m2, m1 * d2 + n2);
                    else
                        out(r, s) = rho.matrix(m1 * d2 + n2, n1 * d2 + m2);
                }
    return out;
}

double log_negativity(const DensityMatrix& rho, int mode_index) {
    const Eigen::MatrixXcd pt = partial_transpose(rho, mode_index);
    const Eigen::VectorXd ev = hermitian_eigenvalues(pt, rho.mode_cutoffs);
    return std::log2(ev.cwiseAbs().sum());
}

TmstReference tmst_reference(double purity_value, double total_photons) {
    if (!(purity_value > 0.0) || purity_value > 1.0 + 1e-12)
        throw ConfigInvalid("purity must lie in (0, 1]");
    if (total_photons < 0.0) throw ConfigInvalid("total photon number must be nonnegative");

    TmstReference ref;
    ref.n_th = (1.0 / std::sqrt(purity_value) - 1.0) / 2.0;
    const double cosh2r = std::sqrt(purity_value) * (total_photons + 1.0);
    if (cosh2r < 1.0 - 1e-12)
        throw Infeasible("no squeezing parameter matches the requested purity and photons");
    ref.r = 0.5 * std::acosh(std::max(1.0, cosh2r));
    ref.log_negativity =
        std::max(0.0, (2.0 * ref.r - std::log(2.0 * ref.n_th + 1.0)) / std::log(2.0));
    return ref;
}

IntermodeCovariances intermode_covariances(const DensityMatrix& rho) {
    require_two_modes(rho);
    const int c1 = rho.mode_cutoffs[0], c2 = rho.mode_cutoffs[1];
    Eigen::SparseMatrix<complex_t> id1(c1 + 1, c1 + 1), id2(c2 + 1, c2 + 1);
    id1.setIdentity();
    id2.setIdentity();
    const auto a1 = kron(annihilation(c1), id2);
    const auto a2 = kron(id1, annihilation(c2));

    const auto expval = [&](const Eigen::SparseMatrix<complex_t>& op) {
        return (rho.matrix * op).trace();
    };
    IntermodeCovariances cov;
    cov.a1 = expval(a1);
    cov.a2 = expval(a2);
    cov.a1a2 = expval((a1 * a2).pruned());
    cov.a1a2dag = expval((a1 * Eigen::SparseMatrix<complex_t>(a2.adjoint())).pruned());
    return cov;
}

double purity(const DensityMatrix& rho) { return rho.matrix.squaredNorm(); }

double mean_total_photons(const DensityMatrix& rho) {
    require_two_modes(rho);
    const int d2 = rho.mode_cutoffs[1] + 1;
    double n = 0.0;
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
        const int n1 = static_cast<int>(k) / d2;
        const int n2 = static_cast<int>(k) % d2;
        n += (n1 + n2) * rho.matrix(k, k).real();
    }
    return n;
}

int suggested_cutoff(const ModelParams& params) {
    const double nbar = exact_ness::mean_photon_number(params);
    return std::max(10, static_cast<int>(1.9 * nbar) + 12);
}

} // namespace paramlc::fockspace
