#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Eigenvalues>

#include "paramlc/exact_ness.hpp"
#include "paramlc/fockspace.hpp"
#include "paramlc/specfun.hpp"

using namespace paramlc;
using namespace paramlc::fockspace;
using complex_t = std::complex<double>;

namespace {

Eigen::VectorXd eigenvalues_of(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    REQUIRE(es.info() == Eigen::Success);
    return es.eigenvalues();
}

// independent oracle for the b-basis state: the literal four-fold multinomial
// expansion of |n,m>_alpha |0,0>_beta over the four b-mode L/R occupations,
// traced against the auxiliary copy
Eigen::MatrixXcd b_basis_four_fold_oracle(const ModelParams& p, int cutoff, int m_pairs) {
    const int d = cutoff + 1;
    const Eigen::Index dim = static_cast<Eigen::Index>(d) * d;
    std::map<std::pair<int, int>, complex_t> coeff;  // (left, right) -> amplitude
    for (int i = 0; i <= m_pairs; ++i) {
        for (int j = 0; j <= m_pairs - i; ++j) {
            const int n = 2 * i, m = 2 * j;
            const complex_t log_a =
                complex_t{(i + j) * std::log(p.drive / (2.0 * p.u)), 0.0} -
                specfun::log_pochhammer(p.delta(), i + j) +
                complex_t{0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0)) -
                              std::lgamma(i + 1.0) - std::lgamma(j + 1.0),
                          0.0};
            const complex_t pref = std::pow(complex_t{0.0, 1.0}, m) *
                                   std::exp(log_a + complex_t{0.5 * (std::lgamma(n + 1.0) +
                                                                     std::lgamma(m + 1.0)) -
                                                                  (n + m) * std::log(2.0),
                                                              0.0});
            for (int k1 = 0; k1 <= n; ++k1)
                for (int k2 = 0; k2 <= n - k1; ++k2)
                    for (int k3 = 0; k3 <= n - k1 - k2; ++k3) {
                        const int k4 = n - k1 - k2 - k3;
                        for (int p1 = 0; p1 <= m; ++p1)
                            for (int p2 = 0; p2 <= m - p1; ++p2)
                                for (int p3 = 0; p3 <= m - p1 - p2; ++p3) {
                                    const int p4 = m - p1 - p2 - p3;
                                    const int o1 = k1 + p1, o2 = k2 + p2, o3 = k3 + p3,
                                              o4 = k4 + p4;
                                    if (o1 > cutoff || o2 > cutoff || o3 > cutoff || o4 > cutoff)
                                        continue;
                                    const double sign = (p3 + p4) % 2 ? -1.0 : 1.0;
                                    const double lw =
                                        0.5 * (std::lgamma(o1 + 1.0) + std::lgamma(o2 + 1.0) +
                                               std::lgamma(o3 + 1.0) + std::lgamma(o4 + 1.0)) -
                                        (std::lgamma(k1 + 1.0) + std::lgamma(k2 + 1.0) +
                                         std::lgamma(k3 + 1.0) + std::lgamma(k4 + 1.0) +
                                         std::lgamma(p1 + 1.0) + std::lgamma(p2 + 1.0) +
                                         std::lgamma(p3 + 1.0) + std::lgamma(p4 + 1.0));
                                    coeff[{o1 * d + o3, o2 * d + o4}] +=
                                        pref * sign * std::exp(lw);
                                }
                    }
        }
    }
    // group by the auxiliary index and trace out
    std::map<int, std::vector<std::pair<int, complex_t>>> columns;
    for (const auto& [key, amp] : coeff) columns[key.second].emplace_back(key.first, amp);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [right, col] : columns)
        for (const auto& [ra, va] : col)
            for (const auto& [rb, vb] : col) rho(ra, rb) += va * std::conj(vb);
    rho /= rho.trace().real();
    return rho;
}

// two-mode squeezed vacuum, sqrt(1 - x^2) sum x^n |n,n> with x = tanh(r)
DensityMatrix tmsv_state(double r, int cutoff) {
    const int d = cutoff + 1;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
    const double x = std::tanh(r);
    for (int n = 0; n <= cutoff; ++n) psi[n * d + n] = std::pow(x, n);
    psi *= std::sqrt(1.0 - x * x);
    psi /= psi.norm();
    DensityMatrix rho;
    rho.mode_cutoffs = {cutoff, cutoff};
    rho.matrix = psi * psi.adjoint();
    return rho;
}

DensityMatrix coherent_product(complex_t alpha, complex_t beta, int cutoff) {
    const int d = cutoff + 1;
    Eigen::VectorXcd one(d), two(d);
    for (int n = 0; n < d; ++n) {
        one[n] = std::pow(alpha, n) / std::sqrt(std::tgamma(n + 1.0));
        two[n] = std::pow(beta, n) / std::sqrt(std::tgamma(n + 1.0));
    }
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(d) * d);
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2) psi[n1 * d + n2] = one[n1] * two[n2];
    psi /= psi.norm();
    DensityMatrix rho;
    rho.mode_cutoffs = {cutoff, cutoff};
    rho.matrix = psi * psi.adjoint();
    return rho;
}

} // namespace

TEST_CASE("vacuum projector at zero drive") {
    const auto rho = build_ness_density_matrix(ModelParams::two_mode(1.0, 0.0, 1.0), 4);
    CHECK(rho.matrix(0, 0).real() == doctest::Approx(1.0));
    CHECK(rho.matrix.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("construction matches the closed-form photon number") {
    const ModelParams p = ModelParams::two_mode(1.0, 0.5, 1.0);
    const auto rho = build_ness_density_matrix(p, 12);
    CHECK(rho.hermiticity_error() < 1e-10);
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean_total_photons(rho) ==
          doctest::Approx(exact_ness::mean_photon_number(p)).epsilon(1e-9));

    const Eigen::VectorXd ev = eigenvalues_of(rho.matrix);
    CHECK(ev.minCoeff() > -1e-8);
}

TEST_CASE("fano from the density matrix matches the closed form") {
    const ModelParams p = ModelParams::two_mode(1.0, 1.0, 1.0);
    const auto rho = build_ness_density_matrix(p, 16);
    const int d2 = rho.mode_cutoffs[1] + 1;
    double n1 = 0.0, n2 = 0.0;
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
        const double n = double(int(k) / d2 + int(k) % d2);
        n1 += n * rho.matrix(k, k).real();
        n2 += n * n * rho.matrix(k, k).real();
    }
    const double fano_fock = (n2 - n1 * n1) / n1;
    CHECK(fano_fock == doctest::Approx(exact_ness::fano(p)).epsilon(1e-6));
    // variance of the pair number distribution reconstructs pair_moments
    const auto pm = exact_ness::pair_moments(p);
    CHECK(fano_fock - 0.5 == doctest::Approx(pm.var_m / pm.mean_m).epsilon(1e-6));
}

TEST_CASE("matrix elements between opposite total-photon parities vanish") {
    const auto rho = build_ness_density_matrix(ModelParams::two_mode(0.5, 0.8, 1.0), 10);
    const int d = rho.mode_cutoffs[1] + 1;
    double off = 0.0;
    for (Eigen::Index r = 0; r < rho.dim(); ++r)
        for (Eigen::Index c = 0; c < rho.dim(); ++c) {
            const int pr = (int(r) / d + int(r) % d) % 2;
            const int pc = (int(c) / d + int(c) % d) % 2;
            if (pr != pc) off = std::max(off, std::abs(rho.matrix(r, c)));
        }
    CHECK(off < 1e-10);
}

TEST_CASE("cutoff guard") {
    CHECK_THROWS_AS((void)build_ness_density_matrix(ModelParams::two_mode(0.1, 3.0, 1.0), 20),
                    CutoffTooSmall);
}

TEST_CASE("b-basis rotation against the four-fold multinomial oracle") {
    const ModelParams p = ModelParams::two_mode(1.0, 0.3, 1.0);
    const int cutoff = 10;
    const auto rho_b = to_b_basis(p, cutoff);
    const Eigen::MatrixXcd oracle = b_basis_four_fold_oracle(p, cutoff, 8);
    CHECK((rho_b.matrix - oracle).cwiseAbs().maxCoeff() < 1e-7);
    CHECK(rho_b.basis == BasisTag::b_basis);
}

TEST_CASE("b-basis preserves vacuum, photon number and spectrum") {
    const auto vac = to_b_basis(ModelParams::two_mode(1.0, 0.0, 1.0), 4);
    CHECK(vac.matrix(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));

    const ModelParams p = ModelParams::two_mode(1.0, 0.5, 1.0);
    const int cutoff = 14;
    const auto rho_a = build_ness_density_matrix(p, cutoff);
    const auto rho_b = to_b_basis(p, cutoff);
    CHECK(rho_b.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho_b.hermiticity_error() < 1e-12);
    CHECK(mean_total_photons(rho_b) ==
          doctest::Approx(mean_total_photons(rho_a)).epsilon(1e-8));

    const Eigen::VectorXd ea = eigenvalues_of(rho_a.matrix);
    const Eigen::VectorXd eb = eigenvalues_of(rho_b.matrix);
    CHECK((ea - eb).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("b-partition entanglement peaks near threshold then decreases") {
    const double u = 0.1, kappa = 1.0;
    const auto en_b = [&](double d) {
        const ModelParams p = ModelParams::two_mode(u, d, kappa);
        return log_negativity(to_b_basis(p, suggested_cutoff(p)), 1);
    };
    const double rising = en_b(0.10), at_threshold = en_b(0.25);
    const double past = en_b(0.45), far_past = en_b(0.80);
    CHECK(at_threshold > rising);
    CHECK(at_threshold > past);
    CHECK(past > far_past);
}

TEST_CASE("partial transpose basics") {
    const auto vac = build_ness_density_matrix(ModelParams::two_mode(1.0, 0.0, 1.0), 3);
    CHECK((partial_transpose(vac, 1) - vac.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS((void)partial_transpose(vac, 2), BadModeIndex);

    // separable product state stays positive under partial transpose
    const auto prod = coherent_product({0.8, 0.2}, {-0.5, 0.7}, 10);
    CHECK(eigenvalues_of(partial_transpose(prod, 1)).minCoeff() > -1e-10);

    // a two-mode squeezed state is NPT (Gaussian covariance oracle predicts
    // the symplectic eigenvalue e^{-2r} < 1/2 threshold)
    const auto tmsv = tmsv_state(0.5, 18);
    CHECK(eigenvalues_of(partial_transpose(tmsv, 1)).minCoeff() < 0.0);

    // trace preserved exactly
    const auto ness = build_ness_density_matrix(ModelParams::two_mode(1.0, 0.8, 1.0), 12);
    CHECK(partial_transpose(ness, 1).trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("log negativity of reference states") {
    const auto vac = build_ness_density_matrix(ModelParams::two_mode(1.0, 0.0, 1.0), 3);
    CHECK(log_negativity(vac, 1) == doctest::Approx(0.0).epsilon(1e-12));

    // analytic value 2r/ln2 for the pure two-mode squeezed state
    for (double r : {0.5, 1.0}) {
        const int cutoff = r > 0.6 ? 60 : 25;
        CHECK(log_negativity(tmsv_state(r, cutoff), 1) ==
              doctest::Approx(2.0 * r / std::log(2.0)).epsilon(1e-4));
    }

    // both partial transposes give the same entanglement
    const auto ness = build_ness_density_matrix(ModelParams::two_mode(1.0, 0.5, 1.0), 12);
    CHECK(log_negativity(ness, 0) == doctest::Approx(log_negativity(ness, 1)).epsilon(1e-10));
    CHECK(log_negativity(ness, 1) == doctest::Approx(0.036195543081).epsilon(1e-6));
}

TEST_CASE("NESS entanglement is positive at moderate drive") {
    for (double u : {0.05, 0.2}) {
        const auto rho = build_ness_density_matrix(
            ModelParams::two_mode(u, 0.4, 1.0),
            suggested_cutoff(ModelParams::two_mode(u, 0.4, 1.0)));
        CHECK(log_negativity(rho, 1) > 0.0);
    }
}

TEST_CASE("tmst reference closed forms") {
    const auto trivial = tmst_reference(1.0, 0.0);
    CHECK(trivial.r == doctest::Approx(0.0));
    CHECK(trivial.n_th == doctest::Approx(0.0));
    CHECK(trivial.log_negativity == doctest::Approx(0.0));

    const auto unit = tmst_reference(1.0, std::cosh(2.0) - 1.0);
    CHECK(unit.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.log_negativity == doctest::Approx(2.0 / std::log(2.0)).epsilon(1e-12));

    const auto mixed = tmst_reference(0.25, 1.0);
    CHECK(mixed.n_th == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mixed.r == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mixed.log_negativity == doctest::Approx(0.0));

    CHECK_THROWS_AS((void)tmst_reference(0.04, 0.5), Infeasible);
}

TEST_CASE("intermode covariances") {
    const auto ness = build_ness_density_matrix(ModelParams::two_mode(1.0, 0.5, 1.0), 12);
    const auto cov = intermode_covariances(ness);
    CHECK(std::abs(cov.a1) < 1e-8);
    CHECK(std::abs(cov.a2) < 1e-8);
    CHECK(std::abs(cov.a1a2) < 1e-8);
    CHECK(std::abs(cov.a1a2dag) < 1e-8);

    const auto vac = build_ness_density_matrix(ModelParams::two_mode(1.0, 0.0, 1.0), 4);
    const auto vc = intermode_covariances(vac);
    CHECK(std::abs(vc.a1a2) == 0.0);

    // coherent-state eigenvalue oracle: <a1 a2> = alpha beta, <a1 a2^+> = alpha beta*
    const auto prod = coherent_product({1.0, 0.0}, {2.0, 0.0}, 24);
    const auto pc = intermode_covariances(prod);
    CHECK(pc.a1.real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(pc.a2.real() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(pc.a1a2.real() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(pc.a1a2dag.real() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("purity matches the eigenvalue sum") {
    const auto rho = build_ness_density_matrix(ModelParams::two_mode(0.5, 0.6, 1.0), 12);
    const Eigen::VectorXd ev = eigenvalues_of(rho.matrix);
    CHECK(purity(rho) == doctest::Approx(ev.array().square().sum()).epsilon(1e-10));
}
