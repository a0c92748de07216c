#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "paramlc/exact_ness.hpp"
#include "paramlc/vdp.hpp"

using namespace paramlc;
using namespace paramlc::vdp;

namespace {

double dist_mean(const std::vector<double>& rho) {
    double m = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) m += k * rho[k];
    return m;
}

double dist_fano(const std::vector<double>& rho) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        m1 += k * rho[k];
        m2 += static_cast<double>(k) * k * rho[k];
    }
    return (m2 - m1 * m1) / m1;
}

} // namespace

TEST_CASE("distribution limits") {
    // vanishing gain leaves the vacuum
    const auto vac = vdp_fock_distribution({0.5, 1e-9, 1.0}, 8);
    CHECK(vac[0] == doctest::Approx(1.0).epsilon(1e-8));

    // kappa = 0, gamma1 = gamma2: mean exactly 1 via the e^x identity
    const auto unit = vdp_fock_distribution({0.0, 1.0, 1.0}, 40);
    CHECK(dist_mean(unit) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::accumulate(unit.begin(), unit.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
    for (double p : unit) CHECK(p >= 0.0);
}

TEST_CASE("recursion residual of the closed form") {
    for (const VdpParams p : {VdpParams{0.0, 1.0, 1.0}, VdpParams{0.3, 2.0, 0.7},
                              VdpParams{1.0, 5.0, 1.0}}) {
        const auto rho = vdp_fock_distribution(p, 60);
        CHECK(vdp_recursion_residual(p, rho) < 1e-8);
    }
}

TEST_CASE("tail guard") {
    CHECK_THROWS_AS((void)vdp_fock_distribution({0.0, 200.0, 1.0}, 20), CutoffTooSmall);
}

TEST_CASE("mean photon number") {
    CHECK(vdp_mean_photon({0.0, 1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-10));
    // large photon limit -> gamma1 / (2 gamma2)
    CHECK(vdp_mean_photon({0.0, 200.0, 1.0}) == doctest::Approx(100.0).epsilon(0.02));
    CHECK(vdp_mean_photon({0.0, 200.0, 1.0}) == doctest::Approx(100.5).epsilon(1e-9));
    CHECK(vdp_mean_photon({1.0, 1e-6, 1.0}) < 1e-5);
}

TEST_CASE("Fano ratio") {
    // thermodynamic limit of the oscillator: 1.5
    CHECK(vdp_fano({0.0, 200.0, 1.0}) == doctest::Approx(1.5).epsilon(0.02));
    CHECK(vdp_fano({0.0, 200.0, 1.0}) == doctest::Approx(1.49502487562).epsilon(1e-9));

    // increasing the linear loss raises the Fano ratio
    CHECK(vdp_fano({0.5, 50.0, 1.0}) > vdp_fano({0.0, 50.0, 1.0}));
    CHECK(vdp_fano({50.0, 50.0, 1.0}) > vdp_fano({0.5, 50.0, 1.0}));

    // weak gain with dominant single-photon loss: nearly Poissonian
    CHECK(vdp_fano({1.0, 1e-3, 1.0}) == doctest::Approx(1.0).epsilon(1e-5));
    // without single-photon loss the weak-gain limit is set by the
    // three-level cascade instead, F -> 2/3
    CHECK(vdp_fano({0.0, 1e-3, 1.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-2));
}

TEST_CASE("generating function agrees with distribution moments") {
    for (const VdpParams p : {VdpParams{0.0, 3.0, 1.0}, VdpParams{0.8, 6.0, 1.5},
                              VdpParams{2.0, 10.0, 1.0}}) {
        const auto rho = vdp_fock_distribution(p, 80);
        CHECK(vdp_mean_photon(p) == doctest::Approx(dist_mean(rho)).epsilon(1e-8));
        CHECK(vdp_fano(p) == doctest::Approx(dist_fano(rho)).epsilon(1e-8));
    }
}

TEST_CASE("amplitude fluctuations sit above the coherently driven model") {
    const double f_vdp = vdp_fano({0.0, 200.0, 1.0});
    const double f_main = exact_ness::fano(ModelParams::two_mode(1.0, 1000.0, 1.0));
    CHECK(f_vdp - f_main > 0.4);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)vdp_mean_photon({-1.0, 1.0, 1.0}), ConfigInvalid);
    CHECK_THROWS_AS((void)vdp_mean_photon({0.0, 0.0, 1.0}), ConfigInvalid);
    CHECK_THROWS_AS((void)vdp_mean_photon({0.0, 1.0, 0.0}), ConfigInvalid);
}
