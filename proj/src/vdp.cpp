#include "paramlc/vdp.hpp"

#include <algorithm>
#include <cmath>

#include "paramlc/specfun.hpp"

namespace paramlc::vdp {

using specfun::SeriesResult;
using specfun::hyp1f1;
using specfun::series_ratio;

void VdpParams::validate() const {
    if (kappa < 0.0) throw ConfigInvalid("kappa must be nonnegative");
    if (!(gamma1 > 0.0)) throw ConfigInvalid("gamma1 must be strictly positive");
    if (!(gamma2 > 0.0)) throw ConfigInvalid("gamma2 must be strictly positive");
}

std::vector<double> vdp_fock_distribution(const VdpParams& params, int m_max) {
    params.validate();
    if (m_max < 1) throw ConfigInvalid("m_max must be at least 1");

    const double a = params.a();
    const double b = params.b();
    const SeriesResult norm = hyp1f1(1.0, a + b, 2.0 * b);

    std::vector<double> rho(static_cast<std::size_t>(m_max) + 1);
    double mass = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        const double log_weight =
            m * std::log(b) - specfun::log_pochhammer({a + b, 0.0}, m).real();
        const SeriesResult f = hyp1f1(1.0 + m, a + b + m, b);
        rho[m] = std::exp(log_weight + f.log_abs() - norm.log_abs());
        mass += rho[m];
    }
    if (1.0 - mass > 1e-8)
        throw CutoffTooSmall("Fock tail beyond m_max carries more than 1e-8 probability");
    return rho;
}

double vdp_mean_photon(const VdpParams& params) {
    params.validate();
    const double alpha = params.b();
    const double beta = params.a() + params.b();
    const SeriesResult num = hyp1f1(2.0, beta + 1.0, 2.0 * alpha);
    const SeriesResult den = hyp1f1(1.0, beta, 2.0 * alpha);
    return alpha / beta * series_ratio(num, den).real();
}

double vdp_fano(const VdpParams& params) {
    params.validate();
    const double alpha = params.b();
    const double beta = params.a() + params.b();
    const SeriesResult f1 = hyp1f1(1.0, beta, 2.0 * alpha);
    const SeriesResult f2 = hyp1f1(2.0, beta + 1.0, 2.0 * alpha);
    const SeriesResult f3 = hyp1f1(3.0, beta + 2.0, 2.0 * alpha);
    return 1.0 + alpha / beta *
                     (2.0 * beta / (beta + 1.0) * series_ratio(f3, f2).real() -
                      series_ratio(f2, f1).real());
}

double vdp_recursion_residual(const VdpParams& params, const std::vector<double>& rho) {
    params.validate();
    if (rho.size() < 3) throw ConfigInvalid("need at least three populations");
    const double peak = *std::max_element(rho.begin(), rho.end());
    const auto at = [&](int m) { return m >= 0 && m < static_cast<int>(rho.size()) ? rho[m] : 0.0; };

    double worst = 0.0;
    // residual of kappa(m+1)rho_{m+1} + gamma1 m rho_{m-1}
    //   + gamma2(m+1)(m+2)rho_{m+2} - (kappa m + gamma1(m+1) + gamma2 m(m-1)) rho_m,
    // skipping the last two indices whose inflow terms lie beyond the cutoff
    for (int m = 0; m + 2 < static_cast<int>(rho.size()); ++m) {
        const double res = params.kappa * (m + 1) * at(m + 1) + params.gamma1 * m * at(m - 1) +
                           params.gamma2 * (m + 1) * (m + 2) * at(m + 2) -
                           (params.kappa * m + params.gamma1 * (m + 1) +
                            params.gamma2 * m * (m - 1.0)) *
                               at(m);
        worst = std::max(worst, std::abs(res));
    }
    return worst / peak;
}

} // namespace paramlc::vdp
