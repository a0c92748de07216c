#include "paramlc/exact_ness.hpp"

#include <cmath>

namespace paramlc::exact_ness {

using specfun::SeriesResult;
using specfun::hyp1f2;
using specfun::series_ratio;
using complex_t = std::complex<double>;

NessDescriptor descriptor(const ModelParams& params, int m_max) {
    params.validate();
    if (m_max < 1) throw ConfigInvalid("descriptor requires m_max >= 1");

    NessDescriptor d;
    d.delta = params.delta();
    d.lambda = params.lambda();

    d.coefficients.resize(static_cast<std::size_t>(m_max) + 1);
    d.coefficients[0] = {1.0, 0.0};
    for (int m = 1; m <= m_max; ++m) {
        const complex_t denom =
            static_cast<double>(m) * complex_t{2.0 * m * params.u, -params.kappa / 2.0};
        d.coefficients[m] = 2.0 * params.drive * d.coefficients[m - 1] / denom;
    }

    const double half_n = 0.5 * params.n_modes;
    const SeriesResult z = hyp1f2(half_n, d.delta, std::conj(d.delta), d.lambda);
    d.norm_z = z.full().real();
    d.log_norm_z = z.log_abs();
    return d;
}

int auto_m_max(const ModelParams& params) {
    params.validate();
    if (params.drive == 0.0) return 1;
    const complex_t delta = params.delta();
    const double lambda = params.lambda();
    const double half_n = 0.5 * params.n_modes;

    // norm-series term w_m = |c_m|^2 (N/2)_m m! = lambda^m (N/2)_m / (m! |(delta)_m|^2),
    // accumulated in log space through the term ratio
    double log_w = 0.0;
    double log_norm = -std::numeric_limits<double>::infinity();
    int streak = 0;
    for (int m = 0; m < 1'000'000; ++m) {
        if (log_w > log_norm)
            log_norm = log_w + std::log1p(std::exp(log_norm - log_w));
        else
            log_norm += std::log1p(std::exp(log_w - log_norm));
        if (log_w - log_norm < std::log(1e-14)) {
            if (++streak >= 3) return std::max(1, m);
        } else {
            streak = 0;
        }
        log_w += std::log(lambda * (half_n + m)) -
                 std::log((m + 1.0) * std::norm(delta + static_cast<double>(m)));
    }
    throw NonConvergence("norm-series tail did not fall below the target");
}

double mean_photon_number(const ModelParams& params) {
    params.validate();
    if (params.drive == 0.0) return 0.0;

    const complex_t delta = params.delta();
    const double lambda = params.lambda();
    const double half_n = 0.5 * params.n_modes;

    const SeriesResult num = hyp1f2(half_n + 1.0, delta + 1.0, std::conj(delta) + 1.0, lambda);
    const SeriesResult den = hyp1f2(half_n, delta, std::conj(delta), lambda);
    return lambda * half_n / std::norm(delta) * series_ratio(num, den).real();
}

PairMoments pair_moments(const ModelParams& params) {
    params.validate();
    PairMoments pm;
    if (params.drive == 0.0) return pm;

    const complex_t delta = params.delta();
    const double lambda = params.lambda();
    const double half_n = 0.5 * params.n_modes;

    const SeriesResult z = hyp1f2(half_n, delta, std::conj(delta), lambda);
    const SeriesResult z1 = hyp1f2(half_n + 1.0, delta + 1.0, std::conj(delta) + 1.0, lambda);
    const SeriesResult z2 = hyp1f2(half_n + 2.0, delta + 2.0, std::conj(delta) + 2.0, lambda);

    pm.mean_m = lambda * half_n / std::norm(delta) * series_ratio(z1, z).real();
    pm.m_mminus1 = lambda * lambda * half_n * (half_n + 1.0) /
                   (std::norm(delta) * std::norm(delta + 1.0)) *
                   series_ratio(z2, z).real();
    pm.var_m = pm.m_mminus1 + pm.mean_m - pm.mean_m * pm.mean_m;
    return pm;
}

double fano(const ModelParams& params) {
    if (!(params.drive > 0.0)) throw DegenerateState("fano requires D > 0");
    const PairMoments pm = pair_moments(params);
    if (!(pm.mean_m > 0.0))
        throw DegenerateState("mean pair number underflowed to zero");
    return pm.var_m / pm.mean_m + 0.5;
}

double order_parameter(const ModelParams& params) {
    if (!(params.drive > 0.0)) throw ConfigInvalid("order_parameter requires D > 0");
    return mean_photon_number(params) / (params.drive / params.u);
}

PhaseClassification classify_phase(const ModelParams& params) {
    params.validate();
    PhaseClassification pc;
    const double thr = params.threshold();
    if (std::abs(params.drive - thr) <= 1e-12 * std::max(1.0, thr)) {
        pc.phase = Phase::symmetric;
        pc.at_boundary = true;
        return pc;
    }
    if (params.drive < thr) {
        pc.phase = Phase::symmetric;
        return pc;
    }
    const bool coupling_active = params.h != 0.0 && params.coupling.norm() > 0.0;
    pc.phase = coupling_active ? Phase::limit_cycle_or_torus : Phase::ssb_static;
    return pc;
}

double semiclassical_nss(const ModelParams& params) {
    params.validate();
    return params.n_ss();
}

} // namespace paramlc::exact_ness
