#include "paramlc/stochastics.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace paramlc::stochastics {

namespace {

void require_above_threshold(const ModelParams& params) {
    if (!params.above_threshold())
        throw BelowThreshold("phase diffusion is defined on the limit cycle, D > kappa/4");
}

// splitmix64: the documented RNG behind the per-trajectory streams
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1)
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }
};

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    mix.next();
    return mix.next();
}

struct BoxMuller {
    SplitMix64 rng;
    bool have_spare = false;
    double spare = 0.0;

    explicit BoxMuller(std::uint64_t key) : rng(key) {}

    double normal() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare = radius * std::sin(angle);
        have_spare = true;
        return radius * std::cos(angle);
    }
};

} // namespace

double analytic_phase_diffusion(const ModelParams& params) {
    params.validate();
    require_above_threshold(params);
    const double nss = params.n_ss();
    const double coupling = 4.0 * params.u * nss / params.kappa;
    return params.kappa / (8.0 * nss) * (1.0 + coupling * coupling);
}

double analytic_phase_diffusion_r_form(const ModelParams& params) {
    params.validate();
    require_above_threshold(params);
    const double r = 4.0 * params.drive / params.kappa;
    return params.kappa * r * r / (8.0 * params.n_ss());
}

double schawlow_townes_ratio(const ModelParams& params) {
    return analytic_phase_diffusion(params) / (params.kappa / (4.0 * params.n_ss()));
}

DiffusionEstimate simulate_phase_sde(const ModelParams& params, int n_traj, double total_time,
                                     double dt, std::uint64_t seed, const SdeOptions& opts) {
    params.validate();
    require_above_threshold(params);
    if (n_traj < 1) throw ConfigInvalid("need at least one trajectory");
    if (!(dt > 0.0) || total_time < dt)
        throw ConfigInvalid("integration requires dt > 0 and T >= dt");
    if (dt * params.kappa > 0.1)
        throw StepTooLarge("dt kappa > 0.1 under-resolves the y-quadrature relaxation");

    const double nss = params.n_ss();
    const double coupling = opts.coupling_scale * 4.0 * params.u * std::sqrt(nss);
    // <xi xi> = delta/4 makes the Wiener increments sqrt(dt)/2 * N(0,1)
    const double noise_phi = opts.noise_scale * std::sqrt(params.kappa / nss) * std::sqrt(dt) / 2.0;
    const double noise_y = opts.noise_scale * std::sqrt(params.kappa) * std::sqrt(dt) / 2.0;

    const auto n_steps = static_cast<std::size_t>(std::llround(total_time / dt));
    const double sample_interval =
        opts.sample_interval > 0.0 ? opts.sample_interval : 0.1 / params.kappa;
    const auto stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(sample_interval / dt)));
    const std::size_t n_samples = n_steps / stride;

    const int n_batches = std::max(1, std::min(opts.n_batches, n_traj));
    struct Accum {
        std::vector<double> sum, sum_sq;
    };
    std::vector<Accum> acc(n_batches);
    for (auto& a : acc) {
        a.sum.assign(n_samples, 0.0);
        a.sum_sq.assign(n_samples, 0.0);
    }

    // batch b owns the contiguous trajectory range [lo_b, hi_b); each batch is
    // reduced sequentially in index order so the result does not depend on
    // how batches are distributed over threads
    const auto batch_range = [&](int b) {
        const auto lo = static_cast<std::uint64_t>(b) * n_traj / n_batches;
        const auto hi = static_cast<std::uint64_t>(b + 1) * n_traj / n_batches;
        return std::pair<std::uint64_t, std::uint64_t>{lo, hi};
    };

    const auto run_batch = [&](int b) {
        auto [lo, hi] = batch_range(b);
        Accum& a = acc[b];
        for (std::uint64_t j = lo; j < hi; ++j) {
            BoxMuller noise(stream_key(seed, j));
            double phi = 0.0, y = 0.0;
            std::size_t sample = 0;
            for (std::size_t s = 1; s <= n_steps; ++s) {
                phi += (params.h + coupling * y) * dt + noise_phi * noise.normal();
                y += -params.kappa * y * dt + noise_y * noise.normal();
                if (s % stride == 0 && sample < n_samples) {
                    const double detrended = phi - params.h * static_cast<double>(s) * dt;
                    a.sum[sample] += detrended;
                    a.sum_sq[sample] += detrended * detrended;
                    ++sample;
                }
            }
        }
    };

    int n_threads = opts.threads > 0 ? opts.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, n_batches));
    if (n_threads == 1) {
        for (int b = 0; b < n_batches; ++b) run_batch(b);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next_batch{0};
        for (int t = 0; t < n_threads; ++t) {
            workers.emplace_back([&] {
                for (int b = next_batch.fetch_add(1); b < n_batches; b = next_batch.fetch_add(1))
                    run_batch(b);
            });
        }
        for (auto& w : workers) w.join();
    }

    DiffusionEstimate est;
    est.n_trajectories = n_traj;
    est.seed = seed;
    est.analytic = analytic_phase_diffusion(params);
    est.sample_times.resize(n_samples);
    est.var_phi.resize(n_samples);
    est.mean_phi.resize(n_samples);

    // pooled mean/variance per sample, in fixed batch order
    for (std::size_t k = 0; k < n_samples; ++k) {
        est.sample_times[k] = static_cast<double>((k + 1) * stride) * dt;
        double s = 0.0, sq = 0.0;
        for (const auto& a : acc) {
            s += a.sum[k];
            sq += a.sum_sq[k];
        }
        const double mean = s / n_traj;
        est.mean_phi[k] = mean + params.h * est.sample_times[k];
        est.var_phi[k] = sq / n_traj - mean * mean;
    }

    // slope of Var[phi - h t] vs 2 t over the regression window, per batch
    // around the pooled mean, then pooled
    const double t_min = 5.0 / params.kappa;
    std::vector<double> slopes(n_batches, 0.0);
    for (int b = 0; b < n_batches; ++b) {
        auto [lo, hi] = batch_range(b);
        const double nb = static_cast<double>(hi - lo);
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        std::size_t cnt = 0;
        for (std::size_t k = 0; k < n_samples; ++k) {
            const double t = est.sample_times[k];
            if (t < t_min) continue;
            const double mean = est.mean_phi[k] - params.h * t;
            const double var_b = acc[b].sum_sq[k] / nb - 2.0 * mean * acc[b].sum[k] / nb + mean * mean;
            const double xx = 2.0 * t;
            sx += xx;
            sy += var_b;
            sxx += xx * xx;
            sxy += xx * var_b;
            ++cnt;
        }
        if (cnt < 2) throw ConfigInvalid("regression window [5/kappa, T] holds fewer than two samples");
        const double d = cnt * sxx - sx * sx;
        slopes[b] = (cnt * sxy - sx * sy) / d;
    }
    double mean_slope = 0.0;
    for (double s : slopes) mean_slope += s;
    mean_slope /= n_batches;
    double var_slope = 0.0;
    for (double s : slopes) var_slope += (s - mean_slope) * (s - mean_slope);
    est.d_phi_hat = mean_slope;
    est.std_error = n_batches > 1
                        ? std::sqrt(var_slope / (n_batches - 1) / n_batches)
                        : 0.0;
    return est;
}

LyapunovResult lyapunov_covariance(const ModelParams& params) {
    params.validate();
    require_above_threshold(params);
    const double nss = params.n_ss();
    const double omega = 4.0 * params.u * nss;
    const double kappa = params.kappa;

    LyapunovResult out;
    out.covariance(0, 0) = 0.25 * (1.0 + kappa * kappa / (2.0 * omega * omega));
    out.covariance(0, 1) = -kappa / (8.0 * omega);
    out.covariance(1, 0) = out.covariance(0, 1);
    out.covariance(1, 1) = 0.25;
    out.fano_semi = 4.0 * out.covariance(0, 0);

    Eigen::Matrix2d a;
    a << 0.0, omega, -omega, -kappa;
    const Eigen::Matrix2d q = (kappa / 4.0) * Eigen::Matrix2d::Identity();
    out.residual = (a * out.covariance + out.covariance * a.transpose() + q).cwiseAbs().maxCoeff();
    return out;
}

} // namespace paramlc::stochastics
