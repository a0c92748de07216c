#include "paramlc/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace paramlc::semiclassics {

using complex_t = std::complex<double>;

Eigen::VectorXcd complex_rhs(const ModelParams& params, const Eigen::VectorXcd& a) {
    const double n = a.squaredNorm();
    Eigen::VectorXcd rhs = complex_t{0.0, -2.0 * params.u * n} * a +
                           complex_t{0.0, 2.0 * params.drive} * a.conjugate() -
                           (params.kappa / 2.0) * a;
    if (params.h != 0.0) {
        const Eigen::VectorXd kr = params.coupling * a.real();
        const Eigen::VectorXd ki = params.coupling * a.imag();
        rhs += params.h * (kr.cast<complex_t>() + complex_t{0.0, 1.0} * ki.cast<complex_t>());
    }
    return rhs;
}

double default_dt(const ModelParams& params) {
    double dt = 0.01 / params.kappa;
    const double nss = params.n_ss();
    if (nss > 0.0) dt = std::min(dt, 0.01 / (params.u * nss));
    if (params.h != 0.0 && params.coupling.size() > 0) {
        const double hmax = std::abs(params.h) * params.coupling.cwiseAbs().maxCoeff() *
                            params.coupling.rows();
        if (hmax > 0.0) dt = std::min(dt, 0.05 / hmax);
    }
    return dt;
}

QuadratureTrajectory integrate(const ModelParams& params, const Eigen::VectorXcd& a0,
                               double total_time, double dt, int record_stride) {
    params.validate();
    if (!(dt > 0.0) || total_time < dt)
        throw ConfigInvalid("integration requires dt > 0 and T >= dt");
    if (record_stride < 1) record_stride = 1;

    const double theta = params.frame_angle();
    const complex_t frame = std::exp(complex_t{0.0, -theta});
    const double nss = params.n_ss();
    const double blowup = nss > 0.0 ? 1e3 * nss : std::numeric_limits<double>::infinity();

    QuadratureTrajectory traj;
    traj.theta = theta;
    const auto steps = static_cast<std::size_t>(std::llround(total_time / dt));
    traj.times.reserve(steps / record_stride + 2);

    Eigen::VectorXcd a = a0;
    const auto record = [&](double t) {
        const Eigen::VectorXcd z = frame * a;
        traj.times.push_back(t);
        traj.x.push_back(z.real());
        traj.y.push_back(z.imag());
        traj.photon_number.push_back(a.squaredNorm());
    };
    record(0.0);

    Eigen::VectorXcd k1, k2, k3, k4;
    for (std::size_t s = 1; s <= steps; ++s) {
        k1 = complex_rhs(params, a);
        k2 = complex_rhs(params, a + 0.5 * dt * k1);
        k3 = complex_rhs(params, a + 0.5 * dt * k2);
        k4 = complex_rhs(params, a + dt * k3);
        a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double n = a.squaredNorm();
        if (!std::isfinite(n) || n > blowup)
            throw StepUnstable("photon number exceeded 1e3 n_ss; reduce dt");
        if (s % static_cast<std::size_t>(record_stride) == 0 || s == steps)
            record(static_cast<double>(s) * dt);
    }
    return traj;
}

StabilityReport linear_stability(const ModelParams& params) {
    params.validate();
    if (!params.above_threshold())
        throw BelowThreshold("linear stability of the ring requires D > kappa/4");

    StabilityReport rep;
    rep.n_zero_modes = params.n_modes - 1;
    rep.tangential_decay = -params.kappa;

    const double omega = 4.0 * params.u * params.n_ss();
    const complex_t disc =
        std::sqrt(complex_t{params.kappa * params.kappa - 4.0 * omega * omega, 0.0});
    rep.radial_plus = (-params.kappa + disc) / 2.0;
    rep.radial_minus = (-params.kappa - disc) / 2.0;
    return rep;
}

BlockForm block_canonical_form(const Eigen::MatrixXd& k_matrix) {
    const Eigen::Index n = k_matrix.rows();
    if (k_matrix.cols() != n) throw NotAntisymmetric("K must be square");
    const double scale = std::max(1.0, k_matrix.cwiseAbs().maxCoeff());
    if ((k_matrix + k_matrix.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw NotAntisymmetric("K + K^T is not negligible");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(k_matrix.cast<complex_t>());
    if (es.info() != Eigen::Success)
        throw EigenFailure("eigendecomposition of the coupling matrix failed");

    // keep eigenpairs with positive imaginary eigenvalue, sorted descending
    struct Pair {
        double lambda;
        Eigen::VectorXcd vec;
    };
    std::vector<Pair> pairs;
    const double tol = 1e-12 * scale * n;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lam = es.eigenvalues()[k].imag();
        if (lam > tol) pairs.push_back({lam, es.eigenvectors().col(k)});
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const Pair& a, const Pair& b) { return a.lambda > b.lambda; });

    // orthonormalize within (near-)degenerate eigenvalue groups; eigenvectors
    // across distinct eigenvalues are already orthogonal for a normal matrix
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(pairs[j].lambda - pairs[i].lambda) < 1e-8 * scale)
                pairs[i].vec -= pairs[j].vec.dot(pairs[i].vec) * pairs[j].vec;
        }
        pairs[i].vec.normalize();
    }

    BlockForm form;
    form.rotation = Eigen::MatrixXd::Zero(n, n);
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        form.lambdas.push_back(pairs[r].lambda);
        form.rotation.row(2 * r) = sqrt2 * pairs[r].vec.real();
        form.rotation.row(2 * r + 1) = sqrt2 * pairs[r].vec.imag();
    }

    // complete with the kernel: the orthogonal complement of the block planes
    const auto p = static_cast<Eigen::Index>(2 * pairs.size());
    if (p < n) {
        Eigen::MatrixXd basis(n, n);
        basis.leftCols(p) = form.rotation.topRows(p).transpose();
        basis.rightCols(n - p).setRandom();
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
        const Eigen::MatrixXd q = qr.householderQ();
        form.rotation.bottomRows(n - p) = q.rightCols(n - p).transpose();
        form.has_zero_mode = true;
    }

    // sign conventions can flip under QR; verify the canonical pattern
    Eigen::MatrixXd sigma = form.rotation * k_matrix * form.rotation.transpose();
    for (std::size_t r = 0; r < form.lambdas.size(); ++r) {
        if (sigma(2 * r, 2 * r + 1) < 0.0) {
            form.rotation.row(2 * r + 1) *= -1.0;
        }
    }
    sigma = form.rotation * k_matrix * form.rotation.transpose();
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < form.lambdas.size(); ++r) {
        expected(2 * r, 2 * r + 1) = form.lambdas[r];
        expected(2 * r + 1, 2 * r) = -form.lambdas[r];
    }
    if ((sigma - expected).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw EigenFailure("block reduction failed to reach the canonical pattern");
    return form;
}

std::vector<TorusState> torus_trajectory(const ModelParams& params,
                                         const Eigen::VectorXcd& a0, double total_time,
                                         double dt, int record_stride) {
    const BlockForm form = block_canonical_form(params.coupling);
    const QuadratureTrajectory traj = integrate(params, a0, total_time, dt, record_stride);

    const std::size_t n_blocks = form.lambdas.size();
    std::vector<TorusState> states(traj.size());
    std::vector<double> prev_theta(n_blocks, 0.0);
    for (std::size_t s = 0; s < traj.size(); ++s) {
        const Eigen::VectorXd q = form.rotation * traj.x[s];
        TorusState& st = states[s];
        st.t = traj.times[s];
        st.rho.resize(n_blocks);
        st.theta.resize(n_blocks);
        for (std::size_t r = 0; r < n_blocks; ++r) {
            const double q1 = q[2 * r], q2 = q[2 * r + 1];
            st.rho[r] = std::hypot(q1, q2);
            double ang = std::atan2(q2, q1);
            if (s > 0) {
                // nearest-branch continuation
                const double two_pi = 2.0 * std::numbers::pi;
                ang += two_pi * std::round((prev_theta[r] - ang) / two_pi);
            }
            st.theta[r] = ang;
            prev_theta[r] = ang;
        }
        const Eigen::Index zd = form.zero_dim();
        if (zd == 1)
            st.sigma_leftover = q[q.size() - 1];
        else if (zd > 1)
            st.sigma_leftover = q.tail(zd).norm();
    }
    return states;
}

std::vector<double> torus_frequencies(const std::vector<TorusState>& states) {
    if (states.size() < 4) throw ConfigInvalid("not enough samples for a frequency fit");
    const std::size_t n_blocks = states.front().rho.size();
    const std::size_t start = states.size() / 2;
    const std::size_t count = states.size() - start;

    std::vector<double> freqs(n_blocks);
    for (std::size_t r = 0; r < n_blocks; ++r) {
        double st = 0.0, sth = 0.0, stt = 0.0, stth = 0.0;
        for (std::size_t s = start; s < states.size(); ++s) {
            const double t = states[s].t, th = states[s].theta[r];
            st += t;
            sth += th;
            stt += t * t;
            stth += t * th;
        }
        const double denom = count * stt - st * st;
        freqs[r] = (count * stth - st * sth) / denom;
    }
    return freqs;
}

TorusKind torus_classify(const std::vector<double>& lambdas, long max_denominator) {
    if (lambdas.size() < 2)
        throw ConfigInvalid("classification needs at least two frequencies");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
            const double hi = std::max(std::abs(lambdas[i]), std::abs(lambdas[j]));
            const double lo = std::min(std::abs(lambdas[i]), std::abs(lambdas[j]));
            if (!(lo > 0.0)) throw ConfigInvalid("frequencies must be nonzero");
            double x = hi / lo;
            // continued-fraction convergents; a ratio counts as rational when
            // a convergent p/q with q <= max_denominator lands within the
            // exactness window 1e-9 / q^2
            long p_prev = 0, q_prev = 1, p_cur = 1, q_cur = 0;
            double frac = x;
            bool rational = false;
            for (int it = 0; it < 64; ++it) {
                const double a_f = std::floor(frac);
                const long a = static_cast<long>(a_f);
                const long p_next = a * p_cur + p_prev;
                const long q_next = a * q_cur + q_prev;
                if (q_next > max_denominator || q_next <= 0) break;
                p_prev = p_cur;
                q_prev = q_cur;
                p_cur = p_next;
                q_cur = q_next;
                const double approx = static_cast<double>(p_cur) / q_cur;
                if (std::abs(x - approx) < 1e-9 / (static_cast<double>(q_cur) * q_cur)) {
                    rational = true;
                    break;
                }
                const double rem = frac - a_f;
                if (rem < 1e-15) break;
                frac = 1.0 / rem;
            }
            if (!rational) return TorusKind::quasiperiodic;
        }
    }
    return TorusKind::periodic;
}

namespace {

void require_above_threshold(const ModelParams& params, const char* what) {
    if (!params.above_threshold())
        throw BelowThreshold(std::string(what) + " requires D > kappa/4");
}

} // namespace

double adler_rhs(const ModelParams& params, double delta_u, double phi) {
    require_above_threshold(params, "the Adler equation");
    const double nss = params.n_ss();
    return params.h + (2.0 * params.u * delta_u / params.kappa) * nss * nss * std::sin(4.0 * phi);
}

std::vector<double> integrate_adler(const ModelParams& params, double delta_u, double phi0,
                                    double total_time, double dt) {
    require_above_threshold(params, "the Adler equation");
    if (!(dt > 0.0) || total_time < dt)
        throw ConfigInvalid("integration requires dt > 0 and T >= dt");
    const auto steps = static_cast<std::size_t>(std::llround(total_time / dt));
    std::vector<double> phi(steps + 1);
    phi[0] = phi0;
    double p = phi0;
    for (std::size_t s = 1; s <= steps; ++s) {
        const double k1 = adler_rhs(params, delta_u, p);
        const double k2 = adler_rhs(params, delta_u, p + 0.5 * dt * k1);
        const double k3 = adler_rhs(params, delta_u, p + 0.5 * dt * k2);
        const double k4 = adler_rhs(params, delta_u, p + dt * k3);
        p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        phi[s] = p;
    }
    return phi;
}

double locking_boundary(const ModelParams& params, double delta_u) {
    require_above_threshold(params, "the locking boundary");
    const double nss = params.n_ss();
    return std::abs(2.0 * params.u * delta_u * nss * nss / params.kappa);
}

Eigen::Vector2d mechanical_rhs(const ModelParams& params, const Eigen::Vector2d& x,
                               const Eigen::Vector2d& xdot) {
    if (params.n_modes != 2)
        throw ConfigInvalid("the mechanical analogy is defined for N = 2");
    const double ratio = params.kappa / (4.0 * params.drive);
    const double cos2t = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    const double drive_sq = 2.0 * params.drive * cos2t;
    const double r2 = x.squaredNorm();

    Eigen::Matrix2d j;
    j << 0.0, -1.0, 1.0, 0.0;
    const Eigen::Vector2d grad_u =
        (4.0 * params.u * params.u * r2 * r2 -
         (drive_sq * drive_sq + params.h * params.h)) *
        x;
    return -grad_u + params.kappa * params.h * (j * x) - params.kappa * xdot +
           2.0 * params.h * (j * xdot);
}

} // namespace paramlc::semiclassics
