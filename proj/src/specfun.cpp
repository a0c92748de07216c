#include "paramlc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace paramlc::specfun {

namespace {

bool is_nonpositive_integer(complex_t z) {
    if (std::abs(z.imag()) > 1e-14) return false;
    const double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < 1e-14;
}

// Generic rescaled series accumulator. `ratio(m)` maps term t_m to t_{m+1}.
template <typename RatioFn>
SeriesResult sum_series(RatioFn ratio, const SeriesOptions& opts) {
    if (!(opts.tol > 0.0)) throw NonConvergence("series tolerance must be positive");

    // Engage the rescaled path well before |t| can overflow a double.
    const double rescale_at = std::min(1e300 * opts.tol, 1e280);

    SeriesResult res;
    complex_t term{1.0, 0.0};
    complex_t sum{0.0, 0.0};
    double log_scale = 0.0;
    int small_streak = 0;
    std::size_t m = 0;

    for (; m < opts.max_terms; ++m) {
        sum += term;
        const double at = std::abs(term);
        const double as = std::abs(sum);
        if (at < opts.tol * as) {
            if (++small_streak >= 3) {
                res.value = sum;
                res.log_scale = log_scale;
                res.terms_used = m + 1;
                res.truncation_estimate = as > 0.0 ? at / as : 0.0;
                return res;
            }
        } else {
            small_streak = 0;
        }
        if (at > rescale_at || as > rescale_at) {
            const double s = std::max(at, as);
            term /= s;
            sum /= s;
            log_scale += std::log(s);
        }
        term *= ratio(m);
    }
    throw NonConvergence("hypergeometric series did not converge within max term budget");
}

} // namespace

complex_t SeriesResult::full() const {
    return value * std::exp(log_scale);
}

double SeriesResult::log_abs() const {
    return std::log(std::abs(value)) + log_scale;
}

complex_t pochhammer(complex_t z, unsigned m) {
    complex_t p{1.0, 0.0};
    for (unsigned k = 0; k < m; ++k) p *= z + static_cast<double>(k);
    return p;
}

complex_t log_pochhammer(complex_t z, unsigned m) {
    complex_t lp{0.0, 0.0};
    for (unsigned k = 0; k < m; ++k) lp += std::log(z + static_cast<double>(k));
    return lp;
}

SeriesResult hyp1f2(complex_t a, complex_t b, complex_t c, double x,
                    const SeriesOptions& opts) {
    if (is_nonpositive_integer(b) || is_nonpositive_integer(c))
        throw PoleParameter("1F2 lower parameter is a nonpositive integer");
    return sum_series(
        [a, b, c, x](std::size_t m) {
            const auto md = static_cast<double>(m);
            return x * (a + md) / ((b + md) * (c + md) * (md + 1.0));
        },
        opts);
}

SeriesResult hyp1f1(complex_t a, complex_t b, double x, const SeriesOptions& opts) {
    if (is_nonpositive_integer(b))
        throw PoleParameter("1F1 lower parameter is a nonpositive integer");
    return sum_series(
        [a, b, x](std::size_t m) {
            const auto md = static_cast<double>(m);
            return x * (a + md) / ((b + md) * (md + 1.0));
        },
        opts);
}

complex_t series_ratio(const SeriesResult& num, const SeriesResult& den) {
    return (num.value / den.value) * std::exp(num.log_scale - den.log_scale);
}

} // namespace paramlc::specfun
