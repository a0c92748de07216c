#pragma once

#include <complex>
#include <cstddef>

#include "paramlc/errors.hpp"

namespace paramlc::specfun {

using complex_t = std::complex<double>;

/// Result of a hypergeometric series evaluation.
///
/// The numeric value is stored in scaled form: the full value equals
/// value * exp(log_scale). In ordinary regimes log_scale is 0 and `value`
/// is the plain result; for strongly driven parameter sets the series can
/// exceed the double range by hundreds of orders of magnitude, in which
/// case the accumulation switches to a rescaled representation and
/// log_scale carries the excess magnitude.
struct SeriesResult {
    complex_t value{0.0, 0.0};
    double log_scale = 0.0;
    std::size_t terms_used = 0;
    double truncation_estimate = 0.0;

    /// value * exp(log_scale); overflows to inf when out of double range.
    [[nodiscard]] complex_t full() const;
    /// log of the magnitude of the full value.
    [[nodiscard]] double log_abs() const;
};

struct SeriesOptions {
    double tol = 1e-12;
    std::size_t max_terms = 1'000'000;
};

/// Rising factorial (z)_m = z (z+1) ... (z+m-1); (z)_0 = 1.
complex_t pochhammer(complex_t z, unsigned m);

/// Complex log of the rising factorial, accumulated factor by factor.
/// Safe for magnitudes far beyond double range.
complex_t log_pochhammer(complex_t z, unsigned m);

/// Generalized hypergeometric series 1F2(a; b, c; x) = sum_m (a)_m x^m / ((b)_m (c)_m m!).
///
/// Summed by the term-ratio recurrence t_{m+1} = t_m (a+m) x / ((b+m)(c+m)(m+1)).
/// Terminates once |t_m| < tol * |partial sum| holds for three consecutive
/// terms, which guards against transiently small terms before the series
/// peak at large x.
///
/// Throws PoleParameter if b or c is a nonpositive integer, NonConvergence
/// if the stopping rule is not met within opts.max_terms.
SeriesResult hyp1f2(complex_t a, complex_t b, complex_t c, double x,
                    const SeriesOptions& opts = {});

/// Confluent hypergeometric series 1F1(a; b; x), same stopping rule.
SeriesResult hyp1f1(complex_t a, complex_t b, double x,
                    const SeriesOptions& opts = {});

/// Ratio of two scaled series values, full(num)/full(den) without overflow.
complex_t series_ratio(const SeriesResult& num, const SeriesResult& den);

} // namespace paramlc::specfun
