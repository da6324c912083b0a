#pragma once

#include "rmt/series.hpp"

#include <string>
#include <vector>

namespace rmt::transforms {

enum class Regime { convergent, asymptotic };

enum class SolStatus {
    ok,
    non_convergent,
    optimal_truncation_hit,
    pole,
    inapplicable,
};

// A series-form transform value. For the asymptotic regime the sum
// stops before the first growing term and the error estimate is the
// first omitted term; the convergent regime sums to tolerance.
struct SeriesSolution {
    double value = 0.0;
    Regime regime = Regime::convergent;
    int terms_used = 0;
    double error_estimate = 0.0;
    SolStatus status = SolStatus::ok;
    std::vector<std::string> notes;
    bool ok() const {
        return status == SolStatus::ok ||
               status == SolStatus::optimal_truncation_hit;
    }
};

enum class FourierKernel { cos_kernel, sin_kernel };

// Fourier cosine/sine transform of an exponential-type series (p=0, q=1):
//   cos, convergent:  sum (-1)^n phi(-2n-1) s^(2n)
//   cos, asymptotic:  sum (-1)^n phi(2n+1) / s^(2n)
//   sin, convergent:  sum (-1)^n phi(-2n)  s^(2n+1)
//   sin, asymptotic:  sum (-1)^n phi(2n)  / s^(2n+1)
SeriesSolution fourier_series_solution(const series::SeriesSpec& spec,
                                       double s, FourierKernel kernel,
                                       Regime regime);

// Laplace transform:
//   convergent:  sum (-1)^n phi(-n-1) s^n
//   asymptotic:  sum (-1)^n phi(n) / s^(n+1)
SeriesSolution laplace_series_solution(const series::SeriesSpec& spec,
                                       double s, Regime regime);

// Hankel transform of order 0:
//   convergent:  sum binom(-3/2, n) phi(-2n)   s^(2n)
//   asymptotic:  sum binom(-3/2, n) phi(2n+1) / s^(2n+3)
SeriesSolution hankel0_series_solution(const series::SeriesSpec& spec,
                                       double s, Regime regime);

// int_0^inf f g dx = sum (-1)^n phi(n) psi(-n-1) for exponential-type
// f, g. Non-decaying terms go through Abel summation (noted).
SeriesSolution product_integral(const series::CoefficientFn& phi,
                                const series::CoefficientFn& psi,
                                int max_terms);

} // namespace rmt::transforms
