#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rmt::oracle {

enum class Status { converged, max_effort, divergent_suspected };

struct OracleResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    Status status = Status::max_effort;
    bool converged() const { return status == Status::converged; }
};

using Fn = std::function<double(double)>;

enum class OscKernel { cos_kernel, sin_kernel, j0_weighted };

// int_0^inf x^(s-1) ln^m(x) f(x) dx. Split at x = 1, the upper half
// mapped back to (0,1] by x -> 1/x; tanh-sinh on both panels absorbs
// the algebraic/logarithmic endpoint singularity. tol is absolute.
OracleResult integrate_mellin(const Fn& f, double s, int log_power, double tol);

// int_0^inf K(s x) f(x) dx for K in {cos, sin, x J_0}. Integrates
// panel-by-panel between consecutive kernel zeros and Euler-accelerates
// the resulting alternating panel sequence (Longman's scheme).
OracleResult integrate_oscillatory(const Fn& f, OscKernel kernel, double s,
                                   double tol);

// int_0^inf dxi int_0^inf dx xi^(s-1) f(x) / sqrt(x^2 + xi^2) for a
// bounded cos-type f with unit frequency. Iterated: the inner integral
// runs over panels between cos zeros, the outer through the Mellin
// machinery; inner error estimates propagate through the outer weights.
OracleResult integrate_double_mellin(const Fn& f, double s, double tol);

// Euler-transformation table over the partial sums of `terms`; the most
// stable entry wins. Handles conditionally convergent and bounded
// divergent (Abel-summable) alternating series.
OracleResult accelerate_alternating(std::span<const double> terms, double tol);

// Abel summation: evaluates sum term(n) eta^n on a geometric eta grid
// approaching 1 and Richardson-extrapolates to eta = 1.
OracleResult abel_sum(const std::function<double(long)>& term, double tol);

// Shared panel machinery: integrates g over [0, b(0)], [b(0), b(1)], ...
// with acceleration of the panel sequence. b(k) must be increasing.
// Panel 0 is done by tanh-sinh so g may be endpoint-singular at 0.
OracleResult integrate_between_zeros(const Fn& g,
                                     const std::function<double(int)>& b,
                                     double tol);

// k-th positive zero of J_alpha (k >= 1): McMahon expansion plus one
// Newton refinement.
double bessel_zero(double alpha, int k);

namespace detail {

// Gauss-Kronrod 7-15 on [a, b]; second member is |K15 - G7|.
std::pair<double, double> gk15(const Fn& f, double a, double b, long* evals);

// Successive tanh-sinh level estimates for int_0^1 g (diagnostics).
std::vector<double> tanh_sinh_levels(const Fn& g, int max_level);

// Levin u-transform of the series with given terms.
OracleResult levin_u(std::span<const double> terms, double tol);

} // namespace detail

} // namespace rmt::oracle
