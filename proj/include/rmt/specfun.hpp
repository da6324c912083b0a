#pragma once

namespace rmt::specfun {

enum class Status { ok, pole, domain_error, reduced_accuracy };

// Every function here reports poles and domain violations as data, not
// exceptions, so closed-form evaluators can pass "rule inapplicable at
// this s" up the stack. value is NaN whenever status is not ok.
struct SpecResult {
    double value;
    Status status;
    bool ok() const { return status == Status::ok; }
};

// Gamma function on the real line. Lanczos kernel for x >= 0.5,
// reflection below. Poles at 0, -1, -2, ...
SpecResult gamma(double x);

// psi_0 = d/dx ln Gamma(x). Poles at non-positive integers.
SpecResult digamma(double x);

// psi_1 = d/dx psi_0(x). Poles at non-positive integers.
SpecResult trigamma(double x);

// Riemann zeta for s > 1 (Euler-Maclaurin corrected partial sum).
// s = 1 is a pole; s < 1 is out of the supported domain.
SpecResult zeta(double s);

// Bessel J_alpha(x) for alpha >= 0, x >= 0. Ascending series below
// x = 25, Hankel large-argument expansion above.
SpecResult bessel_j(double alpha, double x);

// Modified Bessel K_0(x) for x > 0.
SpecResult bessel_k0(double x);

// Generalized binomial coefficient a(a-1)...(a-n+1)/n!.
double gen_binomial(double a, int n);

// sin(pi x), cos(pi x) with the argument reduced exactly in x, so the
// reflection formulas stay accurate for arguments far from the origin.
double sin_pi(double x);
double cos_pi(double x);

} // namespace rmt::specfun
