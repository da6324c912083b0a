#pragma once

#include "rmt/series.hpp"

#include <string>
#include <vector>

namespace rmt::mellin {

enum class CfStatus {
    ok,
    pole,
    inapplicable,
    domain_error,
    stencil_pole,
    non_convergent,
};

// One closed form, with the factors it was assembled from (trace) and
// any validity strip the identity is known to need (notes; recorded,
// not enforced -- the oracle flags violations empirically).
struct ClosedFormResult {
    double value = 0.0;
    std::string rule;
    std::vector<std::string> trace;
    std::vector<std::string> validity_notes;
    CfStatus status = CfStatus::ok;
    bool ok() const { return status == CfStatus::ok; }
};

// int_0^inf x^(s-1) f(x) dx = (1/q) Gamma((p+s)/q) phi(-(p+s)/q)
// for f(x) = sum (-1)^n phi(n) x^(qn+p) / n!.
ClosedFormResult rmt_general(const series::SeriesSpec& spec, double s);

// Non-factorial variant: (1/q) pi/sin(pi (p+s)/q) phi(-(p+s)/q).
ClosedFormResult rmt_plain_general(const series::SeriesSpec& spec, double s);

// int_0^inf x^(s-1) sum_{n>=1} f(nx) dx = zeta(s) Gamma(s) phi(-s),
// for exponential-type f with p = 0, q = 1; s > 1.
ClosedFormResult rmt_zeta(const series::SeriesSpec& spec, double s);

// int_0^inf x^(s-1) ln^m(x) f(x) dx = d^m/ds^m of the rmt_general
// closed form. m = 1 uses the analytic digamma form with phi' taken by
// high-order central differences; m >= 2 differentiates the assembled
// m = 0 closed form in s.
ClosedFormResult rmt_log(const series::SeriesSpec& spec, double s, int m);

// Finite-difference route for any m >= 1 (also the independent check
// against the analytic m = 1 path).
ClosedFormResult rmt_log_fd(const series::SeriesSpec& spec, double s, int m);

enum class TrigParity { cos_parity, sin_parity };

// int_0^inf x^(s-1) f_c(x) dx = Gamma(s) cos(pi s/2) phi(-s) and the
// sin analog, for cos/sin-type series.
ClosedFormResult rmt_trig(const series::SeriesSpec& spec, double s,
                          TrigParity parity);

// int_0^inf e^(-x^2) f_c(x) dx = (sqrt(pi)/2) sum (-1)^n phi(2n)/(4^n n!).
ClosedFormResult gaussian_cos_rmt(const series::SeriesSpec& spec);

// int_0^inf dxi int_0^inf dx xi^(s-1) f(x)/sqrt(x^2+xi^2)
//   = Gamma(s/2)^2 phi(-s) / 2^(2-s), for cos-type f.
ClosedFormResult rmt_double(const series::SeriesSpec& spec, double s);

} // namespace rmt::mellin
