#pragma once

#include "rmt/oracle.hpp"
#include "rmt/specfun.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rmt::series {

// Analytic continuation of the discrete coefficient sequence {phi(n)}.
// The continuation is caller-supplied; inferring one is out of scope.
// Callables must be reentrant if specs are shared across threads.
struct CoefficientFn {
    std::function<double(double)> eval;
    std::vector<double> poles; // arguments where phi is singular
    std::string description;
    bool is_pole(double t, double atol = 1e-9) const;
};

// Term templates, with the alternating sign baked in:
//   exp_alternating    (-1)^n phi(n)    x^(qn+p) / n!
//   plain_alternating  (-1)^n phi(n)    x^(qn+p)
//   cos_type           (-1)^n phi(2n)   x^(q 2n+p)   / (2n)!
//   sin_type           (-1)^n phi(2n+1) x^(q(2n+1)+p) / (2n+1)!
enum class SeriesKind { exp_alternating, plain_alternating, cos_type, sin_type };

struct SeriesSpec {
    CoefficientFn phi;
    SeriesKind kind = SeriesKind::exp_alternating;
    double p = 0.0; // power offset, >= 0
    double q = 1.0; // power stride, > 0
    // Closed-form evaluator valid on all of [0, inf), when known.
    std::function<double(double)> direct;
};

// Numerical value of the series at x. Prefers `direct` when present;
// otherwise sums terms until three consecutive ones fall below
// tol * |partial sum|, reporting the first omitted term as the error.
oracle::OracleResult eval_series(const SeriesSpec& spec, double x, double tol);

// Literal n-th series coefficient, sign and factorial included.
specfun::SpecResult coefficient(const SeriesSpec& spec, int n);

// What the oracle should integrate for this spec. Without a direct
// evaluator the series only converges on a bounded interval, so the
// integrand comes with a truncated domain and a warning flag.
struct SeriesIntegrand {
    std::function<double(double)> fn;
    double x_max;   // +inf when direct is available
    bool truncated; // true when the oracle domain had to be clipped
};
SeriesIntegrand integrand_for(const SeriesSpec& spec);

} // namespace rmt::series
