#include "rmt/series.hpp"

#include <cmath>
#include <limits>

namespace rmt::series {

using oracle::OracleResult;
using oracle::Status;

bool CoefficientFn::is_pole(double t, double atol) const {
    for (double p : poles)
        if (std::fabs(t - p) <= atol)
            return true;
    return false;
}

namespace {

// phi argument for the n-th term of each kind.
double phi_index(SeriesKind kind, int n) {
    switch (kind) {
    case SeriesKind::exp_alternating:
    case SeriesKind::plain_alternating:
        return (double)n;
    case SeriesKind::cos_type:
        return 2.0 * n;
    case SeriesKind::sin_type:
    default:
        return 2.0 * n + 1.0;
    }
}

} // namespace

OracleResult eval_series(const SeriesSpec& spec, double x, double tol) {
    if (spec.direct)
        return {spec.direct(x), 0.0, 1, Status::converged};

    // base_n = x^(exponent_n) / factorial_n, updated by ratios only so
    // the intermediate factorials never overflow.
    bool even_odd = spec.kind == SeriesKind::cos_type ||
                    spec.kind == SeriesKind::sin_type;
    bool has_factorial = spec.kind != SeriesKind::plain_alternating;
    double e0 = spec.kind == SeriesKind::sin_type ? spec.q + spec.p : spec.p;
    long double base = std::pow((long double)x, (long double)e0);
    long double xq = std::pow((long double)x, (long double)spec.q);
    long double step = even_odd ? xq * xq : xq;

    long double sum = 0.0L;
    OracleResult res;
    double prev_mag = std::numeric_limits<double>::infinity();
    int small_streak = 0, grow_streak = 0;
    const long cap = 1000000;
    // base_{n+1} = base_n * step / divisor(n); the divisor is the ratio
    // of consecutive factorials for each kind
    auto next_base = [&](long double b, long n) -> long double {
        if (!has_factorial)
            return b * step;
        long double div;
        if (spec.kind == SeriesKind::cos_type)
            div = (2.0L * n + 1.0L) * (2.0L * n + 2.0L); // (2n)! -> (2n+2)!
        else if (spec.kind == SeriesKind::sin_type)
            div = (2.0L * n + 2.0L) * (2.0L * n + 3.0L); // (2n+1)! -> (2n+3)!
        else
            div = (long double)n + 1.0L; // n! -> (n+1)!
        return b * step / div;
    };

    for (long n = 0; n < cap; ++n) {
        double idx = phi_index(spec.kind, (int)n);
        long double sign = (n % 2 == 0) ? 1.0L : -1.0L;
        long double term = sign * (long double)spec.phi.eval(idx) * base;
        ++res.evaluations;
        sum += term;
        double mag = (double)std::fabs((double)term);
        double scale = std::max(1e-300, (double)std::fabs(sum));
        small_streak = (mag < tol * scale) ? small_streak + 1 : 0;
        grow_streak = (mag > prev_mag) ? grow_streak + 1 : 0;
        prev_mag = mag;
        if (small_streak >= 3) {
            res.value = (double)sum;
            double nidx = phi_index(spec.kind, (int)n + 1);
            res.error_estimate = std::fabs(
                spec.phi.eval(nidx) * (double)next_base(base, n));
            res.status = Status::converged;
            return res;
        }
        if (grow_streak >= 20) {
            res.value = (double)sum;
            res.error_estimate = mag;
            res.status = Status::divergent_suspected;
            return res;
        }
        base = next_base(base, n);
    }
    res.value = (double)sum;
    res.error_estimate = std::fabs((double)prev_mag);
    res.status = Status::max_effort;
    return res;
}

specfun::SpecResult coefficient(const SeriesSpec& spec, int n) {
    double idx = phi_index(spec.kind, n);
    if (spec.phi.is_pole(idx))
        return {std::numeric_limits<double>::quiet_NaN(),
                specfun::Status::pole};
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    double fact = 1.0;
    switch (spec.kind) {
    case SeriesKind::exp_alternating:
        for (int k = 2; k <= n; ++k)
            fact *= k;
        break;
    case SeriesKind::cos_type:
        for (int k = 2; k <= 2 * n; ++k)
            fact *= k;
        break;
    case SeriesKind::sin_type:
        for (int k = 2; k <= 2 * n + 1; ++k)
            fact *= k;
        break;
    case SeriesKind::plain_alternating:
        break;
    }
    return {sign * spec.phi.eval(idx) / fact, specfun::Status::ok};
}

SeriesIntegrand integrand_for(const SeriesSpec& spec) {
    if (spec.direct)
        return {spec.direct, std::numeric_limits<double>::infinity(), false};

    // Empirical convergence radius: bisect on "terms still decay at x".
    auto converges = [&](double x) {
        return eval_series(spec, x, 1e-10).status == Status::converged;
    };
    double lo = 0.0, hi = 64.0;
    if (converges(hi)) {
        lo = hi;
    } else {
        for (int it = 0; it < 40; ++it) {
            double mid = 0.5 * (lo + hi);
            (converges(mid) ? lo : hi) = mid;
        }
    }
    double x_max = 0.9 * lo;
    auto spec_copy = spec;
    return {[spec_copy](double x) {
                return eval_series(spec_copy, x, 1e-12).value;
            },
            x_max, true};
}

} // namespace rmt::series
