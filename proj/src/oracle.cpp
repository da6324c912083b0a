#include "rmt/oracle.hpp"

#include "rmt/specfun.hpp"
#include "rmt/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rmt::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------
// tanh-sinh rule on (0, 1)
//
// u(t) = 1/2 (1 + tanh(pi/2 sinh t)); abscissae cluster doubly
// exponentially at both endpoints, so x^(s-1) and ln^m(x) factors at
// x -> 0 are integrated without special casing. Levels halve the step
// and reuse previous abscissae.
// ---------------------------------------------------------------------

constexpr double kTsC = kPi / 2.0;
constexpr double kTsTMax = 6.0;
constexpr int kTsLevelCap = 12;

struct TsNode {
    double u, v, w; // abscissa, 1 - abscissa, du/dt
};

bool ts_node(double t, TsNode& out) {
    double z = 2.0 * kTsC * std::sinh(t);
    double u = 1.0 / (1.0 + std::exp(-z));
    double v = 1.0 / (1.0 + std::exp(z));
    if (u <= 0.0 || v <= 0.0)
        return false;
    out = {u, v, 2.0 * kTsC * std::cosh(t) * u * v};
    return true;
}

// Integrand returning (value, inherited error) so iterated integrals can
// propagate inner estimates through the outer quadrature weights.
using Fn2 = std::function<std::pair<double, double>(double)>;

struct TsOutcome {
    double value = 0.0;
    double error = 0.0;       // level difference + roundoff floor
    double carried_error = 0; // sum of w * inherited error
    long evaluations = 0;
    Status status = Status::max_effort;
    std::vector<double> level_values;
};

TsOutcome ts_core(const Fn2& g, double tol, int level_cap = kTsLevelCap) {
    TsOutcome out;
    CompensatedSum acc;    // sum of w * g over all abscissae so far
    CompensatedSum accerr; // sum of w * inherited error
    double l1 = 0.0;       // sum of |w g|, for the roundoff floor
    bool bad = false;

    auto sample = [&](double t) {
        TsNode nd;
        if (!ts_node(t, nd))
            return;
        auto [gv, ge] = g(nd.u);
        ++out.evaluations;
        if (!std::isfinite(gv)) {
            bad = true;
            return;
        }
        double wg = nd.w * gv;
        if (std::fabs(wg) > 1e250) {
            bad = true;
            return;
        }
        acc.add(wg);
        accerr.add(nd.w * std::fabs(ge));
        l1 += std::fabs(wg);
    };

    double h = 1.0;
    sample(0.0);
    for (int k = 1; k <= (int)kTsTMax; ++k) {
        sample(k * h);
        sample(-k * h);
    }
    double prev = h * acc.value();
    out.level_values.push_back(prev);
    int grow_streak = 0;
    double prev_diff = std::numeric_limits<double>::infinity();

    for (int level = 1; level <= level_cap; ++level) {
        h *= 0.5;
        long steps = std::lround(kTsTMax / h);
        for (long k = 1; k <= steps; k += 2) { // odd multiples are new
            sample(k * h);
            sample(-k * h);
        }
        double cur = h * acc.value();
        out.level_values.push_back(cur);
        if (bad || std::fabs(cur) > 1e50) {
            out.status = Status::divergent_suspected;
            out.value = cur;
            out.error = std::fabs(cur);
            return out;
        }
        double diff = std::fabs(cur - prev);
        // Persistent growth across refinements means divergence; growth
        // over the first few levels can just be a peaked integrand whose
        // mass near the endpoint is still being discovered.
        grow_streak = (std::fabs(cur) > 2.0 * std::fabs(prev) + 1.0)
                          ? grow_streak + 1
                          : 0;
        if (grow_streak >= 3 && level >= 6) {
            out.status = Status::divergent_suspected;
            out.value = cur;
            out.error = std::fabs(cur);
            return out;
        }
        double floor = 8.0 * std::numeric_limits<double>::epsilon() * l1 * h;
        out.value = cur;
        // level differences shrink at least quadratically for the
        // double-exponential rule, so the next (unseen) difference is a
        // tighter but still conservative error model than the last one
        double model = diff * std::min(1.0, diff / std::max(prev_diff, 1e-300));
        out.error = model + floor;
        out.carried_error = h * accerr.value();
        if (level >= 3 && diff <= std::max(tol, floor)) {
            out.status = Status::converged;
            return out;
        }
        prev = cur;
        prev_diff = std::max(diff, 1e-300);
    }
    out.status = Status::max_effort;
    return out;
}

TsOutcome ts_plain(const Fn& g, double tol, int cap = kTsLevelCap) {
    return ts_core([&](double u) { return std::pair{g(u), 0.0}; }, tol, cap);
}

double int_pow(double x, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i)
        r *= x;
    return r;
}

// Mellin integrand split at x = 1; the upper half mapped by x -> 1/y.
// Inner f evaluated first: a hard zero from underflowing tails must not
// meet an overflowed power factor.
Fn2 mellin_lower(const Fn& f, double s, int m) {
    return [&f, s, m](double u) -> std::pair<double, double> {
        double fv = f(u);
        if (fv == 0.0)
            return {0.0, 0.0};
        double w = std::pow(u, s - 1.0);
        if (m > 0)
            w *= int_pow(std::log(u), m);
        return {w * fv, 0.0};
    };
}

Fn2 mellin_upper(const Fn& f, double s, int m) {
    return [&f, s, m](double y) -> std::pair<double, double> {
        double fv = f(1.0 / y);
        if (fv == 0.0)
            return {0.0, 0.0};
        double ly = std::log(y);
        double lw = (-s - 1.0) * ly;
        double val;
        if (lw > 600.0) {
            // power factor near overflow; combine with f in logs (f
            // decays much faster than y^(-s-1) grows when the integral
            // converges)
            double lmag = lw + std::log(std::fabs(fv));
            val = lmag > 690.0 ? std::copysign(1e300, fv)
                               : std::copysign(std::exp(lmag), fv);
        } else {
            val = std::exp(lw) * fv;
        }
        if (m > 0)
            val *= int_pow(-ly, m);
        return {val, 0.0};
    };
}

Status worst(Status a, Status b) {
    if (a == Status::divergent_suspected || b == Status::divergent_suspected)
        return Status::divergent_suspected;
    if (a == Status::max_effort || b == Status::max_effort)
        return Status::max_effort;
    return Status::converged;
}

// Adaptive GK15 on one panel: bisect while the embedded estimate is
// above tol. |K15 - G7| heavily overestimates the Kronrod error on
// smooth panels, so a couple of splits buy many digits.
std::pair<double, double> panel_adaptive(const Fn& f, double a, double b,
                                         double tol, int depth, long* evals);

std::pair<double, double> panel_adaptive(const Fn& f, double a, double b,
                                         double tol, int depth, long* evals) {
    auto [val, err] = detail::gk15(f, a, b, evals);
    if (err <= tol || depth >= 7 || !std::isfinite(val))
        return {val, err};
    double mid = 0.5 * (a + b);
    auto [v1, e1] = panel_adaptive(f, a, mid, 0.5 * tol, depth + 1, evals);
    auto [v2, e2] = panel_adaptive(f, mid, b, 0.5 * tol, depth + 1, evals);
    return {v1 + v2, e1 + e2};
}

// Gauss-Kronrod 7-15 constants (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278,
};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694,
};

} // namespace

namespace detail {

std::pair<double, double> gk15(const Fn& f, double a, double b, long* evals) {
    double c = 0.5 * (a + b);
    double hw = 0.5 * (b - a);
    double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double x = hw * kXgk[i];
        double fs = f(c - x) + f(c + x);
        k15 += kWgk[i] * fs;
        if (i % 2 == 1)
            g7 += kWg[i / 2] * fs;
    }
    if (evals)
        *evals += 15;
    return {k15 * hw, std::fabs((k15 - g7) * hw)};
}

std::vector<double> tanh_sinh_levels(const Fn& g, int max_level) {
    TsOutcome out = ts_plain(g, 0.0, max_level);
    return out.level_values;
}

OracleResult levin_u(std::span<const double> terms, double tol) {
    // Weniger's recursive scheme for the u-transform, beta = 1.
    const double beta = 1.0;
    size_t n = std::min<size_t>(terms.size(), 64);
    OracleResult res;
    res.evaluations = (long)n;
    if (n == 0)
        return res;
    std::vector<double> num(n), den(n);
    CompensatedSum ps;
    for (size_t j = 0; j < n; ++j) {
        ps.add(terms[j]);
        double omega = (beta + (double)j) * terms[j];
        if (omega == 0.0)
            omega = std::numeric_limits<double>::min();
        num[j] = ps.value() / omega;
        den[j] = 1.0 / omega;
    }
    double best = num[0] / den[0];
    double best_err = std::numeric_limits<double>::infinity();
    double prev_est = best;
    for (size_t k = 1; k < n; ++k) {
        for (size_t j = 0; j + k < n; ++j) {
            double bn = beta + (double)j;
            double c = (k >= 2)
                           ? bn * std::pow(bn + (double)k - 1.0, (double)k - 2.0) /
                                 std::pow(bn + (double)k, (double)k - 1.0)
                           : bn / (bn + 1.0);
            num[j] = num[j + 1] - c * num[j];
            den[j] = den[j + 1] - c * den[j];
        }
        if (den[0] != 0.0) {
            double est = num[0] / den[0];
            double err = std::fabs(est - prev_est);
            if (std::isfinite(est) && err < best_err) {
                best = est;
                best_err = err;
            }
            prev_est = est;
        }
    }
    res.value = best;
    res.error_estimate = best_err;
    res.status = best_err <= tol ? Status::converged : Status::max_effort;
    return res;
}

} // namespace detail

OracleResult integrate_mellin(const Fn& f, double s, int log_power,
                              double tol) {
    TsOutcome lo = ts_core(mellin_lower(f, s, log_power), tol * 0.5);
    TsOutcome hi = ts_core(mellin_upper(f, s, log_power), tol * 0.5);
    OracleResult res;
    res.value = lo.value + hi.value;
    res.error_estimate = lo.error + hi.error;
    res.evaluations = lo.evaluations + hi.evaluations;
    res.status = worst(lo.status, hi.status);
    return res;
}

OracleResult integrate_between_zeros(const Fn& g,
                                     const std::function<double(int)>& b,
                                     double tol) {
    const int kMaxPanels = 160;
    OracleResult res;
    std::vector<double> panels;
    double quad_err = 0.0;

    double b0 = b(0);
    TsOutcome head =
        ts_plain([&](double u) { return b0 * g(b0 * u); }, tol * 0.25);
    res.evaluations += head.evaluations;
    if (head.status == Status::divergent_suspected) {
        res.status = Status::divergent_suspected;
        res.value = head.value;
        res.error_estimate = std::fabs(head.value);
        return res;
    }
    panels.push_back(head.value);
    quad_err += head.error;

    double lo = b0;
    int small_streak = 0;
    for (int k = 1; k < kMaxPanels; ++k) {
        double hi = b(k);
        auto [val, err] =
            panel_adaptive(g, lo, hi, tol / 256.0, 0, &res.evaluations);
        if (!std::isfinite(val)) {
            res.status = Status::divergent_suspected;
            return res;
        }
        panels.push_back(val);
        quad_err += err;
        lo = hi;
        small_streak = (std::fabs(val) < 0.01 * tol) ? small_streak + 1 : 0;
        if (small_streak >= 3 && k >= 8)
            break;
    }

    OracleResult acc = accelerate_alternating(panels, tol * 0.5);
    res.value = acc.value;
    res.error_estimate = acc.error_estimate + quad_err;
    res.status =
        res.error_estimate <= tol ? Status::converged : acc.status;
    return res;
}

OracleResult integrate_oscillatory(const Fn& f, OscKernel kernel, double s,
                                   double tol) {
    switch (kernel) {
    case OscKernel::cos_kernel:
        return integrate_between_zeros(
            [&](double x) { return f(x) * std::cos(s * x); },
            [s](int k) { return ((double)k + 0.5) * kPi / s; }, tol);
    case OscKernel::sin_kernel:
        return integrate_between_zeros(
            [&](double x) { return f(x) * std::sin(s * x); },
            [s](int k) { return ((double)k + 1.0) * kPi / s; }, tol);
    case OscKernel::j0_weighted:
    default:
        return integrate_between_zeros(
            [&](double x) {
                return x * specfun::bessel_j(0.0, s * x).value * f(x);
            },
            [s](int k) { return bessel_zero(0.0, k + 1) / s; }, tol);
    }
}

OracleResult integrate_double_mellin(const Fn& f, double s, double tol) {
    double inner_tol = tol / 64.0;
    long inner_evals = 0;
    auto inner = [&](double xi) -> std::pair<double, double> {
        OracleResult r = integrate_between_zeros(
            [&](double x) { return f(x) / std::sqrt(x * x + xi * xi); },
            [](int k) { return ((double)k + 0.5) * kPi; }, inner_tol);
        inner_evals += r.evaluations;
        return {r.value, r.error_estimate};
    };

    // Outer in xi: same split-at-1 scheme as integrate_mellin, with the
    // inner error carried through the quadrature weights. The inner
    // value underflows hard for large xi, so it is checked before the
    // possibly overflowing power factor.
    auto outer_lo = [&](double u) -> std::pair<double, double> {
        auto [v, e] = inner(u);
        if (v == 0.0 && e == 0.0)
            return {0.0, 0.0};
        double w = std::pow(u, s - 1.0);
        return {w * v, w * e};
    };
    auto outer_hi = [&](double y) -> std::pair<double, double> {
        auto [v, e] = inner(1.0 / y);
        if (v == 0.0 && e == 0.0)
            return {0.0, 0.0};
        double lw = (-s - 1.0) * std::log(y);
        if (lw > 700.0) {
            // power factor alone overflows; combine in the log domain
            // (the inner value decays like exp(-1/y) here, so the
            // product is far below the underflow threshold)
            double lv = std::log(std::max(std::fabs(v), 1e-300));
            if (lw + lv < 700.0) {
                double prod = std::exp(lw + lv);
                return {v < 0.0 ? -prod : prod, 0.0};
            }
        }
        double w = std::exp(lw);
        return {w * v, w * e};
    };
    TsOutcome lo = ts_core(outer_lo, tol * 0.5, 9);
    TsOutcome hi = ts_core(outer_hi, tol * 0.5, 9);
    OracleResult res;
    res.value = lo.value + hi.value;
    res.error_estimate =
        lo.error + hi.error + lo.carried_error + hi.carried_error;
    res.evaluations = inner_evals;
    res.status = worst(lo.status, hi.status);
    if (res.status == Status::converged && res.error_estimate > tol)
        res.status = Status::max_effort;
    return res;
}

OracleResult accelerate_alternating(std::span<const double> terms,
                                    double tol) {
    OracleResult res;
    size_t n = terms.size();
    res.evaluations = (long)n;
    if (n == 0) {
        res.status = Status::max_effort;
        return res;
    }
    std::vector<double> row(n);
    CompensatedSum ps;
    double max_abs = 0.0;
    for (size_t i = 0; i < n; ++i) {
        ps.add(terms[i]);
        row[i] = ps.value();
        max_abs = std::max(max_abs, std::fabs(row[i]));
    }
    double floor = 4.0 * std::numeric_limits<double>::epsilon() * max_abs;

    double best = row[n - 1];
    double best_est =
        n >= 2 ? std::fabs(row[n - 1] - row[n - 2]) : std::fabs(row[0]);
    // Iterated averaging; the (m, n-1-m) entry uses every term, and the
    // scan over m covers all split points between direct summation and
    // full transformation.
    for (size_t m = 1; m < n; ++m) {
        for (size_t k = 0; k + m < n; ++k) {
            double nw = 0.5 * (row[k] + row[k + 1]);
            double est = std::fabs(nw - row[k]);
            row[k] = nw;
            if (k == n - 1 - m && est <= best_est) {
                best_est = est;
                best = nw;
            }
        }
    }
    res.value = best;
    res.error_estimate = std::max(best_est, floor);
    double tail = 0.0;
    size_t back = std::min<size_t>(n, 5);
    for (size_t i = n - back; i < n; ++i)
        tail += std::fabs(terms[i]);
    tail /= (double)back;
    if (res.error_estimate <= tol)
        res.status = Status::converged;
    else if (res.error_estimate >= 0.25 * tail)
        res.status = Status::divergent_suspected;
    else
        res.status = Status::max_effort;
    return res;
}

OracleResult abel_sum(const std::function<double(long)>& term, double tol) {
    const int kLevels = 10;
    OracleResult res;
    std::vector<double> p; // P(eta_j), eta_j = 1 - 2^-(j+1)
    for (int j = 0; j < kLevels; ++j) {
        double eta = 1.0 - std::ldexp(1.0, -(j + 1));
        CompensatedSum acc;
        double pw = 1.0;
        double min_mag = std::numeric_limits<double>::infinity();
        int tiny_streak = 0;
        bool summed = false;
        const long cap = 400000;
        for (long nidx = 0; nidx < cap; ++nidx) {
            double t = term(nidx) * pw;
            ++res.evaluations;
            acc.add(t);
            pw *= eta;
            double mag = std::fabs(t);
            if (mag > 0.0)
                min_mag = std::min(min_mag, mag);
            // a large rebound after genuine decay means the scaled
            // series still diverges (radius below 1/eta)
            if (mag > 1e250 ||
                (std::isfinite(min_mag) && nidx > 50 &&
                 mag > 1e8 * min_mag && mag > 1e-12)) {
                res.status = Status::divergent_suspected;
                res.value = acc.value();
                res.error_estimate = std::fabs(res.value);
                return res; // inner power series itself diverges
            }
            tiny_streak =
                (mag <= 1e-17 * (1.0 + std::fabs(acc.value()))) ? tiny_streak + 1
                                                                : 0;
            if (tiny_streak >= 5) {
                summed = true;
                break;
            }
        }
        if (!summed) {
            res.status = Status::max_effort;
            res.value = acc.value();
            res.error_estimate = std::fabs(res.value);
            return res;
        }
        p.push_back(acc.value());
        if (j >= 2 && std::fabs(p[j]) > 1.9 * std::fabs(p[j - 1]) &&
            std::fabs(p[j - 1]) > 1.9 * std::fabs(p[j - 2]) &&
            std::fabs(p[j]) > 1e3) {
            res.status = Status::divergent_suspected;
            res.value = p[j];
            res.error_estimate = std::fabs(p[j]);
            return res;
        }
    }
    // Richardson in (1 - eta), halving steps: eliminate eps^m per level.
    std::vector<double> r = p;
    double best = r.back();
    double best_err = std::numeric_limits<double>::infinity();
    for (int m = 1; m < (int)r.size(); ++m) {
        double scale = std::ldexp(1.0, m); // 2^m
        for (size_t j = 0; j + m < r.size(); ++j)
            r[j] = (scale * r[j + 1] - r[j]) / (scale - 1.0);
        double err = std::fabs(r[0] - best);
        if (err < best_err) {
            best_err = err;
            best = r[0];
        }
    }
    res.value = best;
    res.error_estimate = best_err;
    res.status = best_err <= std::max(tol, 1e-14 * std::fabs(best))
                     ? Status::converged
                     : Status::max_effort;
    return res;
}

double bessel_zero(double alpha, int k) {
    double mu = 4.0 * alpha * alpha;
    double beta = ((double)k + 0.5 * alpha - 0.25) * kPi;
    double b8 = 8.0 * beta;
    double x = beta - (mu - 1.0) / b8 -
               4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8) -
               32.0 * (mu - 1.0) *
                   (83.0 * mu * mu - 982.0 * mu + 3779.0) /
                   (15.0 * b8 * b8 * b8 * b8 * b8);
    for (int it = 0; it < 2; ++it) {
        double j = specfun::bessel_j(alpha, x).value;
        double jp = -specfun::bessel_j(alpha + 1.0, x).value +
                    (alpha / x) * j;
        x -= j / jp;
    }
    return x;
}

} // namespace rmt::oracle
