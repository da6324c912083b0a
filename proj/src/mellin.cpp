#include "rmt/mellin.hpp"

#include "rmt/oracle.hpp"
#include "rmt/util.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rmt::mellin {

using series::SeriesKind;
using series::SeriesSpec;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ClosedFormResult fail(std::string rule, CfStatus st, std::string why) {
    ClosedFormResult r;
    r.rule = std::move(rule);
    r.status = st;
    r.value = kNaN;
    r.trace.push_back(std::move(why));
    return r;
}

// phi'(u) by a 4th-order central stencil with one Richardson level;
// h = eps^(1/3) max(1,|u|) per the differentiation contract.
bool phi_prime(const series::CoefficientFn& phi, double u, double* out) {
    double h = std::cbrt(std::numeric_limits<double>::epsilon()) *
               std::max(1.0, std::fabs(u));
    auto d4 = [&](double step, bool* hit_pole) {
        double pts[4] = {u - 2 * step, u - step, u + step, u + 2 * step};
        for (double p : pts)
            if (phi.is_pole(p, 1e-7)) {
                *hit_pole = true;
                return 0.0;
            }
        return (phi.eval(pts[0]) - 8.0 * phi.eval(pts[1]) +
                8.0 * phi.eval(pts[2]) - phi.eval(pts[3])) /
               (12.0 * step);
    };
    bool hit = false;
    double dh = d4(h, &hit);
    double dh2 = d4(0.5 * h, &hit);
    if (hit)
        return false;
    *out = (16.0 * dh2 - dh) / 15.0; // one Richardson level
    return true;
}

// m-th derivative of F at s by central differences on a Richardson
// table; nodes at s + (m/2 - k)h. Returns false if any node fails.
bool central_derivative(const std::function<bool(double, double*)>& F,
                        double s, int m, double* out) {
    double h0 = 0.02 * std::max(1.0, std::fabs(s));
    const int levels = 3;
    double est[levels];
    for (int L = 0; L < levels; ++L) {
        double h = h0 * std::ldexp(1.0, -L);
        double acc = 0.0;
        double binom = 1.0;
        for (int k = 0; k <= m; ++k) {
            double node = s + (0.5 * m - k) * h;
            double fv;
            if (!F(node, &fv))
                return false;
            acc += ((k % 2) ? -binom : binom) * fv;
            binom *= (double)(m - k) / (double)(k + 1);
        }
        est[L] = acc / std::pow(h, m);
    }
    // Richardson in h^2, then pick the most stable entry.
    double best = est[levels - 1];
    double best_diff = std::fabs(est[levels - 1] - est[levels - 2]);
    double table[levels];
    for (int i = 0; i < levels; ++i)
        table[i] = est[i];
    for (int o = 1; o < levels; ++o) {
        double w = std::ldexp(1.0, 2 * o); // 4^o
        for (int i = 0; i + o < levels; ++i) {
            double prev = table[i];
            table[i] = (w * table[i + 1] - table[i]) / (w - 1.0);
            double diff = std::fabs(table[i] - prev);
            if (diff <= best_diff) {
                best_diff = diff;
                best = table[i];
            }
        }
    }
    *out = best;
    return true;
}

} // namespace

ClosedFormResult rmt_general(const SeriesSpec& spec, double s) {
    const char* rule = "rmt_general";
    if (spec.kind != SeriesKind::exp_alternating)
        return fail(rule, CfStatus::inapplicable,
                    "requires an exponential-type series");
    double u = (spec.p + s) / spec.q;
    specfun::SpecResult g = specfun::gamma(u);
    if (!g.ok())
        return fail(rule, CfStatus::pole, "Gamma pole at u = " + fmt17(u));
    if (spec.phi.is_pole(-u))
        return fail(rule, CfStatus::pole, "phi singular at " + fmt17(-u));
    double ph = spec.phi.eval(-u);
    ClosedFormResult r;
    r.rule = rule;
    r.value = (1.0 / spec.q) * (g.value * ph);
    r.trace = {"u = (p+s)/q = " + fmt17(u),
               "Gamma(u) = " + fmt17(g.value),
               "phi(-u) = " + fmt17(ph),
               "value = Gamma(u) phi(-u)/q = " + fmt17(r.value)};
    r.validity_notes = {"holds on the Mellin strip of f; oracle checks"};
    return r;
}

ClosedFormResult rmt_plain_general(const SeriesSpec& spec, double s) {
    const char* rule = "rmt_plain_general";
    if (spec.kind != SeriesKind::plain_alternating)
        return fail(rule, CfStatus::inapplicable,
                    "requires a plain alternating series");
    double u = (spec.p + s) / spec.q;
    if (near_integer(u, 1e-12))
        return fail(rule, CfStatus::pole,
                    "sin(pi u) vanishes at u = " + fmt17(u));
    if (spec.phi.is_pole(-u))
        return fail(rule, CfStatus::pole, "phi singular at " + fmt17(-u));
    double sp = specfun::sin_pi(u);
    double ph = spec.phi.eval(-u);
    ClosedFormResult r;
    r.rule = rule;
    r.value = (1.0 / spec.q) * (kPi / sp) * ph;
    r.trace = {"u = (p+s)/q = " + fmt17(u),
               "pi/sin(pi u) = " + fmt17(kPi / sp),
               "phi(-u) = " + fmt17(ph),
               "value = pi phi(-u)/(q sin(pi u)) = " + fmt17(r.value)};
    r.validity_notes = {"0 < u < 1 for absolutely convergent integrands"};
    return r;
}

ClosedFormResult rmt_zeta(const SeriesSpec& spec, double s) {
    const char* rule = "rmt_zeta";
    if (spec.kind != SeriesKind::exp_alternating || spec.p != 0.0 ||
        spec.q != 1.0)
        return fail(rule, CfStatus::inapplicable,
                    "requires an exponential-type series with p=0, q=1");
    if (s <= 1.0)
        return fail(rule, CfStatus::domain_error,
                    "zeta analog needs s > 1 (pole of zeta at s = 1)");
    if (spec.phi.is_pole(-s))
        return fail(rule, CfStatus::pole, "phi singular at " + fmt17(-s));
    specfun::SpecResult z = specfun::zeta(s);
    specfun::SpecResult g = specfun::gamma(s);
    double ph = spec.phi.eval(-s);
    ClosedFormResult r;
    r.rule = rule;
    r.value = z.value * g.value * ph;
    r.trace = {"zeta(s) = " + fmt17(z.value),
               "Gamma(s) = " + fmt17(g.value),
               "phi(-s) = " + fmt17(ph),
               "value = zeta Gamma phi = " + fmt17(r.value)};
    r.validity_notes = {"integrand is Z(x) = sum_{n>=1} f(n x)"};
    return r;
}

ClosedFormResult rmt_log(const SeriesSpec& spec, double s, int m) {
    const char* rule = "rmt_log";
    if (spec.kind != SeriesKind::exp_alternating)
        return fail(rule, CfStatus::inapplicable,
                    "requires an exponential-type series");
    if (m < 0)
        return fail(rule, CfStatus::domain_error, "m must be >= 0");
    if (m == 0) {
        ClosedFormResult r = rmt_general(spec, s);
        r.rule = rule;
        return r;
    }
    if (m == 1) {
        double u = (spec.p + s) / spec.q;
        specfun::SpecResult g = specfun::gamma(u);
        specfun::SpecResult dg = specfun::digamma(u);
        if (!g.ok() || !dg.ok())
            return fail(rule, CfStatus::pole,
                        "Gamma/digamma pole at u = " + fmt17(u));
        if (spec.phi.is_pole(-u))
            return fail(rule, CfStatus::pole, "phi singular at " + fmt17(-u));
        double ph = spec.phi.eval(-u);
        double dph;
        if (!phi_prime(spec.phi, -u, &dph))
            return fail(rule, CfStatus::stencil_pole,
                        "phi' stencil hits a singularity near " + fmt17(-u));
        ClosedFormResult r;
        r.rule = rule;
        r.value = (1.0 / (spec.q * spec.q)) * g.value *
                  (dg.value * ph - dph);
        r.trace = {"u = (p+s)/q = " + fmt17(u),
                   "Gamma(u) = " + fmt17(g.value),
                   "psi0(u) = " + fmt17(dg.value),
                   "phi(-u) = " + fmt17(ph),
                   "phi'(-u) = " + fmt17(dph) + " (central differences)",
                   "value = Gamma(u)[psi0(u) phi(-u) - phi'(-u)]/q^2 = " +
                       fmt17(r.value)};
        return r;
    }
    ClosedFormResult r = rmt_log_fd(spec, s, m);
    r.rule = rule;
    return r;
}

ClosedFormResult rmt_log_fd(const SeriesSpec& spec, double s, int m) {
    const char* rule = "rmt_log_fd";
    if (spec.kind != SeriesKind::exp_alternating)
        return fail(rule, CfStatus::inapplicable,
                    "requires an exponential-type series");
    if (m == 0)
        return rmt_general(spec, s);
    auto F = [&](double sv, double* out) {
        ClosedFormResult base = rmt_general(spec, sv);
        if (!base.ok())
            return false;
        *out = base.value;
        return true;
    };
    double d;
    if (!central_derivative(F, s, m, &d))
        return fail(rule, CfStatus::stencil_pole,
                    "closed form has a pole inside the stencil around s = " +
                        fmt17(s));
    ClosedFormResult r;
    r.rule = rule;
    r.value = d;
    r.trace = {"d^" + std::to_string(m) +
                   "/ds^m of the m=0 closed form by Richardson-extrapolated "
                   "central differences",
               "value = " + fmt17(d)};
    return r;
}

ClosedFormResult rmt_trig(const SeriesSpec& spec, double s,
                          TrigParity parity) {
    const char* rule = "rmt_trig";
    bool want_cos = parity == TrigParity::cos_parity;
    if ((want_cos && spec.kind != SeriesKind::cos_type) ||
        (!want_cos && spec.kind != SeriesKind::sin_type))
        return fail(rule, CfStatus::inapplicable,
                    want_cos ? "cos parity requires a cos-type series"
                             : "sin parity requires a sin-type series");
    specfun::SpecResult g = specfun::gamma(s);
    if (!g.ok())
        return fail(rule, CfStatus::pole, "Gamma pole at s = " + fmt17(s));
    if (spec.phi.is_pole(-s))
        return fail(rule, CfStatus::pole, "phi singular at " + fmt17(-s));
    double tr = want_cos ? specfun::cos_pi(0.5 * s) : specfun::sin_pi(0.5 * s);
    double ph = spec.phi.eval(-s);
    ClosedFormResult r;
    r.rule = rule;
    r.value = g.value * tr * ph;
    r.trace = {"Gamma(s) = " + fmt17(g.value),
               std::string(want_cos ? "cos" : "sin") +
                   "(pi s/2) = " + fmt17(tr),
               "phi(-s) = " + fmt17(ph),
               "value = Gamma(s) " + std::string(want_cos ? "cos" : "sin") +
                   "(pi s/2) phi(-s) = " + fmt17(r.value)};
    r.validity_notes = {"0 < s < 1 when f is merely bounded"};
    return r;
}

ClosedFormResult gaussian_cos_rmt(const SeriesSpec& spec) {
    const char* rule = "gaussian_cos_rmt";
    if (spec.kind != SeriesKind::cos_type)
        return fail(rule, CfStatus::inapplicable,
                    "requires a cos-type series");
    // sum (-1)^n phi(2n) / (4^n n!) with the eval_series truncation
    // contract; growing terms fall back to Abel summation.
    double sum = 0.0;
    double base = 1.0; // 1/(4^n n!)
    double prev = std::numeric_limits<double>::infinity();
    int small_streak = 0, grow_streak = 0;
    bool decayed = false;
    int n = 0;
    for (; n < 10000; ++n) {
        double term = ((n % 2) ? -1.0 : 1.0) * spec.phi.eval(2.0 * n) * base;
        sum += term;
        double mag = std::fabs(term);
        small_streak =
            (mag < 1e-16 * std::max(1.0, std::fabs(sum))) ? small_streak + 1 : 0;
        grow_streak = (mag > prev) ? grow_streak + 1 : 0;
        prev = mag;
        if (small_streak >= 3) {
            decayed = true;
            break;
        }
        if (grow_streak >= 10)
            break;
        base /= 4.0 * (n + 1.0);
    }
    double pref = 0.5 * std::sqrt(kPi);
    ClosedFormResult r;
    r.rule = rule;
    if (decayed) {
        r.value = pref * sum;
        r.trace = {"sum (-1)^n phi(2n)/(4^n n!) = " + fmt17(sum) + " (" +
                       std::to_string(n + 1) + " terms)",
                   "value = (sqrt(pi)/2) sum = " + fmt17(r.value)};
        return r;
    }
    // terms grow: try Abel summation of the same series
    oracle::OracleResult ab = oracle::abel_sum(
        [&spec](long k) {
            double b = 1.0;
            for (long j = 1; j <= k; ++j)
                b /= 4.0 * (double)j;
            return ((k % 2) ? -1.0 : 1.0) * spec.phi.eval(2.0 * (double)k) * b;
        },
        1e-10);
    if (ab.converged()) {
        r.value = pref * ab.value;
        r.trace = {"series terms grow; Abel summation applied",
                   "Abel value of the coefficient sum = " + fmt17(ab.value),
                   "value = (sqrt(pi)/2) sum = " + fmt17(r.value)};
        return r;
    }
    r = fail(rule, CfStatus::non_convergent,
             "coefficient series does not decay");
    r.trace.push_back("Abel fallback did not stabilize either");
    return r;
}

ClosedFormResult rmt_double(const SeriesSpec& spec, double s) {
    const char* rule = "rmt_double";
    if (spec.kind != SeriesKind::cos_type)
        return fail(rule, CfStatus::inapplicable,
                    "requires a cos-type series");
    specfun::SpecResult g = specfun::gamma(0.5 * s);
    if (!g.ok())
        return fail(rule, CfStatus::pole,
                    "Gamma pole at s/2 = " + fmt17(0.5 * s));
    if (s <= 0.0)
        return fail(rule, CfStatus::domain_error, "requires s > 0");
    if (spec.phi.is_pole(-s))
        return fail(rule, CfStatus::pole, "phi singular at " + fmt17(-s));
    double ph = spec.phi.eval(-s);
    ClosedFormResult r;
    r.rule = rule;
    r.value = g.value * g.value * ph / std::pow(2.0, 2.0 - s);
    r.trace = {"Gamma(s/2) = " + fmt17(g.value),
               "phi(-s) = " + fmt17(ph),
               "value = Gamma(s/2)^2 phi(-s)/2^(2-s) = " + fmt17(r.value)};
    r.validity_notes = {"0 < s for bounded cos-type f"};
    return r;
}

} // namespace rmt::mellin
