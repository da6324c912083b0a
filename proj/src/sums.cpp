#include "rmt/sums.hpp"

#include "rmt/oracle.hpp"
#include "rmt/util.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rmt::sums {

using series::CoefficientFn;

double SumVerdict::abs_gap() const { return std::fabs(lhs - rhs); }

namespace {

// Accelerated value of sum_{n>=n0} term(n). Direct summation when the
// terms collapse quickly, Euler transformation otherwise, Levin-u as
// the fallback. Term budget 10^4.
struct AccelOut {
    double value = 0.0;
    int terms = 0;
    SumMethod method = SumMethod::euler;
    bool converged = false;
};

AccelOut accelerate(const std::function<double(long)>& term, long n0,
                    double tol) {
    AccelOut out;

    // direct route: useful when terms decay superlinearly
    CompensatedSum acc;
    int tiny = 0;
    for (long n = n0; n < n0 + 48; ++n) {
        double t = term(n);
        acc.add(t);
        tiny = (std::fabs(t) <= 0.25 * tol * std::max(1.0, std::fabs(acc.value())))
                   ? tiny + 1
                   : 0;
        if (tiny >= 4) {
            out.value = acc.value();
            out.terms = (int)(n - n0 + 1);
            out.method = SumMethod::direct;
            out.converged = true;
            return out;
        }
    }

    std::vector<double> terms;
    for (int n_total : {64, 128, 256, 512, 1024, 2048, 4096, 10000}) {
        terms.resize(n_total);
        for (long i = 0; i < n_total; ++i)
            terms[i] = term(n0 + i);
        oracle::OracleResult eu = oracle::accelerate_alternating(terms, tol);
        if (eu.converged()) {
            out.value = eu.value;
            out.terms = n_total;
            out.method = SumMethod::euler;
            out.converged = true;
            return out;
        }
        oracle::OracleResult lv = oracle::detail::levin_u(terms, tol);
        if (lv.converged()) {
            out.value = lv.value;
            out.terms = n_total;
            out.method = SumMethod::levin;
            out.converged = true;
            return out;
        }
        out.value = eu.value;
        out.terms = n_total;
    }
    return out;
}

// phi'(0) by a 4th-order central stencil.
double derivative_at_zero(const CoefficientFn& phi) {
    double h = 1.2e-3;
    return (phi.eval(-2.0 * h) - 8.0 * phi.eval(-h) + 8.0 * phi.eval(h) -
            phi.eval(2.0 * h)) /
           (12.0 * h);
}

} // namespace

SumVerdict ramanujan_sum(SumKind kind, const CoefficientFn& phi,
                         std::optional<double> phi_prime_at_0, double tol) {
    SumVerdict v;
    std::function<double(long)> term;
    long n0 = 0;
    switch (kind) {
    case SumKind::odd_arctan:
        v.rhs = 0.5 * std::numbers::pi * phi.eval(0.0);
        term = [&phi](long n) {
            double k = 2.0 * (double)n + 1.0;
            double sg = (n % 2) ? -1.0 : 1.0;
            return sg / k * (phi.eval(k) + phi.eval(-k));
        };
        n0 = 0;
        break;
    case SumKind::pm_one:
        v.rhs = phi.eval(0.0);
        term = [&phi](long n) {
            double sg = (n % 2) ? 1.0 : -1.0; // (-1)^(n+1)
            return sg * (phi.eval((double)n) + phi.eval(-(double)n));
        };
        n0 = 1;
        break;
    case SumKind::log_deriv:
    default:
        v.rhs = phi_prime_at_0 ? *phi_prime_at_0 : derivative_at_zero(phi);
        if (!phi_prime_at_0)
            v.notes.push_back("phi'(0) from central differences");
        term = [&phi](long n) {
            double sg = (n % 2) ? 1.0 : -1.0;
            return sg / (double)n * (phi.eval((double)n) - phi.eval(-(double)n));
        };
        n0 = 1;
        break;
    }
    AccelOut a = accelerate(term, n0, tol);
    v.lhs = a.value;
    v.terms_used = a.terms;
    v.method = a.method;
    v.status = a.converged ? SumStatus::ok : SumStatus::non_convergent;
    if (!a.converged)
        v.notes.push_back("acceleration did not stabilize within 10^4 terms");
    return v;
}

SumVerdict general_reciprocal_relation(const CoefficientFn& eta, double C,
                                       const CoefficientFn& phi, double tol) {
    SumVerdict v;
    v.rhs = C * phi.eval(0.0);
    auto term = [&](long k) {
        return eta.eval((double)k) * (phi.eval((double)k) + phi.eval(-(double)k));
    };
    AccelOut a = accelerate(term, 0, tol);
    v.lhs = a.value;
    v.terms_used = a.terms;
    v.method = a.method;
    v.status = a.converged ? SumStatus::ok : SumStatus::non_convergent;
    if (!a.converged)
        v.notes.push_back("acceleration did not stabilize within 10^4 terms");
    return v;
}

std::function<double(double)>
make_reciprocal_h(std::function<double(double)> g, double C) {
    return [g = std::move(g), C](double x) {
        return g(x) - g(1.0 / x) + 0.5 * C;
    };
}

} // namespace rmt::sums
