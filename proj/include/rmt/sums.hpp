#pragma once

#include "rmt/series.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rmt::sums {

enum class SumMethod { euler, levin, direct };
enum class SumStatus { ok, non_convergent };

// Both sides of one sum identity: lhs from accelerated summation, rhs
// from the closed form. The gap is recomputed from its operands.
struct SumVerdict {
    double lhs = 0.0;
    double rhs = 0.0;
    int terms_used = 0;
    SumMethod method = SumMethod::euler;
    SumStatus status = SumStatus::ok;
    std::vector<std::string> notes;
    double abs_gap() const;
};

enum class SumKind {
    odd_arctan, // sum (-1)^n/(2n+1) (phi(2n+1)+phi(-2n-1)) = pi/2 phi(0)
    pm_one,     // sum_{n>=1} (-1)^(n+1) (phi(n)+phi(-n))    = phi(0)
    log_deriv,  // sum_{n>=1} (-1)^(n+1)/n (phi(n)-phi(-n))  = phi'(0)
};

SumVerdict ramanujan_sum(SumKind kind, const series::CoefficientFn& phi,
                         std::optional<double> phi_prime_at_0, double tol);

// sum_{k>=0} eta(k) (phi(k)+phi(-k)) = C phi(0), the functional-equation
// family behind the first two sum identities.
SumVerdict general_reciprocal_relation(const series::CoefficientFn& eta,
                                       double C,
                                       const series::CoefficientFn& phi,
                                       double tol);

// h(x) = g(x) - g(1/x) + C/2 satisfies h(x) + h(1/x) = C for x > 0.
std::function<double(double)>
make_reciprocal_h(std::function<double(double)> g, double C);

} // namespace rmt::sums
