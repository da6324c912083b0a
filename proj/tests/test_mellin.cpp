#include "rmt/mellin.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace rmt;
using mellin::CfStatus;
using series::CoefficientFn;
using series::SeriesKind;
using series::SeriesSpec;

namespace {

constexpr double kPi = std::numbers::pi;

CoefficientFn one() {
    return {[](double) { return 1.0; }, {}, "1"};
}

CoefficientFn gamma_ratio(double beta) {
    CoefficientFn f;
    f.eval = [beta](double t) {
        return specfun::gamma(beta + t).value / specfun::gamma(beta).value;
    };
    for (int k = 0; k <= 30; ++k)
        f.poles.push_back(-beta - (double)k);
    return f;
}

CoefficientFn bessel_coeff(double alpha) {
    CoefficientFn f;
    f.eval = [alpha](double t) {
        auto g = specfun::gamma(t + alpha + 1.0);
        return g.ok() ? std::pow(2.0, -2.0 * t - alpha) / g.value : 0.0;
    };
    return f;
}

SeriesSpec exp_spec(CoefficientFn phi, double p = 0.0, double q = 1.0) {
    return {std::move(phi), SeriesKind::exp_alternating, p, q, {}};
}

} // namespace

TEST_SUITE("mellin") {

TEST_CASE("rmt_general: basic Gamma value") {
    auto r = mellin::rmt_general(exp_spec(one()), 3.0);
    REQUIRE(r.ok());
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_FALSE(r.trace.empty());
}

TEST_CASE("rmt_general: Bessel argument-power family") {
    // phi(n) = 2^(-2n-alpha)/Gamma(n+alpha+1), q = 2m, p = alpha m
    double alpha = 1.0, m = 1.0;
    auto r = mellin::rmt_general(
        exp_spec(bessel_coeff(alpha), alpha * m, 2.0 * m), 0.5);
    REQUIRE(r.ok());
    CHECK(r.value == doctest::Approx(0.95597759497224999073).epsilon(1e-13));
}

TEST_CASE("rmt_general: guards") {
    SeriesSpec plain{one(), SeriesKind::plain_alternating, 0.0, 1.0, {}};
    CHECK(mellin::rmt_general(plain, 1.0).status == CfStatus::inapplicable);
    // gamma pole at u = 0
    CHECK(mellin::rmt_general(exp_spec(one()), 0.0).status == CfStatus::pole);
    // phi pole at -u
    auto r = mellin::rmt_general(exp_spec(gamma_ratio(1.0)), 1.0);
    CHECK(r.status == CfStatus::pole); // phi singular at -1
}

TEST_CASE("rmt_general: trace reconstructs the value factor-by-factor") {
    auto spec = exp_spec(gamma_ratio(2.5));
    double s = 0.8;
    auto r = mellin::rmt_general(spec, s);
    REQUIRE(r.ok());
    double manual =
        (1.0 / spec.q) * (specfun::gamma(s).value * spec.phi.eval(-s));
    CHECK(r.value == manual); // identical arithmetic, bitwise equal
}

TEST_CASE("rmt_plain_general: Beta-type and Glaisher cases") {
    // psi identically 1: int x^(s-1)/(1+x) = pi/sin(pi s)
    SeriesSpec plain{one(), SeriesKind::plain_alternating, 0.0, 1.0, {}};
    auto r = mellin::rmt_plain_general(plain, 0.5);
    REQUIRE(r.ok());
    CHECK(r.value == doctest::Approx(kPi).epsilon(1e-13));

    // psi(n) = 1/n!, q = 2, s = 1: sqrt(pi)/2 (e^{-x^2} case)
    CoefficientFn invfact;
    invfact.eval = [](double t) {
        auto g = specfun::gamma(1.0 + t);
        return g.ok() ? 1.0 / g.value : 0.0;
    };
    SeriesSpec gauss{invfact, SeriesKind::plain_alternating, 0.0, 2.0, {}};
    auto g = mellin::rmt_plain_general(gauss, 1.0);
    REQUIRE(g.ok());
    CHECK(g.value == doctest::Approx(0.88622692545275801365).epsilon(1e-13));

    // u integer means a sin pole
    CHECK(mellin::rmt_plain_general(plain, 1.0).status == CfStatus::pole);
    CHECK(mellin::rmt_plain_general(exp_spec(one()), 1.0).status ==
          CfStatus::inapplicable);
}

TEST_CASE("reflection bridge: plain rule equals exponential rule") {
    // the same f has plain coefficients psi and exponential coefficients
    // phi(n) = psi(n) Gamma(n+1); equality of the two rules numerically
    // exercises Gamma(s)Gamma(1-s) = pi/sin(pi s)
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> sdist(0.05, 0.95);
    for (auto beta : {1.0, 1.7, 2.9}) {
        CoefficientFn psi = gamma_ratio(beta);
        CoefficientFn phi;
        phi.eval = [beta](double t) {
            return specfun::gamma(beta + t).value / specfun::gamma(beta).value *
                   specfun::gamma(t + 1.0).value;
        };
        for (int k = 0; k <= 30; ++k) {
            phi.poles.push_back(-beta - (double)k);
            phi.poles.push_back(-1.0 - (double)k);
        }
        SeriesSpec pl{psi, SeriesKind::plain_alternating, 0.0, 1.0, {}};
        SeriesSpec ex = exp_spec(phi);
        for (int i = 0; i < 7; ++i) {
            double s = sdist(rng);
            auto a = mellin::rmt_plain_general(pl, s);
            auto b = mellin::rmt_general(ex, s);
            REQUIRE(a.ok());
            REQUIRE(b.ok());
            CHECK(a.value == doctest::Approx(b.value).epsilon(1e-11));
        }
    }
}

TEST_CASE("rmt_zeta: values and guards") {
    auto r2 = mellin::rmt_zeta(exp_spec(one()), 2.0);
    REQUIRE(r2.ok());
    CHECK(r2.value == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-12));
    auto r4 = mellin::rmt_zeta(exp_spec(one()), 4.0);
    CHECK(r4.value ==
          doctest::Approx(6.4939394022668291491).epsilon(1e-12)); // pi^4/15
    CHECK(mellin::rmt_zeta(exp_spec(one()), 1.0).status ==
          CfStatus::domain_error);
    CHECK(mellin::rmt_zeta(exp_spec(one(), 0.0, 2.0), 2.0).status ==
          CfStatus::inapplicable);
}

TEST_CASE("rmt_log: m = 0 delegates") {
    auto a = mellin::rmt_log(exp_spec(one()), 2.3, 0);
    auto b = mellin::rmt_general(exp_spec(one()), 2.3);
    CHECK(a.value == b.value);
}

TEST_CASE("rmt_log: m = 2 matches Gamma''") {
    // int x^(s-1) ln^2 x e^-x = Gamma(s)(psi0(s)^2 + psi1(s))
    for (double s : {1.0, 2.5}) {
        auto r = mellin::rmt_log(exp_spec(one()), s, 2);
        REQUIRE(r.ok());
        double want = specfun::gamma(s).value *
                      (std::pow(specfun::digamma(s).value, 2) +
                       specfun::trigamma(s).value);
        CHECK(r.value == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("rmt_log: pi^3 evaluation") {
    auto r = mellin::rmt_log(exp_spec(gamma_ratio(1.0)), 0.5, 2);
    REQUIRE(r.ok());
    CHECK(r.value == doctest::Approx(kPi * kPi * kPi).epsilon(1e-9));
}

TEST_CASE("rmt_log: m = 1 analytic form for the binomial-power family") {
    // Gamma(s/a)Gamma(b - s/a)/(a^2 Gamma(b)) [psi0(s/a) - psi0(b - s/a)]
    for (auto [alpha, beta, s] :
         {std::tuple{1.0, 2.0, 0.5}, {2.0, 1.5, 1.1}, {1.3, 2.2, 0.9}}) {
        auto r = mellin::rmt_log(
            SeriesSpec{gamma_ratio(beta), SeriesKind::exp_alternating, 0.0,
                       alpha, {}},
            s, 1);
        REQUIRE(r.ok());
        double u = s / alpha;
        double want = specfun::gamma(u).value *
                      specfun::gamma(beta - u).value /
                      (alpha * alpha * specfun::gamma(beta).value) *
                      (specfun::digamma(u).value -
                       specfun::digamma(beta - u).value);
        CHECK(r.value == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("rmt_log: analytic m = 1 agrees with the difference route") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ad(0.8, 2.5), bd(0.8, 3.0),
        ud(0.2, 0.8);
    for (int i = 0; i < 20; ++i) {
        double alpha = ad(rng), beta = bd(rng);
        double u = 0.15 + ud(rng) * (beta - 0.3); // keep off both poles
        double s = alpha * u;
        SeriesSpec spec{gamma_ratio(beta), SeriesKind::exp_alternating, 0.0,
                        alpha, {}};
        auto analytic = mellin::rmt_log(spec, s, 1);
        auto fd = mellin::rmt_log_fd(spec, s, 1);
        REQUIRE(analytic.ok());
        REQUIRE(fd.ok());
        double scale = std::max(1.0, std::fabs(analytic.value));
        CHECK(std::fabs(analytic.value - fd.value) <= 1e-6 * scale);
    }
}

TEST_CASE("rmt_log: stencil pole detection") {
    // s = 0.01 puts s - h across the Gamma pole at 0
    auto r = mellin::rmt_log_fd(exp_spec(one()), 0.01, 2);
    CHECK(r.status == CfStatus::stencil_pole);
}

TEST_CASE("rmt_trig: values, guards, and the phase identity") {
    SeriesSpec cosspec{one(), SeriesKind::cos_type, 0.0, 1.0, {}};
    SeriesSpec sinspec{one(), SeriesKind::sin_type, 0.0, 1.0, {}};
    auto c = mellin::rmt_trig(cosspec, 0.5, mellin::TrigParity::cos_parity);
    auto s = mellin::rmt_trig(sinspec, 0.5, mellin::TrigParity::sin_parity);
    REQUIRE(c.ok());
    REQUIRE(s.ok());
    CHECK(c.value == doctest::Approx(1.2533141373155002512).epsilon(1e-13));
    CHECK(s.value == doctest::Approx(1.2533141373155002512).epsilon(1e-13));
    CHECK(mellin::rmt_trig(sinspec, 0.5, mellin::TrigParity::cos_parity)
              .status == CfStatus::inapplicable);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> sd(0.05, 0.95);
    for (int i = 0; i < 25; ++i) {
        double sv = sd(rng);
        double cv = mellin::rmt_trig(cosspec, sv, mellin::TrigParity::cos_parity)
                        .value;
        double svv =
            mellin::rmt_trig(sinspec, sv, mellin::TrigParity::sin_parity).value;
        double g = specfun::gamma(sv).value; // phi = 1
        CHECK(cv * cv + svv * svv == doctest::Approx(g * g).epsilon(1e-12));
    }
}

TEST_CASE("gaussian_cos_rmt: convergent, single-term, and divergent") {
    SeriesSpec cosspec{one(), SeriesKind::cos_type, 0.0, 1.0, {}};
    auto r = mellin::gaussian_cos_rmt(cosspec);
    REQUIRE(r.ok());
    CHECK(r.value == doctest::Approx(0.69019422352157148739).epsilon(1e-13));

    // phi(2n) nonzero only at n = 0: value is sqrt(pi)/2 exactly
    CoefficientFn delta;
    delta.eval = [](double t) { return std::fabs(t) < 0.5 ? 1.0 : 0.0; };
    SeriesSpec dspec{delta, SeriesKind::cos_type, 0.0, 1.0, {}};
    CHECK(mellin::gaussian_cos_rmt(dspec).value ==
          doctest::Approx(0.88622692545275801365).epsilon(1e-15));

    // phi(2n) = (2n)!: the coefficient series has zero radius
    CoefficientFn fact;
    fact.eval = [](double t) { return specfun::gamma(1.0 + t).value; };
    SeriesSpec fspec{fact, SeriesKind::cos_type, 0.0, 1.0, {}};
    auto bad = mellin::gaussian_cos_rmt(fspec);
    CHECK(bad.status == CfStatus::non_convergent);
    bool mentions_abel = false;
    for (const auto& t : bad.trace)
        mentions_abel |= t.find("Abel") != std::string::npos;
    CHECK(mentions_abel);

    CHECK(mellin::gaussian_cos_rmt(exp_spec(one())).status ==
          CfStatus::inapplicable);
}

TEST_CASE("rmt_double: values and guards") {
    SeriesSpec cosspec{one(), SeriesKind::cos_type, 0.0, 1.0, {}};
    auto r1 = mellin::rmt_double(cosspec, 1.0);
    REQUIRE(r1.ok());
    CHECK(r1.value == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    auto rh = mellin::rmt_double(cosspec, 0.5);
    CHECK(rh.value == doctest::Approx(4.6474760094009669226).epsilon(1e-13));
    CHECK(mellin::rmt_double(cosspec, 0.0).status == CfStatus::pole);
    CHECK(mellin::rmt_double(exp_spec(one()), 0.5).status ==
          CfStatus::inapplicable);
}

} // TEST_SUITE
