#include <doctest.h>

#include <cmath>
#include <random>

#include "ruledricci/jet.hpp"
#include "support/fd.hpp"

using rr::Jet3;

namespace {

// evaluates one transcendental cocktail both as a jet and as a plain
// double function of t
Jet3 cocktail_jet(double t) {
    const Jet3 x = Jet3::variable(t);
    return rr::sin(x * x) + rr::sech(x) * rr::tanh(x) - rr::exp(0.3 * x) / (2.0 + rr::cos(x));
}

double cocktail(double t) {
    return std::sin(t * t) + (1.0 / std::cosh(t)) * std::tanh(t) -
           std::exp(0.3 * t) / (2.0 + std::cos(t));
}

}  // namespace

TEST_CASE("jet arithmetic matches finite differences of the value") {
    for (const double t : {-1.7, -0.4, 0.0, 0.8, 2.3}) {
        const Jet3 j = cocktail_jet(t);
        CHECK(j.d0 == doctest::Approx(cocktail(t)).epsilon(1e-14));
        CHECK(fd::close(j.d1, fd::d1(cocktail, t), 1e-8));
        CHECK(fd::close(j.d2, fd::d2(cocktail, t), 1e-7));
        CHECK(fd::close(j.d3, fd::d3(cocktail, t), 1e-6));
    }
}

TEST_CASE("second-order FD agreement shrinks like h^2") {
    // |jet.d1 - central(h)| <= C h^2: the ratio between h and h/2 is ~4
    const double t = 0.9;
    const Jet3 j = cocktail_jet(t);
    const double e1 = std::abs(j.d1 - fd::d1_central(cocktail, t, 1e-2));
    const double e2 = std::abs(j.d1 - fd::d1_central(cocktail, t, 5e-3));
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
    const double s1 = std::abs(j.d2 - fd::d2_central(cocktail, t, 1e-2));
    const double s2 = std::abs(j.d2 - fd::d2_central(cocktail, t, 5e-3));
    CHECK(s1 / s2 > 3.5);
    CHECK(s1 / s2 < 4.5);
    const double c1 = std::abs(j.d3 - fd::d3_central(cocktail, t, 2e-2));
    const double c2 = std::abs(j.d3 - fd::d3_central(cocktail, t, 1e-2));
    CHECK(c1 / c2 > 3.5);
    CHECK(c1 / c2 < 4.5);
}

TEST_CASE("leibniz rule for products of random cubics") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a0 = coef(rng), a1 = coef(rng), a2 = coef(rng), a3 = coef(rng);
        const double b0 = coef(rng), b1 = coef(rng), b2 = coef(rng), b3 = coef(rng);
        const double t = coef(rng);
        auto fa = [&](double x) { return a0 + x * (a1 + x * (a2 + x * a3)); };
        auto fb = [&](double x) { return b0 + x * (b1 + x * (b2 + x * b3)); };
        const Jet3 x = Jet3::variable(t);
        const Jet3 pa = a0 + x * (a1 + x * (a2 + x * a3));
        const Jet3 pb = b0 + x * (b1 + x * (b2 + x * b3));
        const Jet3 prod = pa * pb;
        // product of cubics is degree 6; exact derivatives by expansion
        auto fp = [&](double x2) { return fa(x2) * fb(x2); };
        CHECK(fd::close(prod.d1, fd::d1(fp, t), 1e-7));
        CHECK(fd::close(prod.d2, fd::d2(fp, t), 1e-6));
        CHECK(fd::close(prod.d3, fd::d3(fp, t), 1e-5));
    }
}

TEST_CASE("integer powers avoid the log route") {
    const Jet3 x = Jet3::variable(-2.0);  // negative base
    const Jet3 p = rr::pow(x, Jet3::constant(3.0));
    CHECK(p.d0 == doctest::Approx(-8.0));
    CHECK(p.d1 == doctest::Approx(12.0));
    CHECK(p.d2 == doctest::Approx(-12.0));
    CHECK(p.d3 == doctest::Approx(6.0));
    const Jet3 inv = rr::pow(x, Jet3::constant(-2.0));
    CHECK(inv.d0 == doctest::Approx(0.25));
}

TEST_CASE("non-integer power of a negative base is a domain error") {
    const Jet3 x = Jet3::variable(-2.0);
    CHECK_THROWS_AS((void)rr::pow(x, Jet3::constant(0.5)), rr::NumericError);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS((void)rr::sqrt(Jet3::variable(-1.0)), rr::NumericError);
    CHECK_THROWS_AS((void)rr::log(Jet3::variable(0.0)), rr::NumericError);
    CHECK_THROWS_AS((void)rr::asin(Jet3::variable(1.5)), rr::NumericError);
    CHECK_THROWS_AS((void)(Jet3::variable(1.0) / Jet3::constant(0.0)), rr::NumericError);
}

TEST_CASE("sech stays finite where 1/cosh would overflow") {
    const Jet3 far = rr::sech(Jet3::variable(750.0));
    CHECK(std::isfinite(far.d0));
    CHECK(far.d0 >= 0.0);
    CHECK(std::isfinite(far.d3));
}
