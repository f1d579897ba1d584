#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dmim/quadrature.hpp"
#include "dmim/rng.hpp"

using dmim::quad::Interval;
using dmim::quad::Options;
using dmim::quad::QuadratureResult;
using dmim::quad::integrate;

namespace {

double normal_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

} // namespace

TEST_CASE("constant integrand over the unit interval") {
    const auto r = integrate([](double) { return 1.0; }, {0.0, 1.0});
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.subdivisions >= 1);
}

TEST_CASE("normalized exponential density over the half line") {
    const auto r = integrate([](double x) { return std::exp(-x); }, Interval::at_least(0.0));
    CHECK(std::abs(r.value - 1.0) < 1e-11);
}

TEST_CASE("odd integrand over a symmetric infinite domain") {
    const auto r = integrate([](double x) { return x * normal_pdf(x, 0.0, 1.0); },
                             Interval::whole_line());
    CHECK(std::abs(r.value) < 1e-12);
}

TEST_CASE("polynomials are integrated exactly") {
    const auto r1 = integrate([](double x) { return x * x; }, {0.0, 3.0});
    CHECK(r1.value == doctest::Approx(9.0).epsilon(1e-13));
    const auto r2 = integrate([](double x) { return 2.0 * x + 3.0; }, {-1.0, 4.0});
    CHECK(r2.value == doctest::Approx(30.0).epsilon(1e-13));
}

TEST_CASE("family densities integrate to one over their support") {
    for (double width : {0.1, 1.0, 10.0, 100.0}) {
        const double inv = 1.0 / width;
        const auto r = integrate([inv](double) { return inv; }, {-0.25 * width, 0.75 * width});
        CHECK(std::abs(r.value - 1.0) < 1e-10);
    }
    for (double sigma : {0.1, 1.0, 10.0, 50.0}) {
        const auto r = integrate([sigma](double x) { return normal_pdf(x, 1.5, sigma); },
                                 Interval::whole_line());
        CHECK(std::abs(r.value - 1.0) < 1e-10);
    }
    for (double lambda : {0.01, 1.0, 100.0}) {
        const auto r = integrate(
            [lambda](double x) { return lambda * std::exp(-lambda * x); },
            Interval::at_least(0.0));
        CHECK(std::abs(r.value - 1.0) < 1e-10);
    }
}

TEST_CASE("linearity on random polynomial-times-gaussian pairs") {
    dmim::mc::SplitMix64 rng(2024);
    auto coin = [&rng] { return 2.0 * rng.next_unit() - 1.0; };
    for (int rep = 0; rep < 40; ++rep) {
        const double c0 = coin(), c1 = coin(), c2 = coin(), c3 = coin();
        const double m = 3.0 * coin(), s = 0.5 + rng.next_unit();
        auto f = [=](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
        auto g = [=](double x) { return std::exp(-(x - m) * (x - m) / (2.0 * s * s)); };
        const double a = 5.0 * coin(), b = 5.0 * coin();

        const Interval dom{-6.0, 6.0};
        const double lhs = integrate([&](double x) { return a * f(x) + b * g(x); }, dom).value;
        const double rhs = a * integrate([&](double x) { return f(x); }, dom).value +
                           b * integrate([&](double x) { return g(x); }, dom).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("halving abs_tol never moves the result away from the truth") {
    struct Case {
        dmim::quad::Integrand f;
        Interval domain;
        double truth;
    };
    // unit-mass integrands, as in the measure computations this engine backs
    const double peak = 1e-4;
    const double lorentz_mass =
        (std::atan(0.7 / std::sqrt(peak)) + std::atan(0.3 / std::sqrt(peak))) /
        std::sqrt(peak);
    std::vector<Case> battery;
    battery.push_back(
        {[peak, lorentz_mass](double x) {
             return 1.0 / (lorentz_mass * (peak + (x - 0.3) * (x - 0.3)));
         },
         {0.0, 1.0},
         1.0});
    battery.push_back(
        {[](double x) { return normal_pdf(x, 0.25, 0.01); }, {-1.0, 1.0}, 1.0});

    for (const auto& c : battery) {
        double prev_err = std::numeric_limits<double>::infinity();
        for (double tol = 1e-4; tol > 1e-12; tol *= 0.5) {
            Options opts;
            opts.abs_tol = tol;
            opts.rel_tol = 1e-16; // absolute tolerance drives the refinement
            const double err = std::abs(integrate(c.f, c.domain, opts).value - c.truth);
            CHECK(err <= prev_err + 5e-15);
            prev_err = err;
        }
    }
}

TEST_CASE("reported error estimate meets the requested tolerance") {
    Options opts;
    opts.abs_tol = 1e-9;
    opts.rel_tol = 1e-9;
    const auto r = integrate([](double x) { return normal_pdf(x, 0.0, 0.2); },
                             Interval::whole_line(), opts);
    CHECK(r.error_estimate <= std::max(opts.abs_tol, opts.rel_tol * std::abs(r.value)));
    CHECK(std::abs(r.value - 1.0) < 1e-9);
}

TEST_CASE("semi-infinite and mirrored domains") {
    const auto r1 = integrate([](double x) { return x * std::exp(-x); }, Interval::at_least(0.0));
    CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-11));
    const auto r2 = integrate([](double x) { return std::exp(x); }, Interval::at_most(0.0));
    CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("integrable endpoint singularity") {
    const auto r = integrate([](double x) { return 0.5 / std::sqrt(x); }, {0.0, 1.0},
                             1e-9, 1e-9);
    CHECK(std::abs(r.value - 1.0) < 1e-8);
}

TEST_CASE("invalid domains are rejected") {
    auto one = [](double) { return 1.0; };
    CHECK_THROWS_AS((void)integrate(one, {1.0, 1.0}), dmim::InvalidDomain);
    CHECK_THROWS_AS((void)integrate(one, {2.0, -1.0}), dmim::InvalidDomain);
    CHECK_THROWS_AS((void)integrate(one, {std::nan(""), 1.0}), dmim::InvalidDomain);
}

TEST_CASE("non-finite integrand values are reported") {
    auto f = [](double x) { return x > 0.4 && x < 0.6 ? std::nan("") : 1.0; };
    CHECK_THROWS_AS((void)integrate(f, {0.0, 1.0}), dmim::NonFinite);
}

TEST_CASE("subdivision budget exhaustion raises NonConvergent") {
    Options opts;
    opts.abs_tol = 1e-13;
    opts.rel_tol = 1e-13;
    opts.max_subdivisions = 3;
    auto wiggle = [](double x) { return std::sin(1.0 / x); };
    CHECK_THROWS_AS((void)integrate(wiggle, {1e-3, 1.0}, opts), dmim::NonConvergent);
}
