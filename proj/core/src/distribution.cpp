#include "dmim/distribution.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dmim {
namespace {

constexpr double kNormalizationTol = 1e-8;

// Moment integrals get a smaller budget than the default: a divergent moment
// otherwise grinds through the full million-panel allowance before failing.
quad::Options moment_options() {
    quad::Options opts;
    opts.abs_tol = 1e-10;
    opts.rel_tol = 1e-9;
    opts.max_subdivisions = 50000;
    return opts;
}

double normal_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

} // namespace

DistributionSpec DistributionSpec::uniform(double a, double b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidParams("uniform distribution requires finite a < b");
    }
    return DistributionSpec(Uniform{a, b});
}

DistributionSpec DistributionSpec::normal(double mu, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
        throw InvalidParams("normal distribution requires finite mu and sigma > 0");
    }
    return DistributionSpec(Normal{mu, sigma});
}

DistributionSpec DistributionSpec::exponential(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidParams("exponential distribution requires lambda > 0");
    }
    return DistributionSpec(Exponential{lambda});
}

DistributionSpec DistributionSpec::custom(std::function<double(double)> density,
                                          quad::Interval support,
                                          std::optional<double> mean,
                                          std::optional<double> variance) {
    if (!density) throw InvalidParams("custom distribution requires a density callback");
    if (std::isnan(support.lower) || std::isnan(support.upper) ||
        !(support.lower < support.upper)) {
        throw InvalidParams("custom support requires lower < upper");
    }
    if (variance && !(*variance > 0.0)) {
        throw InvalidParams("supplied variance must be positive");
    }
    const double mass = quad::integrate(density, support, 1e-10, 1e-10).value;
    if (std::abs(mass - 1.0) > kNormalizationTol) {
        throw InvalidParams("custom density integrates to " + std::to_string(mass) +
                            ", expected 1 within 1e-8");
    }
    return DistributionSpec(Custom{std::move(density), support, mean, variance});
}

Family DistributionSpec::family() const {
    switch (params_.index()) {
        case 0: return Family::Uniform;
        case 1: return Family::Normal;
        case 2: return Family::Exponential;
        default: return Family::Custom;
    }
}

quad::Interval DistributionSpec::support() const {
    return std::visit(
        [](const auto& p) -> quad::Interval {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return {p.a, p.b};
            } else if constexpr (std::is_same_v<T, Normal>) {
                return quad::Interval::whole_line();
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return quad::Interval::at_least(0.0);
            } else {
                return p.support;
            }
        },
        params_);
}

double DistributionSpec::pdf(double x) const {
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return (x >= p.a && x <= p.b) ? 1.0 / (p.b - p.a) : 0.0;
            } else if constexpr (std::is_same_v<T, Normal>) {
                return normal_pdf(x, p.mu, p.sigma);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return x >= 0.0 ? p.lambda * std::exp(-p.lambda * x) : 0.0;
            } else {
                if (x < p.support.lower || x > p.support.upper) return 0.0;
                return p.density(x);
            }
        },
        params_);
}

double DistributionSpec::cdf(double x) const {
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                if (x <= p.a) return 0.0;
                if (x >= p.b) return 1.0;
                return (x - p.a) / (p.b - p.a);
            } else if constexpr (std::is_same_v<T, Normal>) {
                return 0.5 * std::erfc(-(x - p.mu) / (p.sigma * std::numbers::sqrt2));
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return x <= 0.0 ? 0.0 : -std::expm1(-p.lambda * x);
            } else {
                throw UnsupportedFamily("no closed-form CDF for a custom density");
            }
        },
        params_);
}

double DistributionSpec::mean() const {
    return std::visit(
        [this](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return 0.5 * (p.a + p.b);
            } else if constexpr (std::is_same_v<T, Normal>) {
                return p.mu;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return 1.0 / p.lambda;
            } else {
                if (p.mean) return *p.mean;
                try {
                    auto m1 = [&p](double x) { return x * p.density(x); };
                    return quad::integrate(m1, p.support, moment_options()).value;
                } catch (const Error&) {
                    throw MissingVariance("custom density first moment did not converge");
                }
            }
        },
        params_);
}

double DistributionSpec::variance() const {
    return std::visit(
        [this](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                const double w = p.b - p.a;
                return w * w / 12.0;
            } else if constexpr (std::is_same_v<T, Normal>) {
                return p.sigma * p.sigma;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return 1.0 / (p.lambda * p.lambda);
            } else {
                if (p.variance) return *p.variance;
                const double m1 = mean();
                auto centered = [&p, m1](double x) {
                    return (x - m1) * (x - m1) * p.density(x);
                };
                double var = 0.0;
                try {
                    var = quad::integrate(centered, p.support, moment_options()).value;
                } catch (const Error&) {
                    throw MissingVariance("custom density second moment did not converge");
                }
                if (!(var > 0.0) || !std::isfinite(var)) {
                    throw MissingVariance("computed variance is not positive and finite");
                }
                // A divergent moment on an unbounded support slips past the
                // relative-tolerance stop (the running value grows until the
                // floating grid near the mapped endpoint runs out), so insist
                // the mass actually lives within a bounded multiple of the
                // claimed scale.
                const double reach = 100.0 * std::sqrt(var);
                double tail = 0.0;
                try {
                    if (std::isinf(p.support.upper)) {
                        tail += quad::integrate(centered, quad::Interval::at_least(m1 + reach),
                                                moment_options())
                                    .value;
                    }
                    if (std::isinf(p.support.lower)) {
                        tail += quad::integrate(centered, quad::Interval::at_most(m1 - reach),
                                                moment_options())
                                    .value;
                    }
                } catch (const Error&) {
                    throw MissingVariance("custom density tail moment did not converge");
                }
                if (!(tail <= 0.25 * var)) {
                    throw MissingVariance("second moment not concentrated at its own scale; "
                                          "variance looks divergent");
                }
                return var;
            }
        },
        params_);
}

double DistributionSpec::stddev() const { return std::sqrt(variance()); }

} // namespace dmim
