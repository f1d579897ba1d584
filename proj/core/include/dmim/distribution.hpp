#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "dmim/error.hpp"
#include "dmim/quadrature.hpp"

namespace dmim {

enum class Family { Uniform, Normal, Exponential, Custom };

// A continuous distribution: one of the three analytic families, or an
// arbitrary density callback with a declared support. Immutable once built.
class DistributionSpec {
public:
    struct Uniform {
        double a;
        double b;
    };
    struct Normal {
        double mu;
        double sigma;
    };
    struct Exponential {
        double lambda;
    };
    struct Custom {
        std::function<double(double)> density;
        quad::Interval support;
        std::optional<double> mean;
        std::optional<double> variance;
    };

    static DistributionSpec uniform(double a, double b);
    static DistributionSpec normal(double mu, double sigma);
    static DistributionSpec exponential(double lambda);

    // Validates that the density integrates to 1 over the support (1e-8
    // tolerance). Mean/variance may be supplied; otherwise they are computed
    // by quadrature on demand.
    static DistributionSpec custom(std::function<double(double)> density,
                                   quad::Interval support,
                                   std::optional<double> mean = std::nullopt,
                                   std::optional<double> variance = std::nullopt);

    Family family() const;
    quad::Interval support() const;

    double pdf(double x) const;

    // Closed-form CDFs for the analytic families; throws UnsupportedFamily
    // for Custom specs.
    double cdf(double x) const;

    double mean() const;

    // Throws MissingVariance when a Custom spec's second moment cannot be
    // computed (e.g. heavy tails).
    double variance() const;
    double stddev() const;

    const Uniform& as_uniform() const { return std::get<Uniform>(params_); }
    const Normal& as_normal() const { return std::get<Normal>(params_); }
    const Exponential& as_exponential() const { return std::get<Exponential>(params_); }
    const Custom& as_custom() const { return std::get<Custom>(params_); }

private:
    using Params = std::variant<Uniform, Normal, Exponential, Custom>;
    explicit DistributionSpec(Params params) : params_(std::move(params)) {}

    Params params_;
};

} // namespace dmim
