#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dmim/distribution.hpp"
#include "dmim/error.hpp"

namespace dmim::gof {

// Step-function estimate of a CDF from a sample batch. Immutable after
// construction; safe for concurrent reads.
class EmpiricalCdf {
public:
    // Sorts a copy of the samples. Throws EmptySample / NonFiniteSample.
    explicit EmpiricalCdf(std::vector<double> samples);

    // (number of samples <= x) / n
    double operator()(double x) const;

    std::int64_t size() const { return static_cast<std::int64_t>(sorted_.size()); }
    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

// sup_x |F_n(x) - F(x)| over an already-sorted sample, evaluated exactly via
// the order statistics: max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
// Throws InvalidCdf if F leaves [0,1] at a sample point.
template <class Cdf>
double ks_statistic_sorted(std::span<const double> sorted_samples, Cdf&& cdf) {
    if (sorted_samples.empty()) throw EmptySample("KS statistic needs at least one sample");
    const double n = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double fx = cdf(sorted_samples[i]);
        if (!(fx >= 0.0 && fx <= 1.0)) {
            throw InvalidCdf("CDF value outside [0,1] at a sample point");
        }
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - fx);
        d = std::max(d, fx - static_cast<double>(i) / n);
    }
    return d;
}

inline double ks_statistic(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf) {
    return ks_statistic_sorted(std::span<const double>(ecdf.sorted()), cdf);
}

EmpiricalCdf empirical_cdf(std::vector<double> samples);

// Asymptotic tail P{D_n > d} ~ 2 sum_k (-1)^(k-1) exp(-2 n k^2 d^2), summed
// until a term drops below 1e-16 or k_max terms, clamped into [0,1] (the
// asymptotic form slightly overshoots 1 for small n d^2).
double ks_tail_series(std::int64_t n, double d, int k_max = 100);

// 2 exp(-2 n d^2) / (1 - exp(-8 n d^2)). An upper bound for the tail; can
// exceed 1 for small n d^2. Throws DegenerateInput when the denominator
// underflows.
double ks_tail_upper_bound(std::int64_t n, double d);

// Relative importance of n samples: exp(-1/(2 sqrt(pi n) sigma)) / l_X.
// Strictly increasing in n with limit 1/l_X.
double gamma_n(std::int64_t n, double sigma, double l_x);

// Smallest sample count keeping the importance deviation under epsilon:
// ceil of 1/(4 pi sigma^2 ln^2(1 - epsilon*l_X)), distribution-free with
// l_X = 1 when no measure value is supplied. At least 1.
std::int64_t required_samples(double epsilon, double sigma,
                              std::optional<double> l_x = std::nullopt);

// Deviation threshold d = sqrt(2 pi sigma^2 ln(19/(9 beta))) ln(1/(1-eps)).
// beta may exceed 1 up to (19/9)(1/19)^(1/4) ~= 1.0112 before the bound
// construction breaks down.
double d_from(double epsilon, double beta, double sigma);

// Inverse relations; each pair of (d, beta, epsilon) determines the third.
double epsilon_from(double d, double beta, double sigma);

struct BetaBound {
    double value = 0.0;
    bool achievable = true; // false when value > 1: no confidence level works
};
BetaBound beta_from(double d, double epsilon, double sigma);

// A consistent plan: sigma from the spec, d from (epsilon, beta, sigma), n
// from the distribution-free sample bound.
struct GofPlan {
    double d = 0.0;
    double beta = 0.0;
    double epsilon = 0.0;
    std::int64_t n = 0;
    double sigma = 0.0;
};

GofPlan make_plan(const DistributionSpec& spec, double epsilon, double beta);

} // namespace dmim::gof
