#include "dmim/gof.hpp"

#include <algorithm>
#include <numbers>

namespace dmim::gof {
namespace {

constexpr double kBetaMax = 1.0111665426031021; // (19/9)*(1/19)^(1/4)

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidParams("sigma must be positive and finite");
    }
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidParams("epsilon must lie in (0,1)");
    }
}

} // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw EmptySample("empirical CDF needs at least one sample");
    for (double x : sorted_) {
        if (!std::isfinite(x)) throw NonFiniteSample("sample contains a non-finite value");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) {
    return EmpiricalCdf(std::move(samples));
}

double ks_tail_series(std::int64_t n, double d, int k_max) {
    if (n < 1) throw InvalidParams("ks_tail_series requires n >= 1");
    if (!(d > 0.0)) throw InvalidParams("ks_tail_series requires d > 0");
    if (k_max < 1) throw InvalidParams("ks_tail_series requires k_max >= 1");

    const double a = 2.0 * static_cast<double>(n) * d * d;
    double sum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const double term = std::exp(-a * static_cast<double>(k) * static_cast<double>(k));
        if (term < 1e-16) break;
        sum += (k % 2 != 0) ? term : -term;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_tail_upper_bound(std::int64_t n, double d) {
    if (n < 1) throw InvalidParams("ks_tail_upper_bound requires n >= 1");
    if (!(d > 0.0)) throw InvalidParams("ks_tail_upper_bound requires d > 0");

    const double nd2 = static_cast<double>(n) * d * d;
    const double denom = -std::expm1(-8.0 * nd2);
    if (denom == 0.0) {
        throw DegenerateInput("n*d^2 too small: bound denominator underflows");
    }
    const double bound = 2.0 * std::exp(-2.0 * nd2) / denom;
    if (!std::isfinite(bound)) {
        throw DegenerateInput("n*d^2 too small: bound overflows");
    }
    return bound;
}

double gamma_n(std::int64_t n, double sigma, double l_x) {
    if (n < 1) throw InvalidParams("gamma_n requires n >= 1");
    check_sigma(sigma);
    if (!(l_x > 0.0 && l_x <= 1.0)) {
        throw InvalidParams("gamma_n requires l_X in (0,1]");
    }
    const double root = 2.0 * std::sqrt(std::numbers::pi * static_cast<double>(n)) * sigma;
    return std::exp(-1.0 / root) / l_x;
}

std::int64_t required_samples(double epsilon, double sigma, std::optional<double> l_x) {
    check_epsilon(epsilon);
    check_sigma(sigma);
    double x = epsilon;
    if (l_x) {
        if (!(*l_x > 0.0 && *l_x <= 1.0)) {
            throw InvalidParams("required_samples needs l_X in (0,1]");
        }
        x = epsilon * *l_x;
    }
    const double log_term = std::log1p(-x);
    const double bound = 1.0 / (4.0 * std::numbers::pi * sigma * sigma * log_term * log_term);
    if (bound >= 9.0e18) {
        throw InvalidParams("required sample count overflows a 64-bit integer");
    }
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(bound)));
}

double d_from(double epsilon, double beta, double sigma) {
    check_epsilon(epsilon);
    check_sigma(sigma);
    if (!(beta > 0.0) || beta > kBetaMax) {
        throw InvalidParams("d_from requires beta in (0, 1.0112)");
    }
    const double scale = std::sqrt(2.0 * std::numbers::pi * sigma * sigma *
                                   std::log(19.0 / (9.0 * beta)));
    return -scale * std::log1p(-epsilon);
}

double epsilon_from(double d, double beta, double sigma) {
    if (!(d > 0.0)) throw InvalidParams("epsilon_from requires d > 0");
    check_sigma(sigma);
    if (!(beta > 0.0 && beta < 19.0 / 9.0)) {
        throw InvalidParams("epsilon_from requires beta in (0, 19/9)");
    }
    const double scale = std::sqrt(2.0 * std::numbers::pi * sigma * sigma *
                                   std::log(19.0 / (9.0 * beta)));
    return -std::expm1(-d / scale);
}

BetaBound beta_from(double d, double epsilon, double sigma) {
    if (!(d > 0.0)) throw InvalidParams("beta_from requires d > 0");
    check_epsilon(epsilon);
    check_sigma(sigma);
    const double log_term = std::log1p(-epsilon);
    const double beta = 19.0 / 9.0 *
                        std::exp(-d * d / (2.0 * std::numbers::pi * sigma * sigma *
                                           log_term * log_term));
    return BetaBound{beta, beta <= 1.0};
}

GofPlan make_plan(const DistributionSpec& spec, double epsilon, double beta) {
    const double sigma = spec.stddev();
    const double d = d_from(epsilon, beta, sigma);
    const std::int64_t n = required_samples(epsilon, sigma);
    return GofPlan{d, beta, epsilon, n, sigma};
}

} // namespace dmim::gof
