#include "dmim/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dmim {
namespace {

constexpr int kMaxSeriesTerms = 200;
constexpr double kInf = std::numeric_limits<double>::infinity();

double dmim_by_quadrature(const DistributionSpec& spec) {
    auto integrand = [&spec](double x) {
        const double fx = spec.pdf(x);
        return fx == 0.0 ? 0.0 : fx * std::exp(-fx);
    };
    return quad::integrate(integrand, spec.support()).value;
}

// integral of f^{n+1} for n >= m is sup'ed by its value at n = m whenever the
// sequence decreases; it diverges otherwise. Closed forms:
//   uniform      (b-a)^{-n}
//   normal       (2 pi sigma^2)^{-n/2} / sqrt(n+1)
//   exponential  lambda^n / (n+1)
double power_integral_sup(const DistributionSpec& spec, int m) {
    switch (spec.family()) {
        case Family::Uniform: {
            const double w = spec.as_uniform().b - spec.as_uniform().a;
            return w >= 1.0 ? std::pow(w, -m) : kInf;
        }
        case Family::Normal: {
            const double s = spec.as_normal().sigma;
            const double c2 = 2.0 * std::numbers::pi * s * s;
            // ratio of consecutive terms is sqrt((n+1)/((n+2)*c2)) < 1 for all
            // n when c2 >= 1
            return c2 >= 1.0 ? std::pow(c2, -0.5 * m) / std::sqrt(m + 1.0) : kInf;
        }
        case Family::Exponential: {
            const double lambda = spec.as_exponential().lambda;
            return lambda <= 1.0 ? std::pow(lambda, m) / (m + 1.0) : kInf;
        }
        case Family::Custom: {
            const auto& c = spec.as_custom();
            auto power = [&c](int n) {
                auto g = [&c, n](double x) {
                    const double fx = c.density(x);
                    return fx == 0.0 ? 0.0 : std::pow(fx, n + 1);
                };
                return quad::integrate(g, c.support, 1e-12, 1e-9).value;
            };
            try {
                const double im = power(m);
                const double im1 = power(m + 1);
                // assumed monotone decreasing, spot-checked at m, m+1
                if (im1 > im * (1.0 + 1e-9)) return kInf;
                return im;
            } catch (const Error&) {
                return kInf;
            }
        }
    }
    return kInf;
}

} // namespace

double dmim(const DistributionSpec& spec) {
    switch (spec.family()) {
        case Family::Uniform: {
            const auto& u = spec.as_uniform();
            return dmim_uniform(u.a, u.b);
        }
        case Family::Normal:
            return dmim_normal_series(spec.as_normal().sigma).value;
        case Family::Exponential:
            return dmim_exponential(spec.as_exponential().lambda);
        case Family::Custom:
            return dmim_by_quadrature(spec);
    }
    throw InvalidParams("unreachable distribution family");
}

double dmim_uniform(double a, double b) {
    if (!(a < b)) throw InvalidParams("dmim_uniform requires a < b");
    return std::exp(-1.0 / (b - a));
}

double dmim_exponential(double lambda) {
    if (!(lambda > 0.0)) throw InvalidParams("dmim_exponential requires lambda > 0");
    return -std::expm1(-lambda) / lambda;
}

SeriesResult dmim_normal_series(double sigma, double tol) {
    if (!(sigma > 0.0)) throw InvalidParams("dmim_normal_series requires sigma > 0");
    if (!(tol > 0.0)) throw InvalidParams("dmim_normal_series requires tol > 0");

    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
    double sum = 1.0;
    double power = 1.0; // c^n / n!
    double prev = kInf;
    for (int n = 1; n <= kMaxSeriesTerms; ++n) {
        power *= c / n;
        const double term = power / std::sqrt(n + 1.0);
        if (term < tol && term <= prev) {
            // Alternating with decreasing terms from here on (factorial decay),
            // so the remainder is below the first omitted term; e*term keeps
            // the e-scaled certificate form shared with the entropy-series bound.
            return SeriesResult{sum, std::numbers::e * term, n};
        }
        sum += (n % 2 != 0) ? -term : term;
        prev = term;
    }
    throw SlowConvergence("normal DMIM series did not reach tol within " +
                          std::to_string(kMaxSeriesTerms) + " terms (sigma = " +
                          std::to_string(sigma) + ")");
}

double dmim_normal_approx_exp(double sigma) {
    if (!(sigma > 0.0)) throw InvalidParams("dmim_normal_approx_exp requires sigma > 0");
    return std::exp(-1.0 / (2.0 * std::sqrt(std::numbers::pi) * sigma));
}

double dmim_normal_approx_linear(double sigma) {
    if (!(sigma > 0.0)) throw InvalidParams("dmim_normal_approx_linear requires sigma > 0");
    return 1.0 - 1.0 / (2.0 * std::sqrt(std::numbers::pi) * sigma);
}

double renyi_entropy(const DistributionSpec& spec, double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
        throw InvalidParams("Renyi entropy requires alpha > 0, alpha != 1");
    }
    switch (spec.family()) {
        case Family::Uniform:
            return std::log(spec.as_uniform().b - spec.as_uniform().a);
        case Family::Normal: {
            const double s = spec.as_normal().sigma;
            return 0.5 * std::log(2.0 * std::numbers::pi * s * s) +
                   0.5 * std::log(alpha) / (alpha - 1.0);
        }
        case Family::Exponential:
            return -std::log(spec.as_exponential().lambda) + std::log(alpha) / (alpha - 1.0);
        case Family::Custom: {
            const auto& c = spec.as_custom();
            auto g = [&c, alpha](double x) {
                const double fx = c.density(x);
                return fx == 0.0 ? 0.0 : std::pow(fx, alpha);
            };
            double integral = 0.0;
            try {
                integral = quad::integrate(g, c.support, 1e-12, 1e-10).value;
            } catch (const NonConvergent&) {
                throw DivergentIntegral("integral of f^alpha did not converge");
            } catch (const NonFinite&) {
                throw DivergentIntegral("f^alpha is not finite on the support");
            }
            if (!(integral > 0.0) || !std::isfinite(integral)) {
                throw DivergentIntegral("integral of f^alpha is not positive and finite");
            }
            return std::log(integral) / (1.0 - alpha);
        }
    }
    throw InvalidParams("unreachable distribution family");
}

SeriesResult dmim_via_renyi_series(const DistributionSpec& spec, int m) {
    if (m < 1) throw InvalidParams("dmim_via_renyi_series requires m >= 1");

    double sum = 1.0;
    double factorial = 1.0;
    for (int n = 1; n < m; ++n) {
        factorial *= n;
        const double power_integral = std::exp(-n * renyi_entropy(spec, n + 1.0));
        const double term = power_integral / factorial;
        sum += (n % 2 != 0) ? -term : term;
    }
    const double eps_m = power_integral_sup(spec, m);
    return SeriesResult{sum, truncation_bound(eps_m), m};
}

double truncation_bound(double epsilon) {
    if (!(epsilon >= 0.0)) throw InvalidParams("truncation_bound requires epsilon >= 0");
    return std::numbers::e * epsilon;
}

double truncation_bound_m2(double epsilon) {
    if (!(epsilon >= 0.0)) throw InvalidParams("truncation_bound_m2 requires epsilon >= 0");
    return (std::numbers::e - 2.0) * epsilon;
}

} // namespace dmim
