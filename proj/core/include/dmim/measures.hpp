#pragma once

#include "dmim/distribution.hpp"

namespace dmim {

// A series-computed value together with a certificate: the true value is
// guaranteed to lie within truncation_bound of value (infinity when no
// certificate is available for the parameters at hand).
struct SeriesResult {
    double value = 0.0;
    double truncation_bound = 0.0;
    int terms_used = 1; // first omitted term index m; the sum runs n = 1..m-1
};

// The differential message importance measure l(X) = integral of
// f(x) exp(-f(x)) over the support. Always in [0,1].
//
// Uniform and Exponential use their closed forms, Normal the alternating
// series, Custom adaptive quadrature (quadrature errors propagate).
double dmim(const DistributionSpec& spec);

// exp(-1/(b-a))
double dmim_uniform(double a, double b);

// (1/lambda)(1 - exp(-lambda))
double dmim_exponential(double lambda);

// l(X) for N(mu, sigma^2) via the alternating series
//   1 + sum_{n>=1} (-1)^n/n! * (2*pi*sigma^2)^(-n/2) / sqrt(n+1).
// Terms are added until the next term magnitude drops below tol while the
// terms are decreasing; the certificate is e times the first omitted term.
SeriesResult dmim_normal_series(double sigma, double tol = 1e-15);

// Large-sigma approximations. The linear form can go negative for
// sigma < 1/(2*sqrt(pi)); it is returned unclamped so error curves show the
// breakdown.
double dmim_normal_approx_exp(double sigma);    // exp(-1/(2*sqrt(pi)*sigma))
double dmim_normal_approx_linear(double sigma); // 1 - 1/(2*sqrt(pi)*sigma)

// Differential Renyi entropy of order alpha (> 0, != 1). Closed forms for
// the analytic families, quadrature of f^alpha for Custom.
double renyi_entropy(const DistributionSpec& spec, double alpha);

// Partial DMIM series through order m-1 written in terms of Renyi entropies:
//   1 + sum_{n=1}^{m-1} (-1)^n/n! * exp(-n h_{n+1}).
// truncation_bound = e * eps_m with eps_m = sup_{n>=m} integral f^{n+1},
// taken from the family's closed form (quadrature plus a monotonicity check
// at n = m, m+1 for Custom). The sup is infinite when the density exceeds 1
// on a fat enough region; the bound is then infinity.
SeriesResult dmim_via_renyi_series(const DistributionSpec& spec, int m);

// e * epsilon: remainder bound for truncation after m-1 terms given
// integral f^{n+1} <= epsilon for all n >= m.
double truncation_bound(double epsilon);

// (e-2) * epsilon: the sharper m = 2 specialization.
double truncation_bound_m2(double epsilon);

} // namespace dmim
