#pragma once

#include <functional>
#include <limits>

#include "dmim/error.hpp"

namespace dmim::quad {

// Integration domain. Either endpoint may be infinite; infinite ranges are
// handled by a rational change of variables, so the integrand must decay
// towards infinite endpoints (caller contract).
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
    static Interval whole_line() { return {-inf(), inf()}; }
    static Interval at_least(double a) { return {a, inf()}; }
    static Interval at_most(double b) { return {-inf(), b}; }

    bool bounded() const {
        return lower > -inf() && upper < inf();
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0; // >= 0
    int subdivisions = 1;        // number of final panels, >= 1
};

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 1000000;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod 7/15 integration. Stops once the summed
// error estimate is below max(abs_tol, rel_tol*|value|).
//
// Throws InvalidDomain for a malformed interval, NonFinite if the integrand
// returns NaN/Inf at an interior point, NonConvergent when the subdivision
// budget runs out.
QuadratureResult integrate(const Integrand& f, Interval domain, const Options& opts = {});

inline QuadratureResult integrate(const Integrand& f, Interval domain,
                                  double abs_tol, double rel_tol) {
    Options opts;
    opts.abs_tol = abs_tol;
    opts.rel_tol = rel_tol;
    return integrate(f, domain, opts);
}

} // namespace dmim::quad
