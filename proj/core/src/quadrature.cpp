#include "dmim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace dmim::quad {
namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15
// constants). Kronrod nodes are strictly interior, so interval endpoints are
// never evaluated; integrable endpoint singularities need no special casing.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

[[noreturn]] void throw_non_finite(double x) {
    throw NonFinite("integrand returned a non-finite value near x = " + std::to_string(x));
}

template <class F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(centre);
    if (!std::isfinite(fc)) throw_non_finite(centre);

    double res_gauss = fc * kWg[3];
    double res_kronrod = fc * kWgk[7];
    double res_abs = std::abs(res_kronrod);

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        if (!std::isfinite(f1)) throw_non_finite(centre - dx);
        if (!std::isfinite(f2)) throw_non_finite(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        const double fsum = f1 + f2;
        res_kronrod += kWgk[j] * fsum;
        res_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) res_gauss += kWg[j / 2] * fsum;
    }

    const double res_mean = res_kronrod * 0.5;
    double res_asc = kWgk[7] * std::abs(fc - res_mean);
    for (int j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (std::abs(fv1[j] - res_mean) + std::abs(fv2[j] - res_mean));
    }

    const double abs_half = std::abs(half);
    const double value = res_kronrod * half;
    res_abs *= abs_half;
    res_asc *= abs_half;

    double err = std::abs((res_kronrod - res_gauss) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (res_abs > tiny / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * res_abs);
    }
    return Panel{a, b, value, err};
}

struct Mapped {
    std::function<double(double)> g;
    double lo, hi;
};

// Map an infinite or semi-infinite domain onto a finite parameter interval
// with a rational substitution (t/(1-t) halfline, t/(1-t^2) whole line).
// Exponentially decaying tails stay smooth under these maps.
Mapped map_domain(const Integrand& f, const Interval& domain) {
    const double a = domain.lower;
    const double b = domain.upper;
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);

    if (!lo_inf && !hi_inf) {
        return {[&f](double x) { return f(x); }, a, b};
    }
    if (!lo_inf && hi_inf) {
        // x = a + t/(1-t), t in [0,1)
        return {[&f, a](double t) {
                    const double omt = 1.0 - t;
                    const double x = a + t / omt;
                    if (!std::isfinite(x)) return 0.0;
                    const double fx = f(x);
                    return fx == 0.0 ? 0.0 : fx / (omt * omt);
                },
                0.0, 1.0};
    }
    if (lo_inf && !hi_inf) {
        // x = b - t/(1-t), t in [0,1)
        return {[&f, b](double t) {
                    const double omt = 1.0 - t;
                    const double x = b - t / omt;
                    if (!std::isfinite(x)) return 0.0;
                    const double fx = f(x);
                    return fx == 0.0 ? 0.0 : fx / (omt * omt);
                },
                0.0, 1.0};
    }
    // x = t/(1-t^2), t in (-1,1)
    return {[&f](double t) {
                const double omt2 = 1.0 - t * t;
                const double x = t / omt2;
                if (!std::isfinite(x)) return 0.0;
                const double fx = f(x);
                return fx == 0.0 ? 0.0 : fx * (1.0 + t * t) / (omt2 * omt2);
            },
            -1.0, 1.0};
}

} // namespace

QuadratureResult integrate(const Integrand& f, Interval domain, const Options& opts) {
    if (std::isnan(domain.lower) || std::isnan(domain.upper) || !(domain.lower < domain.upper)) {
        throw InvalidDomain("integration interval requires lower < upper");
    }
    if (!(opts.abs_tol > 0.0) || !(opts.rel_tol > 0.0)) {
        throw InvalidParams("integration tolerances must be positive");
    }
    if (opts.max_subdivisions < 1) {
        throw InvalidParams("subdivision budget must be at least 1");
    }

    const Mapped m = map_domain(f, domain);

    std::priority_queue<Panel> active;
    std::vector<Panel> settled; // panels too narrow to split further

    Panel first = gauss_kronrod_15(m.g, m.lo, m.hi);
    double total_value = first.value;
    double total_error = first.error;
    active.push(first);
    int panels = 1;

    auto converged = [&] {
        return total_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value));
    };

    while (!converged()) {
        if (active.empty() || panels >= opts.max_subdivisions) {
            throw NonConvergent("quadrature failed to reach tolerance after " +
                                std::to_string(panels) + " panels");
        }
        Panel worst = active.top();
        active.pop();

        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Interval exhausted down to adjacent floats; keep its estimate.
            settled.push_back(worst);
            continue;
        }
        Panel left = gauss_kronrod_15(m.g, worst.a, mid);
        Panel right = gauss_kronrod_15(m.g, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++panels;
    }

    // Recompute the totals once to undo accumulation drift in the running sums.
    double value = 0.0, error = 0.0;
    for (const Panel& p : settled) {
        value += p.value;
        error += p.error;
    }
    while (!active.empty()) {
        value += active.top().value;
        error += active.top().error;
        active.pop();
    }
    return QuadratureResult{value, error, panels};
}

} // namespace dmim::quad
