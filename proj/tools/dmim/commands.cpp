#include "commands.hpp"

#include <cmath>
#include <cstdlib>

#include "dmim/gof.hpp"
#include "dmim/measures.hpp"
#include "sample_file.hpp"

namespace dmim::cli {
namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo)) throw UsageError("grid requires 0 < min < max");
    if (points < 1) throw UsageError("grid requires at least one point");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        grid.push_back(lo);
        return grid;
    }
    const double step = (std::log(hi) - std::log(lo)) / (points - 1);
    for (int i = 0; i < points; ++i) {
        grid.push_back(std::exp(std::log(lo) + step * i));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

void describe_spec(const DistributionSpec& spec, OutputRecord& record) {
    switch (spec.family()) {
        case Family::Uniform: {
            const auto& u = spec.as_uniform();
            record.add_param("family", "uniform");
            record.add_param("a", format_double(u.a));
            record.add_param("b", format_double(u.b));
            break;
        }
        case Family::Normal: {
            const auto& p = spec.as_normal();
            record.add_param("family", "normal");
            record.add_param("mu", format_double(p.mu));
            record.add_param("sigma", format_double(p.sigma));
            break;
        }
        case Family::Exponential:
            record.add_param("family", "exponential");
            record.add_param("lambda", format_double(spec.as_exponential().lambda));
            break;
        case Family::Custom:
            record.add_param("family", "custom");
            break;
    }
}

int env_thread_cap() {
    const char* env = std::getenv("DMIM_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1) return 0;
    return static_cast<int>(value);
}

} // namespace

DistributionSpec make_spec(const DistFlags& flags) {
    const int families = int(flags.uniform) + int(flags.normal) + int(flags.exponential);
    if (families != 1) {
        throw UsageError("select exactly one of --uniform, --normal, --exponential");
    }
    if (flags.uniform) {
        if (flags.a && flags.b) {
            if (flags.sigma) throw UsageError("give --a/--b or --sigma, not both");
            return DistributionSpec::uniform(*flags.a, *flags.b);
        }
        if (flags.sigma) {
            const double half = std::sqrt(3.0) * *flags.sigma;
            return DistributionSpec::uniform(-half, half);
        }
        throw UsageError("--uniform needs --a and --b, or --sigma");
    }
    if (flags.normal) {
        if (!flags.sigma) throw UsageError("--normal needs --sigma");
        return DistributionSpec::normal(flags.mu.value_or(0.0), *flags.sigma);
    }
    if (flags.lambda) {
        if (flags.sigma) throw UsageError("give --lambda or --sigma, not both");
        return DistributionSpec::exponential(*flags.lambda);
    }
    if (flags.sigma) return DistributionSpec::exponential(1.0 / *flags.sigma);
    throw UsageError("--exponential needs --lambda or --sigma");
}

OutputRecord run_dmim(const DmimArgs& args) {
    const DistributionSpec spec = make_spec(args.dist);

    OutputRecord record;
    record.command = "dmim";
    describe_spec(spec, record);

    DmimMethod method = args.method;
    if (method == DmimMethod::Auto) {
        method = spec.family() == Family::Normal ? DmimMethod::Series : DmimMethod::Closed;
    }

    switch (method) {
        case DmimMethod::Closed: {
            double value = 0.0;
            if (spec.family() == Family::Uniform) {
                value = dmim_uniform(spec.as_uniform().a, spec.as_uniform().b);
            } else if (spec.family() == Family::Exponential) {
                value = dmim_exponential(spec.as_exponential().lambda);
            } else {
                throw UsageError("no closed form for this family; use --method series");
            }
            record.add_param("method", "closed");
            record.columns = {"value"};
            record.rows = {{value}};
            break;
        }
        case DmimMethod::Series: {
            if (spec.family() != Family::Normal) {
                throw UsageError("--method series applies to --normal only");
            }
            const SeriesResult r = dmim_normal_series(spec.as_normal().sigma, args.tol);
            record.add_param("method", "series");
            record.add_param("tol", format_double(args.tol));
            record.columns = {"value", "truncation_bound", "terms_used"};
            record.rows = {{r.value, r.truncation_bound, static_cast<double>(r.terms_used)}};
            break;
        }
        case DmimMethod::Quadrature: {
            auto integrand = [&spec](double x) {
                const double fx = spec.pdf(x);
                return fx == 0.0 ? 0.0 : fx * std::exp(-fx);
            };
            const quad::QuadratureResult r = quad::integrate(integrand, spec.support());
            record.add_param("method", "quadrature");
            record.columns = {"value", "error_estimate"};
            record.rows = {{r.value, r.error_estimate}};
            break;
        }
        case DmimMethod::ApproxExp:
        case DmimMethod::ApproxLinear: {
            if (spec.family() != Family::Normal) {
                throw UsageError("approximations apply to --normal only");
            }
            const double sigma = spec.as_normal().sigma;
            const bool exp_form = method == DmimMethod::ApproxExp;
            record.add_param("method", exp_form ? "approx-exp" : "approx-linear");
            record.columns = {"value"};
            record.rows = {{exp_form ? dmim_normal_approx_exp(sigma)
                                     : dmim_normal_approx_linear(sigma)}};
            break;
        }
        case DmimMethod::Auto:
            throw UsageError("unresolved method");
    }
    return record;
}

OutputRecord run_curve(const CurveArgs& args) {
    OutputRecord record;
    record.command = "curve";
    record.add_param("figure", args.figure);

    if (args.figure == "fig1") {
        const double lo = args.min_value.value_or(0.1);
        const double hi = args.max_value.value_or(10.0);
        const int points = args.points.value_or(100);
        record.add_param("min", format_double(lo));
        record.add_param("max", format_double(hi));
        record.add_param("points", std::to_string(points));
        record.columns = {"sigma", "rel_err_exp", "rel_err_linear"};
        for (double sigma : log_grid(lo, hi, points)) {
            const double l = dmim_normal_series(sigma).value;
            const double err_exp = std::abs(dmim_normal_approx_exp(sigma) - l) / l;
            const double err_lin = std::abs(dmim_normal_approx_linear(sigma) - l) / l;
            record.rows.push_back({sigma, err_exp, err_lin});
        }
        return record;
    }
    if (args.figure == "fig2") {
        const double lo = args.min_value.value_or(0.1);
        const double hi = args.max_value.value_or(100.0);
        const int points = args.points.value_or(30);
        record.add_param("min", format_double(lo));
        record.add_param("max", format_double(hi));
        record.add_param("points", std::to_string(points));
        record.columns = {"variance", "l_uniform", "l_normal", "l_exponential"};
        for (double variance : log_grid(lo, hi, points)) {
            const double sigma = std::sqrt(variance);
            const double half = std::sqrt(3.0) * sigma;
            record.rows.push_back({variance, dmim_uniform(-half, half),
                                   dmim_normal_series(sigma).value,
                                   dmim_exponential(1.0 / sigma)});
        }
        return record;
    }
    throw UsageError("--figure must be fig1 or fig2");
}

OutputRecord run_plan(const PlanArgs& args) {
    const DistributionSpec spec = make_spec(args.dist);
    const gof::GofPlan plan = gof::make_plan(spec, args.epsilon, args.beta);
    const double l_x = dmim(spec);
    const std::int64_t n_sharp = gof::required_samples(args.epsilon, plan.sigma, l_x);

    OutputRecord record;
    record.command = "plan";
    describe_spec(spec, record);
    record.columns = {"n", "d", "sigma", "epsilon", "beta", "l_x", "n_sharpened"};
    record.rows = {{static_cast<double>(plan.n), plan.d, plan.sigma, plan.epsilon, plan.beta,
                    l_x, static_cast<double>(n_sharp)}};
    return record;
}

OutputRecord run_ks(const KsArgs& args) {
    const DistributionSpec spec = make_spec(args.dist);
    const gof::EmpiricalCdf ecdf(read_sample_file(args.input_path));
    const double dn = gof::ks_statistic(ecdf, [&spec](double x) { return spec.cdf(x); });
    const std::int64_t n = ecdf.size();

    OutputRecord record;
    record.command = "ks";
    describe_spec(spec, record);
    record.add_param("input", args.input_path);
    record.columns = {"n", "d_n", "p_value", "upper_bound"};
    record.rows = {{static_cast<double>(n), dn, gof::ks_tail_series(n, dn),
                    gof::ks_tail_upper_bound(n, dn)}};
    return record;
}

OutputRecord run_simulate(const SimulateArgs& args) {
    if (args.d && args.beta) throw UsageError("give --d or --beta, not both");

    mc::SimConfig config{make_spec(args.dist),
                         log_grid(args.eps_min, args.eps_max, args.eps_points),
                         args.d,
                         args.beta,
                         args.trials,
                         args.seed,
                         args.n_rule == "lx" ? mc::NRule::WithLX : mc::NRule::DistributionFree,
                         env_thread_cap()};
    if (!config.d && !config.beta) config.d = 0.01;
    if (args.n_rule != "free" && args.n_rule != "lx") {
        throw UsageError("--n-rule must be free or lx");
    }

    OutputRecord record;
    record.command = "simulate";
    describe_spec(config.spec, record);
    if (config.d) record.add_param("d", format_double(*config.d));
    if (config.beta) record.add_param("beta", format_double(*config.beta));
    record.add_param("eps_min", format_double(args.eps_min));
    record.add_param("eps_max", format_double(args.eps_max));
    record.add_param("eps_points", std::to_string(args.eps_points));
    record.add_param("trials", std::to_string(args.trials));
    record.add_param("seed", std::to_string(args.seed));
    record.add_param("n_rule", args.n_rule);

    record.columns = {"epsilon", "n", "d", "exceedance", "std_error"};
    for (const mc::TrialReport& r : mc::estimate_exceedance(config)) {
        record.rows.push_back({r.epsilon, static_cast<double>(r.n), r.d,
                               r.exceedance_estimate, r.std_error});
    }
    return record;
}

} // namespace dmim::cli
