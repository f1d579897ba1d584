#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dmim/distribution.hpp"
#include "dmim/montecarlo.hpp"
#include "output_record.hpp"

namespace dmim::cli {

// Family selection flags shared by every subcommand. Exactly one family must
// be chosen. Uniform and exponential accept either their natural parameters
// or --sigma (zero-mean width 2*sqrt(3)*sigma, respectively lambda = 1/sigma),
// matching the usual equal-variance comparison setup.
struct DistFlags {
    bool uniform = false;
    bool normal = false;
    bool exponential = false;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> mu;
    std::optional<double> sigma;
    std::optional<double> lambda;
};

DistributionSpec make_spec(const DistFlags& flags);

enum class DmimMethod { Auto, Closed, Series, Quadrature, ApproxExp, ApproxLinear };

struct DmimArgs {
    DistFlags dist;
    DmimMethod method = DmimMethod::Auto;
    double tol = 1e-15;
};
OutputRecord run_dmim(const DmimArgs& args);

struct CurveArgs {
    std::string figure;                // "fig1" or "fig2"
    std::optional<double> min_value;   // defaults depend on the figure
    std::optional<double> max_value;
    std::optional<int> points;
};
OutputRecord run_curve(const CurveArgs& args);

struct PlanArgs {
    DistFlags dist;
    double epsilon = 0.0;
    double beta = 0.0;
};
OutputRecord run_plan(const PlanArgs& args);

struct KsArgs {
    DistFlags dist;
    std::string input_path;
};
OutputRecord run_ks(const KsArgs& args);

struct SimulateArgs {
    DistFlags dist;
    std::optional<double> d;
    std::optional<double> beta;
    double eps_min = 1e-3;
    double eps_max = 1e-1;
    int eps_points = 40;
    int trials = 10000;
    std::uint64_t seed = mc::kDefaultMasterSeed;
    std::string n_rule = "free"; // "free" or "lx"
};
OutputRecord run_simulate(const SimulateArgs& args);

} // namespace dmim::cli
