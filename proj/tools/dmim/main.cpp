#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "output_record.hpp"

// Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 I/O error.

namespace {

using namespace dmim::cli;

void add_dist_flags(CLI::App* cmd, DistFlags& flags) {
    cmd->add_flag("--uniform", flags.uniform, "uniform distribution");
    cmd->add_flag("--normal", flags.normal, "normal distribution");
    cmd->add_flag("--exponential", flags.exponential, "negative exponential distribution");
    cmd->add_option("--a", flags.a, "uniform lower endpoint");
    cmd->add_option("--b", flags.b, "uniform upper endpoint");
    cmd->add_option("--mu", flags.mu, "normal mean (default 0)");
    cmd->add_option("--sigma", flags.sigma,
                    "standard deviation; for --uniform/--exponential selects the "
                    "zero-mean/unit-rate parameterization with that sigma");
    cmd->add_option("--lambda", flags.lambda, "exponential rate");
}

std::string* add_format_flag(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    return &format;
}

void emit(const OutputRecord& record, const std::string& format) {
    std::cout << render(record, format == "json" ? OutputFormat::Json : OutputFormat::Csv);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DMIM toolkit: importance measures of continuous distributions, "
                 "KS goodness-of-fit planning, and a seeded simulation harness"};
    app.require_subcommand(1);

    DmimArgs dmim_args;
    std::string dmim_method = "auto";
    std::string dmim_format = "csv";
    CLI::App* cmd_dmim = app.add_subcommand("dmim", "compute the importance measure l(X)");
    add_dist_flags(cmd_dmim, dmim_args.dist);
    cmd_dmim->add_option("--method", dmim_method, "auto|closed|series|quadrature|approx-exp|approx-linear")
        ->check(CLI::IsMember({"auto", "closed", "series", "quadrature", "approx-exp", "approx-linear"}))
        ->capture_default_str();
    cmd_dmim->add_option("--tol", dmim_args.tol, "series stopping tolerance")
        ->capture_default_str();
    add_format_flag(cmd_dmim, dmim_format);

    CurveArgs curve_args;
    std::string curve_format = "csv";
    CLI::App* cmd_curve = app.add_subcommand("curve", "tabulate measure/error curves");
    cmd_curve->add_option("--figure", curve_args.figure, "fig1 (approx errors vs sigma) or "
                                                         "fig2 (measure vs variance)")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2"}));
    cmd_curve->add_option("--min", curve_args.min_value, "grid lower bound");
    cmd_curve->add_option("--max", curve_args.max_value, "grid upper bound");
    cmd_curve->add_option("--points", curve_args.points, "grid size");
    add_format_flag(cmd_curve, curve_format);

    PlanArgs plan_args;
    std::string plan_format = "csv";
    CLI::App* cmd_plan = app.add_subcommand("plan", "sample-size plan for a deviation budget");
    add_dist_flags(cmd_plan, plan_args.dist);
    cmd_plan->add_option("--epsilon", plan_args.epsilon, "importance deviation in (0,1)")
        ->required();
    cmd_plan->add_option("--beta", plan_args.beta, "confidence level in (0,1]")->required();
    add_format_flag(cmd_plan, plan_format);

    KsArgs ks_args;
    std::string ks_format = "csv";
    CLI::App* cmd_ks = app.add_subcommand("ks", "KS statistic of a sample file against a family");
    add_dist_flags(cmd_ks, ks_args.dist);
    cmd_ks->add_option("--input", ks_args.input_path, "sample file, one float per line")
        ->required();
    add_format_flag(cmd_ks, ks_format);

    SimulateArgs sim_args;
    std::string sim_format = "csv";
    CLI::App* cmd_sim = app.add_subcommand("simulate", "estimate P{D_n > d} over an epsilon grid");
    add_dist_flags(cmd_sim, sim_args.dist);
    cmd_sim->add_option("--d", sim_args.d, "fixed deviation threshold (default 0.01)");
    cmd_sim->add_option("--beta", sim_args.beta, "derive d from this confidence per epsilon");
    cmd_sim->add_option("--eps-min", sim_args.eps_min, "epsilon grid start")->capture_default_str();
    cmd_sim->add_option("--eps-max", sim_args.eps_max, "epsilon grid end")->capture_default_str();
    cmd_sim->add_option("--eps-points", sim_args.eps_points, "epsilon grid size")
        ->capture_default_str();
    cmd_sim->add_option("--trials", sim_args.trials, "repetitions per epsilon")
        ->capture_default_str();
    cmd_sim->add_option("--seed", sim_args.seed, "master seed")->capture_default_str();
    cmd_sim->add_option("--n-rule", sim_args.n_rule, "sample count rule: free|lx")
        ->check(CLI::IsMember({"free", "lx"}))
        ->capture_default_str();
    add_format_flag(cmd_sim, sim_format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*cmd_dmim) {
            static const std::map<std::string, DmimMethod> methods = {
                {"auto", DmimMethod::Auto},           {"closed", DmimMethod::Closed},
                {"series", DmimMethod::Series},       {"quadrature", DmimMethod::Quadrature},
                {"approx-exp", DmimMethod::ApproxExp}, {"approx-linear", DmimMethod::ApproxLinear}};
            dmim_args.method = methods.at(dmim_method);
            emit(run_dmim(dmim_args), dmim_format);
        } else if (*cmd_curve) {
            emit(run_curve(curve_args), curve_format);
        } else if (*cmd_plan) {
            emit(run_plan(plan_args), plan_format);
        } else if (*cmd_ks) {
            emit(run_ks(ks_args), ks_format);
        } else if (*cmd_sim) {
            emit(run_simulate(sim_args), sim_format);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const dmim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
