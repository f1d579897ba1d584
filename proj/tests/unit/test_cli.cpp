#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "commands.hpp"
#include "output_record.hpp"
#include "sample_file.hpp"

using namespace dmim::cli;

namespace {

std::string g_cli_bin; // path to the installed binary, from --cli-bin

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
    const auto out = temp_file("dmim_cli_test_stdout.txt");
    const std::string cmd = "\"" + g_cli_bin + "\" " + args + " > " + out.string() + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (stdout_text) {
        std::ifstream in(out);
        stdout_text->assign(std::istreambuf_iterator<char>(in),
                            std::istreambuf_iterator<char>());
    }
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("doubles are printed with 17 significant digits and round-trip") {
    for (double v : {1.0 / 3.0, 0.1, 2.5e-300, 788.0, 6.02214076e23}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(788.0) == "788");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv layout: metadata comments, then header, then rows") {
    OutputRecord record;
    record.command = "demo";
    record.add_param("alpha", "1");
    record.columns = {"x", "y"};
    record.rows = {{1.0, 2.0}, {3.5, -4.0}};
    const std::string csv = record.to_csv();
    CHECK(csv == "# schema_version=1\n# command=demo\n# alpha=1\nx,y\n1,2\n3.5,-4\n");
}

TEST_CASE("ragged rows are rejected") {
    OutputRecord record;
    record.command = "demo";
    record.columns = {"x", "y"};
    record.rows = {{1.0}};
    CHECK_THROWS_AS((void)record.to_csv(), std::logic_error);
    CHECK_THROWS_AS((void)record.to_json(), std::logic_error);
}

TEST_CASE("json escapes strings and mirrors the csv rows") {
    OutputRecord record;
    record.command = "demo";
    record.add_param("path", "a\"b\\c");
    record.columns = {"v"};
    record.rows = {{0.25}};
    const std::string json = record.to_json();
    CHECK(json.find("\"a\\\"b\\\\c\"") != std::string::npos);
    CHECK(json.find("[0.25]") != std::string::npos);
    CHECK(json.find("\"command\": \"demo\"") != std::string::npos);
}

TEST_CASE("family flags resolve to specs") {
    DistFlags flags;
    flags.uniform = true;
    flags.sigma = 1.0;
    const auto unif = make_spec(flags);
    CHECK(unif.as_uniform().a == doctest::Approx(-std::sqrt(3.0)));
    CHECK(unif.variance() == doctest::Approx(1.0));

    DistFlags expo;
    expo.exponential = true;
    expo.sigma = 2.0;
    CHECK(make_spec(expo).as_exponential().lambda == doctest::Approx(0.5));

    DistFlags none;
    CHECK_THROWS_AS((void)make_spec(none), UsageError);
    DistFlags both;
    both.uniform = both.normal = true;
    CHECK_THROWS_AS((void)make_spec(both), UsageError);
    DistFlags incomplete;
    incomplete.uniform = true;
    incomplete.a = 0.0;
    CHECK_THROWS_AS((void)make_spec(incomplete), UsageError);
}

TEST_CASE("dmim command output") {
    DmimArgs args;
    args.dist.exponential = true;
    args.dist.lambda = 1.0;
    const OutputRecord record = run_dmim(args);
    CHECK(record.columns == std::vector<std::string>{"value"});
    CHECK(record.rows[0][0] == doctest::Approx(0.63212055882855768).epsilon(1e-15));

    DmimArgs series;
    series.dist.normal = true;
    series.dist.sigma = 1.0;
    series.method = DmimMethod::Series;
    const OutputRecord r2 = run_dmim(series);
    CHECK(r2.columns.size() == 3);
    CHECK(r2.rows[0][0] == doctest::Approx(0.75899777827101715).epsilon(1e-13));

    // methods that do not apply to the family are usage errors
    DmimArgs bad = series;
    bad.method = DmimMethod::Closed;
    CHECK_THROWS_AS((void)run_dmim(bad), UsageError);
}

TEST_CASE("quadrature method agrees with closed forms through the cli layer") {
    DmimArgs args;
    args.dist.uniform = true;
    args.dist.a = 0.0;
    args.dist.b = 1.0;
    args.method = DmimMethod::Quadrature;
    const OutputRecord record = run_dmim(args);
    CHECK(record.rows[0][0] == doctest::Approx(0.36787944117144233).epsilon(1e-10));
}

TEST_CASE("approximation methods differ from the series by under a percent") {
    DmimArgs series;
    series.dist.normal = true;
    series.dist.sigma = 1.0;
    series.method = DmimMethod::Series;
    DmimArgs approx = series;
    approx.method = DmimMethod::ApproxExp;
    const double l = run_dmim(series).rows[0][0];
    const double a = run_dmim(approx).rows[0][0];
    CHECK(std::abs(a - l) / l < 0.01);
}

TEST_CASE("curve tables") {
    CurveArgs fig2;
    fig2.figure = "fig2";
    const OutputRecord record = run_curve(fig2);
    CHECK(record.columns ==
          std::vector<std::string>{"variance", "l_uniform", "l_normal", "l_exponential"});
    CHECK(record.rows.size() == 30);
    CHECK(record.rows.front()[0] == doctest::Approx(0.1));
    CHECK(record.rows.back()[0] == doctest::Approx(100.0));
    for (const auto& row : record.rows) {
        CHECK(row[2] > row[1]); // normal above uniform
        CHECK(row[1] > row[3]); // uniform above exponential
    }

    // all three measure columns grow with the variance
    for (std::size_t i = 1; i < record.rows.size(); ++i) {
        for (std::size_t c = 1; c <= 3; ++c) {
            CHECK(record.rows[i][c] > record.rows[i - 1][c]);
        }
    }

    CurveArgs fig1;
    fig1.figure = "fig1";
    fig1.points = 25;
    const OutputRecord r1 = run_curve(fig1);
    CHECK(r1.rows.size() == 25);
    // at the sigma = 10 end both approximation errors are below a percent
    CHECK(r1.rows.back()[0] == doctest::Approx(10.0));
    CHECK(r1.rows.back()[1] < 0.01);
    CHECK(r1.rows.back()[2] < 0.01);

    CurveArgs bad;
    bad.figure = "fig9";
    CHECK_THROWS_AS((void)run_curve(bad), UsageError);
}

TEST_CASE("plan command output") {
    PlanArgs args;
    args.dist.normal = true;
    args.dist.sigma = 1.0;
    args.epsilon = 0.01;
    args.beta = 0.05;
    const OutputRecord record = run_plan(args);
    CHECK(record.columns == std::vector<std::string>{"n", "d", "sigma", "epsilon", "beta",
                                                     "l_x", "n_sharpened"});
    CHECK(record.rows[0][0] == 788.0);
    CHECK(record.rows[0][1] == doctest::Approx(0.048739080205826545).epsilon(1e-13));
    CHECK(record.rows[0][6] == 1371.0);

    // halving epsilon roughly quadruples the sample count
    PlanArgs tighter = args;
    tighter.epsilon = 0.005;
    const double ratio = run_plan(tighter).rows[0][0] / record.rows[0][0];
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("sample files parse floats and comments") {
    const auto path = temp_file("dmim_cli_test_samples.txt");
    {
        std::ofstream out(path);
        out << "# header comment\n1.5\n  2.5  # trailing comment\n\n-3e-1\n";
    }
    const auto samples = read_sample_file(path.string());
    CHECK(samples == std::vector<double>{1.5, 2.5, -0.3});

    CHECK_THROWS_AS((void)read_sample_file("/nonexistent/no.txt"), IoError);
    {
        std::ofstream out(path);
        out << "1.0\nnot a number\n";
    }
    CHECK_THROWS_AS((void)read_sample_file(path.string()), IoError);
    std::filesystem::remove(path);
}

TEST_CASE("ks command on a file") {
    const auto path = temp_file("dmim_cli_test_ks.txt");
    {
        std::ofstream out(path);
        out << "0.0\n"; // single sample at the median of N(0,1)
    }
    KsArgs args;
    args.dist.normal = true;
    args.dist.sigma = 1.0;
    args.input_path = path.string();
    const OutputRecord record = run_ks(args);
    CHECK(record.rows[0][0] == 1.0);
    CHECK(record.rows[0][1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(record.rows[0][3] >= record.rows[0][2]); // bound above p-value
    std::filesystem::remove(path);
}

TEST_CASE("simulate is deterministic in-process across thread caps") {
    SimulateArgs args;
    args.dist.normal = true;
    args.dist.sigma = 1.0;
    args.d = 0.02;
    args.eps_min = 0.01;
    args.eps_max = 0.1;
    args.eps_points = 4;
    args.trials = 80;
    args.seed = 31;

    setenv("DMIM_THREADS", "1", 1);
    const std::string csv_one = run_simulate(args).to_csv();
    setenv("DMIM_THREADS", "3", 1);
    const std::string csv_three = run_simulate(args).to_csv();
    unsetenv("DMIM_THREADS");
    const std::string csv_free = run_simulate(args).to_csv();
    CHECK(csv_one == csv_three);
    CHECK(csv_one == csv_free);
    CHECK(csv_one.find("# seed=31\n") != std::string::npos);
}

TEST_CASE("cli binary: exit codes and output contract") {
    REQUIRE(!g_cli_bin.empty());

    std::string out;
    CHECK(run_cli("dmim --exponential --lambda 1", &out) == 0);
    CHECK(out.find("0.63212055882855767") != std::string::npos);

    CHECK(run_cli("--help", &out) == 0);
    CHECK(run_cli("dmim", &out) == 2);                      // no family selected
    CHECK(run_cli("dmim --no-such-flag", &out) == 2);       // unknown flag
    CHECK(run_cli("dmim --uniform --a 1 --b 0", &out) == 3); // numeric domain error
    CHECK(run_cli("ks --normal --sigma 1 --input /nonexistent/x.txt", &out) == 4);

    // LF-only line endings in CSV output
    CHECK(run_cli("dmim --uniform --a 0 --b 1", &out) == 0);
    CHECK(out.find('\r') == std::string::npos);
    CHECK(out.back() == '\n');
}

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli-bin") g_cli_bin = argv[i + 1];
    }
    doctest::Context context;
    context.applyCommandLine(argc, argv);
    return context.run();
}
