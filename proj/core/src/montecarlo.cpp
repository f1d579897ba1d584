#include "dmim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "dmim/measures.hpp"

namespace dmim::mc {
namespace {

class NormalSampler {
public:
    explicit NormalSampler(SplitMix64& rng) : rng_(rng) {}

    // Marsaglia polar method; caches the second variate of each pair.
    double next(double mu, double sigma) {
        if (has_spare_) {
            has_spare_ = false;
            return mu + sigma * spare_;
        }
        while (true) {
            const double u = 2.0 * rng_.next_unit() - 1.0;
            const double v = 2.0 * rng_.next_unit() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                const double factor = std::sqrt(-2.0 * std::log(s) / s);
                spare_ = v * factor;
                has_spare_ = true;
                return mu + sigma * u * factor;
            }
        }
    }

private:
    SplitMix64& rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

void sample_into(const DistributionSpec& spec, std::int64_t n, std::uint64_t seed,
                 std::vector<double>& out) {
    out.clear();
    out.reserve(static_cast<std::size_t>(n));
    SplitMix64 rng(seed);
    switch (spec.family()) {
        case Family::Uniform: {
            const auto& u = spec.as_uniform();
            const double width = u.b - u.a;
            for (std::int64_t i = 0; i < n; ++i) out.push_back(u.a + width * rng.next_unit());
            return;
        }
        case Family::Normal: {
            const auto& p = spec.as_normal();
            NormalSampler normal(rng);
            for (std::int64_t i = 0; i < n; ++i) out.push_back(normal.next(p.mu, p.sigma));
            return;
        }
        case Family::Exponential: {
            const double lambda = spec.as_exponential().lambda;
            for (std::int64_t i = 0; i < n; ++i) {
                out.push_back(-std::log1p(-rng.next_unit()) / lambda);
            }
            return;
        }
        case Family::Custom:
            throw UnsupportedFamily("sampling from a custom density is not supported");
    }
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Exceedance count for one epsilon cell, trials split over worker threads in
// contiguous blocks. Counts are integers, so the merge is exact and the
// result is independent of the block layout.
template <class Cdf>
std::int64_t count_exceedances(const DistributionSpec& spec, std::int64_t n, double d,
                               int trials, std::uint64_t master_seed,
                               std::uint64_t epsilon_index, const Cdf& cdf, int threads) {
    const int workers = std::max(1, std::min(threads, trials));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(workers), 0);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));

    auto run_block = [&](int worker, int begin, int end) {
        try {
            std::vector<double> buffer;
            std::int64_t count = 0;
            for (int trial = begin; trial < end; ++trial) {
                const std::uint64_t seed = derive_stream_seed(
                    master_seed, epsilon_index, static_cast<std::uint64_t>(trial));
                sample_into(spec, n, seed, buffer);
                std::sort(buffer.begin(), buffer.end());
                const double dn = gof::ks_statistic_sorted(std::span<const double>(buffer), cdf);
                if (dn > d) ++count;
            }
            counts[static_cast<std::size_t>(worker)] = count;
        } catch (...) {
            errors[static_cast<std::size_t>(worker)] = std::current_exception();
        }
    };

    if (workers == 1) {
        run_block(0, 0, trials);
    } else {
        const int block = (trials + workers - 1) / workers;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            const int begin = w * block;
            const int end = std::min(trials, begin + block);
            pool.emplace_back(run_block, w, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    return total;
}

std::int64_t run_cell(const DistributionSpec& spec, std::int64_t n, double d, int trials,
                      std::uint64_t master_seed, std::uint64_t epsilon_index, int threads) {
    switch (spec.family()) {
        case Family::Uniform: {
            const auto p = spec.as_uniform();
            auto cdf = [p](double x) {
                if (x <= p.a) return 0.0;
                if (x >= p.b) return 1.0;
                return (x - p.a) / (p.b - p.a);
            };
            return count_exceedances(spec, n, d, trials, master_seed, epsilon_index, cdf,
                                     threads);
        }
        case Family::Normal: {
            const auto p = spec.as_normal();
            const double inv = 1.0 / (p.sigma * std::numbers::sqrt2);
            auto cdf = [p, inv](double x) { return 0.5 * std::erfc((p.mu - x) * inv); };
            return count_exceedances(spec, n, d, trials, master_seed, epsilon_index, cdf,
                                     threads);
        }
        case Family::Exponential: {
            const double lambda = spec.as_exponential().lambda;
            auto cdf = [lambda](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-lambda * x); };
            return count_exceedances(spec, n, d, trials, master_seed, epsilon_index, cdf,
                                     threads);
        }
        case Family::Custom:
            throw UnsupportedFamily("simulation needs an analytic family");
    }
    throw InvalidParams("unreachable distribution family");
}

} // namespace

std::vector<double> sample(const DistributionSpec& spec, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidParams("sample requires n >= 1");
    std::vector<double> out;
    sample_into(spec, n, seed, out);
    return out;
}

std::vector<TrialReport> estimate_exceedance(const SimConfig& config) {
    if (config.trials < 1) throw InvalidParams("simulation requires trials >= 1");
    if (config.epsilon_grid.empty()) throw InvalidParams("epsilon grid is empty");
    for (double eps : config.epsilon_grid) {
        if (!(eps > 0.0 && eps < 1.0)) throw InvalidParams("epsilon grid values must be in (0,1)");
    }
    if (config.d.has_value() == config.beta.has_value()) {
        throw InvalidParams("exactly one of d and beta must be set");
    }
    if (config.d && !(*config.d > 0.0)) throw InvalidParams("d must be positive");

    const double sigma = config.spec.stddev();
    std::optional<double> l_x;
    if (config.n_rule == NRule::WithLX) l_x = dmim(config.spec);
    const int threads = resolve_threads(config.max_threads);

    std::vector<TrialReport> reports;
    reports.reserve(config.epsilon_grid.size());
    for (std::size_t i = 0; i < config.epsilon_grid.size(); ++i) {
        const double eps = config.epsilon_grid[i];
        const std::int64_t n = gof::required_samples(eps, sigma, l_x);
        const double d = config.d ? *config.d : gof::d_from(eps, *config.beta, sigma);
        const std::int64_t count = run_cell(config.spec, n, d, config.trials,
                                            config.master_seed, i, threads);
        const double p = static_cast<double>(count) / config.trials;
        reports.push_back(TrialReport{eps, n, d, p, config.trials,
                                      std::sqrt(p * (1.0 - p) / config.trials),
                                      config.master_seed});
    }
    return reports;
}

PlanCheck verify_plan(const DistributionSpec& spec, double epsilon, double beta,
                      int trials, std::uint64_t seed) {
    SimConfig config{spec, {epsilon}, std::nullopt, beta, trials, seed, NRule::WithLX, 0};
    const TrialReport report = estimate_exceedance(config).front();
    const double bound = gof::ks_tail_upper_bound(report.n, report.d);
    const bool holds = report.exceedance_estimate + 3.0 * report.std_error < beta;
    return PlanCheck{report.exceedance_estimate, bound, holds};
}

} // namespace dmim::mc
