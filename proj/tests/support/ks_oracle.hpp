#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

// Brute-force KS oracle, independent of the order-statistic formula in the
// library: scans a dense grid and compares F(x) against the empirical step
// function's value and its left limit (the sup over the completed graph of
// F_n, which is what D_n measures; the step's left limits carry half the
// candidates). The grid is augmented with the sample points themselves, where
// the sup lives; a uniform grid alone cannot pin it down to 1e-9.
namespace testsupport {

inline double ks_bruteforce(const std::vector<double>& samples,
                            const std::function<double(double)>& cdf,
                            double pad, int grid_points = 100000) {
    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(grid_points) + sorted.size());
    const double lo = sorted.front() - pad;
    const double hi = sorted.back() + pad;
    for (int i = 0; i < grid_points; ++i) {
        grid.push_back(lo + (hi - lo) * i / (grid_points - 1.0));
    }
    grid.insert(grid.end(), sorted.begin(), sorted.end());

    double d = 0.0;
    for (double x : grid) {
        const double at = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) -
                                              sorted.begin()) /
                          n;
        const double before = static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(),
                                                                   x) -
                                                  sorted.begin()) /
                              n;
        const double fx = cdf(x);
        d = std::max({d, std::abs(at - fx), std::abs(before - fx)});
    }
    return d;
}

} // namespace testsupport
