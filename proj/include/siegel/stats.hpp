#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace siegel {

// A Monte-Carlo estimate bundle. std_error is the Bessel-corrected sample
// standard deviation divided by √count. mom is the median of 16 contiguous
// block means — robust against the heavy tails of lattice-count statistics —
// and equals the plain mean when count < 16.
struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t count = 0;
    double mom = 0.0;
};

// Compensated (Neumaier) summation; deterministic left-to-right order.
double neumaier_sum(const std::vector<double>& values);

// Builds an MCEstimate from raw values; throws TooFewSamples for count < 2.
MCEstimate mc_mean(const std::vector<double>& values);

// Evaluates fn(i) for i in [0, count) into a preallocated vector using the
// given number of worker threads over contiguous index ranges. Entry i
// depends only on i, so the result is byte-identical for every worker count;
// all downstream reductions are sequential.
std::vector<double> map_indexed(std::int64_t count, int workers,
                                const std::function<double(std::int64_t)>& fn);

// Same, for functions producing a pair per index (paired estimators).
std::vector<std::array<double, 2>> map_indexed_pairs(
    std::int64_t count, int workers,
    const std::function<std::array<double, 2>(std::int64_t)>& fn);

} // namespace siegel
