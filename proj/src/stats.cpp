#include "siegel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "siegel/errors.hpp"

namespace siegel {

double neumaier_sum(const std::vector<double>& values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

namespace {

double median_of_means(const std::vector<double>& values) {
    const std::int64_t count = static_cast<std::int64_t>(values.size());
    constexpr std::int64_t kBlocks = 16;
    if (count < kBlocks) {
        return neumaier_sum(values) / static_cast<double>(count);
    }
    const std::int64_t base = count / kBlocks;
    const std::int64_t extra = count % kBlocks;
    std::vector<double> block_means;
    block_means.reserve(kBlocks);
    std::size_t pos = 0;
    for (std::int64_t b = 0; b < kBlocks; ++b) {
        const std::int64_t len = base + (b < extra ? 1 : 0);
        std::vector<double> block(values.begin() + pos,
                                  values.begin() + pos + len);
        pos += static_cast<std::size_t>(len);
        block_means.push_back(neumaier_sum(block) /
                              static_cast<double>(len));
    }
    std::sort(block_means.begin(), block_means.end());
    return 0.5 * (block_means[kBlocks / 2 - 1] + block_means[kBlocks / 2]);
}

} // namespace

MCEstimate mc_mean(const std::vector<double>& values) {
    const std::int64_t count = static_cast<std::int64_t>(values.size());
    if (count < 2) {
        throw TooFewSamples("mc_mean: need at least 2 values, got " +
                            std::to_string(count));
    }
    MCEstimate e;
    e.count = count;
    e.mean = neumaier_sum(values) / static_cast<double>(count);
    // Two-pass compensated variance with Bessel correction.
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - e.mean;
        sq[i] = d * d;
    }
    const double var = neumaier_sum(sq) / static_cast<double>(count - 1);
    e.std_error = std::sqrt(var / static_cast<double>(count));
    e.mom = median_of_means(values);
    return e;
}

namespace {

template <typename T, typename Fn>
std::vector<T> map_impl(std::int64_t count, int workers, const Fn& fn) {
    std::vector<T> out(static_cast<std::size_t>(count));
    if (count == 0) {
        return out;
    }
    workers = std::max(1, workers);
    if (workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) {
            out[static_cast<std::size_t>(i)] = fn(i);
        }
        return out;
    }
    const std::int64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) {
            break;
        }
        threads.emplace_back([&, w, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) {
                    out[static_cast<std::size_t>(i)] = fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace

std::vector<double> map_indexed(
    std::int64_t count, int workers,
    const std::function<double(std::int64_t)>& fn) {
    return map_impl<double>(count, workers, fn);
}

std::vector<std::array<double, 2>> map_indexed_pairs(
    std::int64_t count, int workers,
    const std::function<std::array<double, 2>(std::int64_t)>& fn) {
    return map_impl<std::array<double, 2>>(count, workers, fn);
}

} // namespace siegel
