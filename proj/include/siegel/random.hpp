#pragma once

#include <cstdint>
#include <string_view>

namespace siegel {

// Counter-based splittable randomness source. The stream for (master_seed,
// index) is a pure function of those two integers: draw j is
// mix64(key + j·γ) with key = mix64(mix64(master_seed) + index·γ) and γ the
// odd golden-ratio constant. Since γ is odd, index ↦ key is injective for a
// fixed seed, so distinct indices give provably distinct streams, and the
// j-counter is likewise collision-free within a stream. This is what makes
// parallel estimation schedule-independent: sample i of an experiment always
// uses the stream at index base+i, no matter which worker computes it.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t index() const { return index_; }

    // Next raw 64-bit draw.
    std::uint64_t next_u64();

    // Uniform double in [0, 1), 53-bit resolution.
    double next_double();

    // Unbiased uniform integer in [0, bound) via rejection; bound ≥ 1.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t master_seed_;
    std::uint64_t index_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Deterministic, collision-free stream derivation; equal arguments always
// yield identical streams.
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index);

// Derive a sub-seed for an independent family of streams (e.g. one family
// per named check). Deterministic; distinct tags give unrelated families.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag);

// Stable 64-bit FNV-1a hash of a name, for tag derivation from check names.
std::uint64_t hash_tag(std::string_view name);

} // namespace siegel
