#include "siegel/random.hpp"

namespace siegel {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer: a 64-bit bijection with strong avalanche.
std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

} // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t index)
    : master_seed_(master_seed),
      index_(index),
      key_(mix64(mix64(master_seed) + index * kGamma)) {}

std::uint64_t RandomStream::next_u64() {
    return mix64(key_ + (counter_++) * kGamma);
}

double RandomStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::next_below(std::uint64_t bound) {
    // Accept draws below the largest multiple of bound; expected < 2 draws.
    const std::uint64_t limit = (~0ULL / bound) * bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(master_seed, index);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) {
    return mix64(mix64(master_seed) ^ mix64(tag + kGamma));
}

std::uint64_t hash_tag(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace siegel
