#pragma once

#include <cstdint>

namespace dmim::mc {

// SplitMix64 (Vigna's public-domain generator). The state walks a fixed odd
// increment and the output is a bijective finalizer of the state, so output
// i of the stream keyed by s is mix64(s + (i+1)*kGamma): effectively a
// counter-based generator that can be split and skipped freely.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix64(state_);
    }

    // uniform in [0, 1), 53 random bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    static constexpr std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

private:
    std::uint64_t state_;
};

// Stream key for substream (a, b) of a master seed. A pure function of the
// triple, so per-trial streams are reproducible no matter which thread runs
// them or in what order.
constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t a,
                                           std::uint64_t b) {
    std::uint64_t h = SplitMix64::mix64(master + SplitMix64::kGamma * (a + 1));
    return SplitMix64::mix64(h + SplitMix64::kGamma * (b + 1));
}

} // namespace dmim::mc
