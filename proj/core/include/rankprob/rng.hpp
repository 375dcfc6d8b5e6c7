#pragma once

#include <array>
#include <cstdint>

namespace rankprob::rng {

/// Counter-based stream generator (Philox4x32-10).  A (seed, stream_id)
/// pair names an independent stream and always reproduces the same sequence,
/// so trial i can run on stream i under any scheduling and the aggregate
/// stays deterministic.
class RngState {
public:
    RngState(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_(stream_id) {}

    static constexpr const char* kGeneratorName = "philox4x32-10";

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53-bit resolution.
    double next_uniform();

    /// Standard normal (mean 0, variance 1) via the polar Box-Muller
    /// transform; generates in pairs and caches the spare.
    double next_normal();

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int block_pos_ = 4;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace rankprob::rng
