#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace swarmgrad {

/// Deterministic, platform-independent random stream.
///
/// The engine is std::mt19937_64 (its output sequence is fixed by the
/// standard), but all conversions to doubles are done here rather than
/// through std distributions, whose output is implementation-defined.
/// Identical seeds therefore give identical draw sequences on every
/// platform, which the golden tests pin.
///
/// Sub-streams derive from the stored seed, not from the current engine
/// position: derive(i) yields the same child no matter how many draws
/// the parent has made. Each particle / island / worker must own its own
/// stream; streams are never shared between concurrent consumers.
class RngStream
{
public:
    explicit RngStream(std::uint64_t seed = 0);

    /// Uniform draw in [0, 1) with 53 random bits.
    double next_uniform();

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double next_gaussian();
    double next_gaussian(double mean, double stddev);

    /// Rademacher draw, +1 or -1 with equal probability.
    int next_sign();

    std::uint64_t next_u64();

    /// Child stream deterministic in (this stream's seed, index).
    RngStream derive(std::uint64_t index) const;
    /// Child stream keyed by a label (FNV-1a of the label, then mixed).
    RngStream derive(std::string_view label) const;

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace swarmgrad
