#include "swarmgrad/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace swarmgrad {

namespace {

// splitmix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::next_uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian()
{
    // u1 in (0, 1] so the log is finite.
    double u1 = 1.0 - next_uniform();
    double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::next_gaussian(double mean, double stddev)
{
    return mean + stddev * next_gaussian();
}

int RngStream::next_sign()
{
    return (engine_() & 1u) ? 1 : -1;
}

std::uint64_t RngStream::next_u64()
{
    return engine_();
}

RngStream RngStream::derive(std::uint64_t index) const
{
    return RngStream(mix64(seed_ ^ mix64(index)));
}

RngStream RngStream::derive(std::string_view label) const
{
    return derive(fnv1a(label));
}

} // namespace swarmgrad
