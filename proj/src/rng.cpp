#include "ers/rng.hpp"

#include <cmath>

namespace ers {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

FrameRng::FrameRng(std::uint64_t seed, std::uint64_t frame, std::uint64_t stream) {
    // xoshiro256++ state expanded from the triple with splitmix64
    std::uint64_t x = seed;
    x ^= 0x632be59bd9b4e019ull ^ (frame * 0xd1342543de82ef95ull) ^ rotl(stream, 32);
    for (auto& s : s_) s = splitmix64(x);
    // all-zero state is unreachable after splitmix64 mixing of distinct words,
    // but guard anyway
    if (!(s_[0] | s_[1] | s_[2] | s_[3])) s_[0] = 1;
}

std::uint64_t FrameRng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double FrameRng::uniform() {
    // 53 random bits mapped to (0, 1]
    return double((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double FrameRng::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

void FrameRng::fill_gaussian(std::span<double> out, double mean, double stddev) {
    for (auto& v : out) v = mean + stddev * gaussian();
}

std::uint64_t FrameRng::next_below(std::uint64_t bound) {
    // modulo bias is irrelevant at our bounds (< 2^16)
    return next_u64() % bound;
}

}  // namespace ers
