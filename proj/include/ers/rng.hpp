// Counter-based random streams: each (seed, stream, frame) triple opens an
// independent generator, so Monte-Carlo results do not depend on worker
// count or execution order.

#pragma once

#include <cstdint>
#include <span>

namespace ers {

class FrameRng {
public:
    FrameRng(std::uint64_t seed, std::uint64_t frame, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // uniform in (0, 1]
    double uniform();

    // standard normal via Box-Muller (pair cached)
    double gaussian();

    void fill_gaussian(std::span<double> out, double mean, double stddev);

    std::uint64_t next_below(std::uint64_t bound);  // uniform in [0, bound)

private:
    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace ers
