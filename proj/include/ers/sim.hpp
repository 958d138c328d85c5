// AWGN/BPSK channel and the end-to-end frame error rate harness. All
// randomness is counter-based per (seed, frame index), so results are
// independent of worker count and execution order; the stopping rule is
// evaluated at fixed batch boundaries for the same reason.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ers/decoder.hpp"
#include "ers/ers_code.hpp"
#include "ers/transform.hpp"

namespace ers {

struct ChannelConfig {
    double snr_db = 0.0;  // E_b/N_0
    double rate = 1.0;
    std::uint64_t seed = 1;
    double noise_var = 0.0;  // derived: 1/(2*rate*10^(snr_db/10))

    static ChannelConfig make(double snr_db, double rate, std::uint64_t seed);
};

// BPSK-modulates the binary composition of each symbol and adds white
// Gaussian noise from the frame's own stream. y is symbol-major, N*planes.
void transmit(std::span<const Symbol> codeword, int planes, const ChannelConfig& cfg,
              std::uint64_t frame, std::span<double> y_out);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};
WilsonInterval wilson_ci95(std::uint64_t errors, std::uint64_t trials);

struct DecoderSpec {
    enum class Kind { sc, scl } kind = Kind::sc;
    int list_size = 1;

    static DecoderSpec sc() { return {Kind::sc, 1}; }
    static DecoderSpec scl(int L) { return {Kind::scl, L}; }
    std::string name() const;
};

struct StopRule {
    std::uint64_t min_errors = 100;
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t batch = 256;  // stopping is checked at batch boundaries
};

struct FerResult {
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    double fer = 0.0;
    WilsonInterval ci95;
    std::string decoder;
    int N = 0;
    int K = 0;
    int L = 1;
    double snr_db = 0.0;
    double gf_ops_mean = 0.0;
    double flops_mean = 0.0;
    std::uint64_t seed = 0;
};

FerResult run_fer(const ErsCode& code, const PreTransform& pt, DecoderSpec dec,
                  const ChannelConfig& cfg, const StopRule& stop, int threads = 1,
                  double llr_max = 40.0);

std::string fer_csv_header();
std::string fer_csv_row(const FerResult& r);
std::string fer_to_json(const FerResult& r, const ErsCode& code, const PreTransform& pt,
                        const ChannelConfig& cfg, double llr_max);

// Observations file: one frame per line, N*planes space-separated reals.
void write_observation_frame(std::ostream& os, std::span<const double> y);
std::vector<std::vector<double>> read_observations(std::istream& is, int expected_len);

}  // namespace ers
