// Polarized-subchannel error probabilities (Gaussian approximation and
// genie-aided Monte-Carlo), the product-form SC error probability, and the
// rate-driven lower bound over the index set D.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ers {

// E_b/N_0 in dB -> AWGN noise variance per BPSK dimension.
double noise_variance(double snr_db, double rate);

enum class ProfileMethod { gaussian_approx, monte_carlo };

struct SubchannelProfile {
    std::vector<double> pe;  // P_e(W_i), i = 0..N-1
    ProfileMethod method = ProfileMethod::gaussian_approx;
    double snr_db = 0.0;
    double rate = 0.0;
    double noise_var = 0.0;
    std::uint64_t frames = 0;  // monte_carlo only
    std::uint64_t seed = 0;    // monte_carlo only
    std::vector<double> stderr_pe;  // binomial standard error, monte_carlo only

    int N() const { return static_cast<int>(pe.size()); }
};

// Density evolution under the Gaussian approximation with the Chung
// two-piece phi. Deterministic.
SubchannelProfile ga_profile(int N, double snr_db, double rate);

// Genie-aided successive cancellation over all-zero transmission: per frame
// a full min-sum butterfly produces every leaf LLR with corrected partial
// sums, and negative leaves count as first errors. Bit-exact reproducible
// for fixed (seed, frames) regardless of thread count.
SubchannelProfile mc_profile(int N, double snr_db, double rate, std::uint64_t frames,
                             std::uint64_t seed, int threads = 1);

// 1 - prod_{i in set} (1 - pe_i)^planes, evaluated in the log domain.
double sc_error_prob(const SubchannelProfile& profile, std::span<const int> index_set,
                     int planes);

// Standard error of sc_error_prob propagated from a Monte-Carlo profile's
// per-index binomial errors (0 for GA profiles).
double sc_error_prob_stderr(const SubchannelProfile& profile, std::span<const int> index_set,
                            int planes);

struct BoundResult {
    double prob = 0.0;
    int a = 0;
    std::vector<int> d;
};

// SC performance lower bound: the product form over D = {2^a-1, 2*2^a-1, ...}.
BoundResult lower_bound(const SubchannelProfile& profile, int N, int K);

struct DegradationReport {
    struct Entry {
        int theta = 0;
        int delta = 0;
        double pe_last = 0.0;   // P_e(W_{theta*2^a - 1})
        double pe_other = 0.0;  // P_e(W_{theta*2^a - delta})
        double z = 0.0;         // violation significance (MC profiles)
        bool significant = false;
    };
    int comparisons = 0;
    std::vector<Entry> violations;
};

// Checks that the last subchannel of every length-2^a block has the lowest
// error probability. MC violations carry a z-score against the combined
// binomial error; |z| < 2 is flagged as below significance.
DegradationReport degradation_check(const SubchannelProfile& profile, int a);

std::string profile_to_json(const SubchannelProfile& profile);
SubchannelProfile profile_from_json(const std::string& text);

// Chung two-piece phi and its bisection inverse (exposed for tests).
double ga_phi(double x);
double ga_phi_inv(double y);

}  // namespace ers
