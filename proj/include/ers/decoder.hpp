// Successive cancellation and SC list decoding of an eRS code as n coupled
// binary polar decoders. Decisions are taken symbol by symbol: information
// positions take hard (SC) or listed (SCL) symbol hypotheses, frozen
// positions are forced to the dynamic linear combination of earlier
// transformed-message symbols.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ers/transform.hpp"

namespace ers {

struct OpCounters {
    std::uint64_t gf_ops = 0;  // GF(2^n) multiplications + additions, 1 each
    // Real adds/compares/mins, 1 each, counted as implemented: an f update is
    // one min and a g update one addition (sign handling is bit arithmetic),
    // candidate metrics cost one addition each, and selection counts its
    // comparator invocations. Bit-level partial-sum updates are not flops.
    std::uint64_t flops = 0;
};

struct LlrFrame {
    int N = 0;
    int planes = 0;
    std::vector<double> v;  // plane-major: v[j * N + m]

    double at(int plane, int pos) const { return v[std::size_t(plane) * N + pos]; }
    const double* plane(int j) const { return v.data() + std::size_t(j) * N; }
};

// De-permutes the per-symbol observations and maps them to clipped bit LLRs,
// 2y/sigma^2 under BPSK 0 -> +1. y is symbol-major: y[i*n + j] is bit j of
// codeword symbol i.
LlrFrame llr_from_channel(std::span<const double> y, double noise_var, const Permutation& perm,
                          int planes, double llr_max = 40.0);

// Min-sum check and variable updates (scalar convenience wrappers).
double f_fun(double a, double b);
double g_fun(double a, double b, int u);

struct DecodeResult {
    std::vector<Symbol> u_hat;    // length N, satisfies every frozen constraint
    std::vector<Symbol> message;  // length K, recovered as F' E
    double metric = 0.0;          // accumulated penalty of the selected path
    OpCounters counters;
};

DecodeResult sc_decode(const PreTransform& pt, const ErsCode& code, const LlrFrame& llr);

// List decoding with deterministic tie-breaking by (parent path index,
// symbol value). The optional trace receives one JSON line per symbol index.
DecodeResult scl_decode(const PreTransform& pt, const ErsCode& code, const LlrFrame& llr,
                        int list_size, std::ostream* trace = nullptr);

}  // namespace ers
