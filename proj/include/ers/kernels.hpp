// Data-parallel LLR kernels used by the decoders and the Monte-Carlo
// profiler. A scalar reference implementation is always available; an AVX2
// variant is selected at runtime when the CPU supports it. Both paths
// produce bit-identical results (same IEEE operations, no contraction).
//
// Selection can be forced with the environment variable ERS_SIMD=scalar|avx2.

#pragma once

#include <cstddef>
#include <cstdint>

namespace ers::kern {

// out[t] = sign(a[t] * b[t]) * min(|a[t]|, |b[t]|)          (min-sum check update)
using FSpanFn = void (*)(const double*, const double*, double*, std::size_t);
// out[t] = (u[t] ? -a[t] : a[t]) + b[t]                     (variable update)
using GSpanFn = void (*)(const double*, const double*, const std::uint8_t*, double*, std::size_t);
// fused in-place stage with all-zero partial sums:
//   fa = f(a[t], b[t]); b[t] = a[t] + b[t]; a[t] = fa
using Fg0StageFn = void (*)(double*, double*, std::size_t);
// out[t] = clamp(y[t] * scale, -clip, +clip)
using BpskLlrFn = void (*)(const double*, double, double, double*, std::size_t);

struct Ops {
    FSpanFn f_span;
    GSpanFn g_span;
    Fg0StageFn fg0_stage;
    BpskLlrFn bpsk_llr;
    const char* name;
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when unsupported by the build or the CPU
const Ops& ops();       // runtime-selected active table

double f_one(double a, double b);
double g_one(double a, double b, int u);

}  // namespace ers::kern
