#include "ers/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>

namespace ers::kern {

namespace {

constexpr std::uint64_t kSignMask = 0x8000000000000000ull;

inline double apply_sign(double mag, std::uint64_t sign_bit) {
    return std::bit_cast<double>(std::bit_cast<std::uint64_t>(mag) | sign_bit);
}

inline double fabs_bits(double x) {
    return std::bit_cast<double>(std::bit_cast<std::uint64_t>(x) & ~kSignMask);
}

void f_span_scalar(const double* a, const double* b, double* out, std::size_t len) {
    for (std::size_t t = 0; t < len; ++t) {
        const std::uint64_t sign =
            (std::bit_cast<std::uint64_t>(a[t]) ^ std::bit_cast<std::uint64_t>(b[t])) & kSignMask;
        const double fa = fabs_bits(a[t]);
        const double fb = fabs_bits(b[t]);
        out[t] = apply_sign(fa < fb ? fa : fb, sign);
    }
}

void g_span_scalar(const double* a, const double* b, const std::uint8_t* u, double* out,
                   std::size_t len) {
    for (std::size_t t = 0; t < len; ++t) {
        const std::uint64_t flip = u[t] ? kSignMask : 0ull;
        out[t] = std::bit_cast<double>(std::bit_cast<std::uint64_t>(a[t]) ^ flip) + b[t];
    }
}

void fg0_stage_scalar(double* a, double* b, std::size_t len) {
    for (std::size_t t = 0; t < len; ++t) {
        const double x = a[t];
        const double y = b[t];
        const std::uint64_t sign =
            (std::bit_cast<std::uint64_t>(x) ^ std::bit_cast<std::uint64_t>(y)) & kSignMask;
        const double fx = fabs_bits(x);
        const double fy = fabs_bits(y);
        a[t] = apply_sign(fx < fy ? fx : fy, sign);
        b[t] = x + y;
    }
}

void bpsk_llr_scalar(const double* y, double scale, double clip, double* out, std::size_t len) {
    for (std::size_t t = 0; t < len; ++t) {
        double v = y[t] * scale;
        v = v < clip ? v : clip;
        v = v > -clip ? v : -clip;
        out[t] = v;
    }
}

const Ops kScalar = {f_span_scalar, g_span_scalar, fg0_stage_scalar, bpsk_llr_scalar, "scalar"};

const Ops* resolve_active() {
    if (const char* env = std::getenv("ERS_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return &kScalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_ops()) return avx2_ops();
    }
    if (const Ops* v = avx2_ops()) return v;
    return &kScalar;
}

}  // namespace

const Ops& scalar_ops() { return kScalar; }

const Ops& ops() {
    static const Ops* active = resolve_active();
    return *active;
}

double f_one(double a, double b) {
    double out;
    f_span_scalar(&a, &b, &out, 1);
    return out;
}

double g_one(double a, double b, int u) {
    const std::uint8_t uu = static_cast<std::uint8_t>(u);
    double out;
    g_span_scalar(&a, &b, &uu, &out, 1);
    return out;
}

}  // namespace ers::kern
