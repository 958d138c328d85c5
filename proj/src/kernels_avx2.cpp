// AVX2 variants of the LLR kernels. Compiled with -mavx2 and gated at
// runtime by a CPU check; every lane performs the same IEEE operations as
// the scalar reference, so results are bit-identical.

#include "ers/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace ers::kern {

namespace {

inline __m256d abs_pd(__m256d x) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

inline __m256d sign_of_product(__m256d a, __m256d b) {
    return _mm256_and_pd(_mm256_xor_pd(a, b), _mm256_set1_pd(-0.0));
}

void f_span_avx2(const double* a, const double* b, double* out, std::size_t len) {
    std::size_t t = 0;
    for (; t + 4 <= len; t += 4) {
        const __m256d va = _mm256_loadu_pd(a + t);
        const __m256d vb = _mm256_loadu_pd(b + t);
        const __m256d fa = abs_pd(va);
        const __m256d fb = abs_pd(vb);
        // min_pd returns the second operand on equality, matching the scalar
        // (fa < fb ? fa : fb) branch
        const __m256d mag = _mm256_min_pd(fb, fa);
        _mm256_storeu_pd(out + t, _mm256_or_pd(mag, sign_of_product(va, vb)));
    }
    if (t < len) scalar_ops().f_span(a + t, b + t, out + t, len - t);
}

void g_span_avx2(const double* a, const double* b, const std::uint8_t* u, double* out,
                 std::size_t len) {
    std::size_t t = 0;
    for (; t + 4 <= len; t += 4) {
        const __m256d va = _mm256_loadu_pd(a + t);
        const __m256d vb = _mm256_loadu_pd(b + t);
        std::uint32_t packed;
        __builtin_memcpy(&packed, u + t, 4);
        const __m256i bytes = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(packed)));
        const __m256d flip = _mm256_castsi256_pd(_mm256_slli_epi64(bytes, 63));
        _mm256_storeu_pd(out + t, _mm256_add_pd(_mm256_xor_pd(va, flip), vb));
    }
    if (t < len) scalar_ops().g_span(a + t, b + t, u + t, out + t, len - t);
}

void fg0_stage_avx2(double* a, double* b, std::size_t len) {
    std::size_t t = 0;
    for (; t + 4 <= len; t += 4) {
        const __m256d va = _mm256_loadu_pd(a + t);
        const __m256d vb = _mm256_loadu_pd(b + t);
        const __m256d fa = abs_pd(va);
        const __m256d fb = abs_pd(vb);
        const __m256d mag = _mm256_min_pd(fb, fa);
        _mm256_storeu_pd(a + t, _mm256_or_pd(mag, sign_of_product(va, vb)));
        _mm256_storeu_pd(b + t, _mm256_add_pd(va, vb));
    }
    if (t < len) scalar_ops().fg0_stage(a + t, b + t, len - t);
}

void bpsk_llr_avx2(const double* y, double scale, double clip, double* out, std::size_t len) {
    std::size_t t = 0;
    const __m256d vs = _mm256_set1_pd(scale);
    const __m256d hi = _mm256_set1_pd(clip);
    const __m256d lo = _mm256_set1_pd(-clip);
    for (; t + 4 <= len; t += 4) {
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(y + t), vs);
        v = _mm256_min_pd(hi, v);  // second operand returned on equality
        v = _mm256_max_pd(lo, v);
        _mm256_storeu_pd(out + t, v);
    }
    if (t < len) scalar_ops().bpsk_llr(y + t, scale, clip, out + t, len - t);
}

const Ops kAvx2 = {f_span_avx2, g_span_avx2, fg0_stage_avx2, bpsk_llr_avx2, "avx2"};

}  // namespace

const Ops* avx2_ops() {
    static const Ops* table = __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
    return table;
}

}  // namespace ers::kern

#else  // !__AVX2__

namespace ers::kern {
const Ops* avx2_ops() { return nullptr; }
}  // namespace ers::kern

#endif
