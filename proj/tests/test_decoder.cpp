#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "ers/analysis.hpp"
#include "ers/decoder.hpp"
#include "ers/rng.hpp"
#include "ers/sim.hpp"
#include "oracles.hpp"

using namespace ers;

namespace {

std::vector<Symbol> random_msg(std::mt19937_64& rng, int K, int q) {
    std::vector<Symbol> m(K);
    for (auto& s : m) s = Symbol(rng() % q);
    return m;
}

// One noisy frame: encode msg, transmit at snr_db, return the LLR frame.
LlrFrame noisy_frame(const ErsCode& code, const PreTransform& pt, std::span<const Symbol> msg,
                     double snr_db, std::uint64_t seed, std::uint64_t frame_idx) {
    auto cfg = ChannelConfig::make(snr_db, code.rate(), seed);
    auto cw = encode_poly(code, msg);
    std::vector<double> y(std::size_t(code.N) * code.field.n());
    transmit(cw, code.field.n(), cfg, frame_idx, y);
    return llr_from_channel(y, cfg.noise_var, pt.perm, code.field.n());
}

// Recomputes a path metric from scratch by forcing the path's plane bits
// through an independent tree evaluation.
double metric_oracle(const PreTransform& pt, const LlrFrame& llr,
                     std::span<const Symbol> u_hat) {
    const int N = llr.N;
    double total = 0.0;
    std::vector<std::uint8_t> bits(N);
    std::vector<std::uint8_t> enc;
    for (int j = 0; j < llr.planes; ++j) {
        for (int i = 0; i < N; ++i) bits[i] = static_cast<std::uint8_t>((u_hat[i] >> j) & 1);
        std::span<const double> plane{llr.plane(j), std::size_t(N)};
        total += oracle::forced_penalty(plane, bits, enc);
    }
    return total;
}

}  // namespace

TEST_CASE("llr_from_channel formula and layout") {
    auto perm = Permutation::identity(4);
    // one symbol per position, 2 planes: y[i*2 + j]
    std::vector<double> y{0.5, -0.25, 1.0, 0.0, 100.0, -100.0, 0.125, 0.25};
    auto frame = llr_from_channel(y, 1.0, perm, 2, 40.0);
    CHECK(frame.at(0, 0) == 1.0);   // 2*y/sigma^2
    CHECK(frame.at(1, 0) == -0.5);
    CHECK(frame.at(0, 2) == 40.0);  // clipped
    CHECK(frame.at(1, 2) == -40.0);
    // sigma^2/2 observation maps to exactly 1.0
    std::vector<double> y2{0.35, 0.35};
    auto f2 = llr_from_channel(y2, 0.7, Permutation::identity(1), 2, 40.0);
    CHECK(f2.at(0, 0) == 1.0);

    // de-permutation happens at symbol granularity
    auto p = Permutation::from_map({1, 0, 2, 3});
    auto f3 = llr_from_channel(y, 1.0, p, 2, 40.0);
    CHECK(f3.at(0, 0) == 2.0 * y[1 * 2 + 0]);
    CHECK(f3.at(1, 0) == 2.0 * y[1 * 2 + 1]);
}

TEST_CASE("noiseless SC recovers every message") {
    auto code = code_new(FieldSpec::make(5), 16);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    std::mt19937_64 rng(123);
    for (int t = 0; t < 1000; ++t) {
        auto msg = random_msg(rng, 16, 32);
        auto llr = noisy_frame(code, pt, msg, 100.0, 42, t);
        auto res = sc_decode(pt, code, llr);
        REQUIRE(res.message == msg);
    }
}

TEST_CASE("frozen positions follow the dynamic constraint regardless of their LLRs") {
    auto code = code_new(FieldSpec::make(2), 1);  // N = 4, K = 1: three frozen positions
    auto pt = pretransform(code, Permutation::identity(4));
    // adversarial LLRs pulling every bit toward 1
    LlrFrame llr;
    llr.N = 4;
    llr.planes = 2;
    llr.v.assign(8, -5.0);
    auto res = sc_decode(pt, code, llr);
    const auto& f = code.field;
    std::vector<Symbol> fprime;
    for (int i = 0; i < 4; ++i)
        if (pt.cls[i] == FrozenClass::info) fprime.push_back(res.u_hat[i]);
    for (int i = 0; i < 4; ++i) {
        if (pt.cls[i] == FrozenClass::info) continue;
        Symbol expect = 0;
        for (const auto& term : pt.frozen_terms[i]) expect ^= f.mul(fprime[term.t], term.coeff);
        CHECK(res.u_hat[i] == expect);
    }
}

TEST_CASE("SCL(1) is SC") {
    auto code = code_new(FieldSpec::make(5), 15);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        auto msg = random_msg(rng, 15, 32);
        auto llr = noisy_frame(code, pt, msg, 6.0, 99, t);
        auto sc = sc_decode(pt, code, llr);
        auto scl = scl_decode(pt, code, llr, 1);
        CHECK(sc.message == scl.message);
        CHECK(sc.u_hat == scl.u_hat);
        CHECK(sc.metric == doctest::Approx(scl.metric).epsilon(1e-12));
    }
}

TEST_CASE("noiseless SCL decodes with zero metric") {
    auto code = code_new(FieldSpec::make(4), 8);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    std::mt19937_64 rng(17);
    auto msg = random_msg(rng, 8, 16);
    auto llr = noisy_frame(code, pt, msg, 100.0, 5, 0);
    auto res = scl_decode(pt, code, llr, 8);
    CHECK(res.message == msg);
    CHECK(res.metric == 0.0);
}

TEST_CASE("larger lists find better paths") {
    // Exact per-frame monotonicity of the selected metric in L does NOT hold
    // for 2^n-way splits: a lineage kept at list size L can be displaced at
    // 2L by prefixes that later pay large dynamic-frozen penalties. What
    // does hold, and is asserted here: a wide list is never beaten by a
    // narrow one on the same frame, and the mean selected metric improves.
    auto code = code_new(FieldSpec::make(5), 15);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    std::mt19937_64 rng(31);
    const int frames = 400;
    double mean[4] = {0, 0, 0, 0};
    const int lists[4] = {1, 2, 4, 8};
    int wide_beaten = 0;
    for (int t = 0; t < frames; ++t) {
        auto msg = random_msg(rng, 15, 32);
        auto llr = noisy_frame(code, pt, msg, 4.0, 1234, t);
        const double wide = scl_decode(pt, code, llr, 256).metric;
        for (int li = 0; li < 4; ++li) {
            const double m = scl_decode(pt, code, llr, lists[li]).metric;
            mean[li] += m;
            if (m < wide - 1e-9) ++wide_beaten;
        }
    }
    CHECK(wide_beaten == 0);
    CHECK(mean[1] < mean[0]);
    CHECK(mean[2] < mean[1]);
    CHECK(mean[3] < mean[2]);
}

TEST_CASE("decoder output always satisfies the frozen constraints and re-encodes") {
    auto code = code_new(FieldSpec::make(4), 9);
    std::mt19937_64 rng(53);
    std::vector<int> pm(16);
    std::iota(pm.begin(), pm.end(), 0);
    std::shuffle(pm.begin(), pm.end(), rng);
    auto pt = pretransform(code, Permutation::from_map(pm));
    const auto& f = code.field;
    for (int t = 0; t < 200; ++t) {
        auto msg = random_msg(rng, 9, 16);
        auto llr = noisy_frame(code, pt, msg, 2.0, 7, t);  // noisy enough to cause errors
        for (int L : {1, 4}) {
            auto res = L == 1 ? sc_decode(pt, code, llr) : scl_decode(pt, code, llr, L);
            std::vector<Symbol> fprime;
            for (int i = 0; i < 16; ++i)
                if (pt.cls[i] == FrozenClass::info) fprime.push_back(res.u_hat[i]);
            for (int i = 0; i < 16; ++i) {
                if (pt.cls[i] == FrozenClass::info) continue;
                Symbol expect = 0;
                for (const auto& term : pt.frozen_terms[i])
                    expect ^= f.mul(fprime[term.t], term.coeff);
                CHECK(res.u_hat[i] == expect);
            }
            // closure: the decoded message re-encodes to the codeword implied by u_hat
            CHECK(encode_via_transform(pt, code, res.message) ==
                  [&] {
                      std::vector<Symbol> cw(16, 0);
                      std::vector<std::uint8_t> plane(16);
                      for (int j = 0; j < 4; ++j) {
                          for (int i = 0; i < 16; ++i)
                              plane[i] = std::uint8_t((res.u_hat[i] >> j) & 1);
                          polar_encode_plane(plane);
                          for (int m = 0; m < 16; ++m)
                              if (plane[m]) cw[pt.perm.map[m]] |= Symbol(1) << j;
                      }
                      return cw;
                  }());
        }
    }
}

TEST_CASE("path metric equals independent recomputation") {
    auto code = code_new(FieldSpec::make(4), 7);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    std::mt19937_64 rng(61);
    for (int t = 0; t < 100; ++t) {
        auto msg = random_msg(rng, 7, 16);
        auto llr = noisy_frame(code, pt, msg, 3.0, 11, t);
        for (int L : {1, 2, 8}) {
            auto res = scl_decode(pt, code, llr, L);
            const double oracle_metric = metric_oracle(pt, llr, res.u_hat);
            CHECK(res.metric == doctest::Approx(oracle_metric).epsilon(1e-9));
        }
    }
}

TEST_CASE("list decoding equals exhaustive search at toy scale") {
    // N = 4 over GF(4); with L = q^K nothing is ever pruned
    for (int K : {1, 2}) {
        auto code = code_new(FieldSpec::make(2), K);
        auto pt = pretransform(code, Permutation::natural_locator(code));
        const int q = 4;
        const int L = K == 1 ? 4 : 16;
        std::mt19937_64 rng(71 + K);
        for (int t = 0; t < 1000; ++t) {
            auto msg = random_msg(rng, K, q);
            auto llr = noisy_frame(code, pt, msg, 1.0, 13, t);
            auto res = scl_decode(pt, code, llr, L);

            // brute force: minimum forced-path penalty over all transformed messages
            double best = 1e300;
            std::vector<Symbol> best_msg;
            std::vector<Symbol> fprime(K);
            for (int x = 0; x < (K == 1 ? 4 : 16); ++x) {
                fprime[0] = Symbol(x % 4);
                if (K == 2) fprime[1] = Symbol(x / 4);
                auto u = gf_vecmat(code.field, fprime, pt.M);
                const double pen = metric_oracle(pt, llr, u);
                if (pen < best - 1e-12) {
                    best = pen;
                    best_msg = gf_vecmat(code.field, fprime, pt.E);
                }
            }
            CHECK(res.message == best_msg);
            CHECK(res.metric == doctest::Approx(best).epsilon(1e-9));
        }
    }
}

TEST_CASE("operation counters") {
    auto code = code_new(FieldSpec::make(5), 15);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    std::mt19937_64 rng(83);
    auto msg = random_msg(rng, 15, 32);
    auto llr = noisy_frame(code, pt, msg, 6.0, 3, 0);
    auto sc = sc_decode(pt, code, llr);
    auto scl2 = scl_decode(pt, code, llr, 2);
    CHECK(sc.counters.flops > 0);
    CHECK(sc.counters.gf_ops > 0);
    CHECK(sc.counters.flops < scl2.counters.flops);
    CHECK(sc.counters.gf_ops < scl2.counters.gf_ops);
}

TEST_CASE("trace output is one JSON line per position") {
    auto code = code_new(FieldSpec::make(3), 4);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    std::mt19937_64 rng(91);
    auto msg = random_msg(rng, 4, 8);
    auto llr = noisy_frame(code, pt, msg, 6.0, 21, 0);
    std::ostringstream trace;
    scl_decode(pt, code, llr, 2, &trace);
    int lines = 0;
    std::string line;
    std::istringstream is(trace.str());
    while (std::getline(is, line)) {
        ++lines;
        CHECK(line.find("\"i\":") != std::string::npos);
        CHECK(line.find("\"class\":") != std::string::npos);
        CHECK(line.find("\"metrics\":") != std::string::npos);
    }
    CHECK(lines == 8);
}
