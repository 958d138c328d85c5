#include "ers/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ers/kernels.hpp"

namespace ers {

double f_fun(double a, double b) { return kern::f_one(a, b); }
double g_fun(double a, double b, int u) { return kern::g_one(a, b, u); }

LlrFrame llr_from_channel(std::span<const double> y, double noise_var, const Permutation& perm,
                          int planes, double llr_max) {
    const int N = perm.size();
    if (static_cast<int>(y.size()) != N * planes)
        throw std::invalid_argument("observation length must be N*n");
    if (noise_var <= 0.0) throw std::invalid_argument("noise variance must be positive");
    LlrFrame frame;
    frame.N = N;
    frame.planes = planes;
    frame.v.resize(std::size_t(N) * planes);
    std::vector<double> gathered(N);
    const double scale = 2.0 / noise_var;
    for (int j = 0; j < planes; ++j) {
        for (int m = 0; m < N; ++m) gathered[m] = y[std::size_t(perm.map[m]) * planes + j];
        kern::ops().bpsk_llr(gathered.data(), scale, llr_max,
                             frame.v.data() + std::size_t(j) * N, N);
    }
    return frame;
}

namespace {

// Per-path per-plane layered state. Layer s in [0, n) holds the 2^s LLRs and
// left partial sums of the block currently being worked; layer n is the
// shared channel LLR plane. Layer s starts at offset 2^s - 1 in a flat
// buffer of N - 1 entries per plane.
struct Geometry {
    int n = 0;
    int N = 0;
    int planes = 0;
    int per_plane = 0;  // N - 1

    int layer_off(int s) const { return (1 << s) - 1; }
    std::size_t llr_stride() const { return std::size_t(planes) * per_plane; }
    std::size_t ps_stride() const { return std::size_t(planes) * per_plane; }
};

struct PathPool {
    Geometry geo;
    std::vector<double> llr;
    std::vector<std::uint8_t> ps;
    std::vector<Symbol> uhat;
    std::vector<Symbol> fprime;
    std::vector<double> metric;
    int K = 0;

    void init(const Geometry& g, int capacity, int k) {
        geo = g;
        K = k;
        llr.assign(std::size_t(capacity) * g.llr_stride(), 0.0);
        ps.assign(std::size_t(capacity) * g.ps_stride(), 0);
        uhat.assign(std::size_t(capacity) * g.N, 0);
        fprime.assign(std::size_t(capacity) * k, 0);
        metric.assign(capacity, 0.0);
    }

    double* llr_plane(int path, int j) {
        return llr.data() + std::size_t(path) * geo.llr_stride() + std::size_t(j) * geo.per_plane;
    }
    std::uint8_t* ps_plane(int path, int j) {
        return ps.data() + std::size_t(path) * geo.ps_stride() + std::size_t(j) * geo.per_plane;
    }
    Symbol* uhat_of(int path) { return uhat.data() + std::size_t(path) * geo.N; }
    Symbol* fprime_of(int path) { return fprime.data() + std::size_t(path) * K; }

    void copy_path(int dst, const PathPool& src_pool, int src) {
        const auto ls = geo.llr_stride();
        std::memcpy(llr.data() + dst * ls, src_pool.llr.data() + src * ls, ls * sizeof(double));
        const auto ps_s = geo.ps_stride();
        std::memcpy(ps.data() + dst * ps_s, src_pool.ps.data() + src * ps_s, ps_s);
        std::memcpy(uhat.data() + std::size_t(dst) * geo.N,
                    src_pool.uhat.data() + std::size_t(src) * geo.N, geo.N * sizeof(Symbol));
        std::memcpy(fprime.data() + std::size_t(dst) * K,
                    src_pool.fprime.data() + std::size_t(src) * K, K * sizeof(Symbol));
        metric[dst] = src_pool.metric[src];
    }
};

// Runs the f/g schedule that makes the layer-0 LLR of leaf i available.
// Returns it. Each produced value costs one flop: f performs one min (the
// sign handling is bit arithmetic) and g one addition.
double update_to_leaf(const Geometry& geo, const kern::Ops& k, double* path_llr,
                      const std::uint8_t* path_ps, const double* chan, int i,
                      OpCounters& ctr) {
    const int n = geo.n;
    auto layer = [&](int s) { return path_llr + geo.layer_off(s); };
    if (i == 0) {
        for (int s = n - 1; s >= 0; --s) {
            const int half = 1 << s;
            const double* src = (s + 1 == n) ? chan : layer(s + 1);
            k.f_span(src, src + half, layer(s), half);
            ctr.flops += std::uint64_t(half);
        }
    } else {
        const int l = std::countr_zero(static_cast<unsigned>(i));
        const int half = 1 << l;
        const double* src = (l + 1 == n) ? chan : layer(l + 1);
        k.g_span(src, src + half, path_ps + geo.layer_off(l), layer(l), half);
        ctr.flops += std::uint64_t(half);
        for (int s = l - 1; s >= 0; --s) {
            const int h = 1 << s;
            const double* fsrc = layer(s + 1);
            k.f_span(fsrc, fsrc + h, layer(s), h);
            ctr.flops += std::uint64_t(h);
        }
    }
    return path_llr[geo.layer_off(0)];
}

// Propagates the decided bit of leaf i up the partial-sum tree. scratch_a/b
// must each hold N entries.
void push_partial_sum(const Geometry& geo, std::uint8_t* path_ps, int i, std::uint8_t bit,
                      std::uint8_t* scratch_a, std::uint8_t* scratch_b) {
    std::uint8_t* cur = scratch_a;
    std::uint8_t* nxt = scratch_b;
    cur[0] = bit;
    int s = 0;
    while (s < geo.n && ((i >> s) & 1)) {
        const int half = 1 << s;
        const std::uint8_t* left = path_ps + geo.layer_off(s);
        for (int t = 0; t < half; ++t) {
            nxt[t] = static_cast<std::uint8_t>(left[t] ^ cur[t]);
            nxt[t + half] = cur[t];
        }
        std::swap(cur, nxt);
        ++s;
    }
    if (s < geo.n) std::memcpy(path_ps + geo.layer_off(s), cur, std::size_t(1) << s);
}

Symbol forced_symbol(const FieldSpec& f, const PreTransform& pt, int i, const Symbol* fprime,
                     OpCounters& ctr) {
    Symbol v = 0;
    for (const auto& term : pt.frozen_terms[i]) {
        v ^= f.mul(fprime[term.t], term.coeff);
        ctr.gf_ops += 2;  // one multiplication, one accumulation
    }
    return v;
}

std::vector<Symbol> recover_message(const FieldSpec& f, const PreTransform& pt,
                                    const Symbol* fprime, OpCounters& ctr) {
    const int K = pt.K();
    std::vector<Symbol> msg(K, 0);
    for (int t = 0; t < K; ++t) {
        if (!fprime[t]) continue;
        for (int c = 0; c < K; ++c) {
            const Symbol e = pt.E.at(t, c);
            if (!e) continue;
            msg[c] ^= f.mul(fprime[t], e);
            ctr.gf_ops += 2;
        }
    }
    return msg;
}

}  // namespace

DecodeResult sc_decode(const PreTransform& pt, const ErsCode& code, const LlrFrame& llr) {
    const FieldSpec& f = code.field;
    Geometry geo{f.n(), pt.N(), f.n(), pt.N() - 1};
    if (llr.N != geo.N || llr.planes != geo.planes)
        throw std::invalid_argument("LLR frame does not match the code");
    const auto& k = kern::ops();

    PathPool pool;
    pool.init(geo, 1, pt.K());
    std::vector<std::uint8_t> scr_a(geo.N), scr_b(geo.N);
    std::vector<double> leaf(geo.planes);
    DecodeResult res;
    res.u_hat.assign(geo.N, 0);
    OpCounters& ctr = res.counters;
    Symbol* fprime = pool.fprime_of(0);
    int info_count = 0;

    for (int i = 0; i < geo.N; ++i) {
        for (int j = 0; j < geo.planes; ++j)
            leaf[j] = update_to_leaf(geo, k, pool.llr_plane(0, j), pool.ps_plane(0, j),
                                     llr.plane(j), i, ctr);
        Symbol v = 0;
        if (pt.cls[i] == FrozenClass::info) {
            for (int j = 0; j < geo.planes; ++j) {
                if (leaf[j] < 0.0) v |= Symbol(1) << j;  // LLR >= 0 decodes to 0
                ctr.flops += 1;
            }
            fprime[info_count++] = v;
        } else {
            v = forced_symbol(f, pt, i, fprime, ctr);
            for (int j = 0; j < geo.planes; ++j) {
                const int b = (v >> j) & 1;
                const int hard = leaf[j] < 0.0 ? 1 : 0;
                if (hard != b) res.metric += std::fabs(leaf[j]);
                ctr.flops += 2;  // compare + accumulate
            }
        }
        res.u_hat[i] = v;
        for (int j = 0; j < geo.planes; ++j)
            push_partial_sum(geo, pool.ps_plane(0, j), i, static_cast<std::uint8_t>((v >> j) & 1),
                             scr_a.data(), scr_b.data());
    }
    res.message = recover_message(f, pt, fprime, ctr);
    return res;
}

DecodeResult scl_decode(const PreTransform& pt, const ErsCode& code, const LlrFrame& llr,
                        int list_size, std::ostream* trace) {
    const FieldSpec& f = code.field;
    const int n = f.n();
    const int N = pt.N();
    const int K = pt.K();
    const int q = f.q();
    if (list_size < 1) throw std::invalid_argument("list size must be >= 1");
    Geometry geo{n, N, n, N - 1};
    if (llr.N != N || llr.planes != n)
        throw std::invalid_argument("LLR frame does not match the code");
    const auto& k = kern::ops();
    const int L = list_size;

    PathPool cur, next;
    cur.init(geo, L, K);
    next.init(geo, L, K);
    std::vector<std::uint8_t> scr_a(N), scr_b(N);

    int paths = 1;
    OpCounters ctr;
    std::vector<double> leaf(std::size_t(L) * n);
    std::vector<double> cand_metric(std::size_t(L) * q);
    std::vector<int> order(std::size_t(L) * q);
    std::vector<double> last_pen(L, 0.0);

    for (int i = 0; i < N; ++i) {
        for (int p = 0; p < paths; ++p)
            for (int j = 0; j < n; ++j)
                leaf[std::size_t(p) * n + j] = update_to_leaf(
                    geo, k, cur.llr_plane(p, j), cur.ps_plane(p, j), llr.plane(j), i, ctr);

        if (pt.cls[i] == FrozenClass::info) {
            const int tau_i = pt.tau[i];
            // penalty(v) = sum_j [hard(L_j) != v_j] |L_j| = base + sum_{j in v} L_j;
            // the parent metric is folded into the subset-sum base, so the DP
            // yields candidate metrics directly
            for (int p = 0; p < paths; ++p) {
                const double* lf = leaf.data() + std::size_t(p) * n;
                double* cm = cand_metric.data() + std::size_t(p) * q;
                double base = cur.metric[p];
                for (int j = 0; j < n; ++j) {
                    if (lf[j] < 0.0) base -= lf[j];
                    ctr.flops += 2;  // sign test + accumulate
                }
                cm[0] = base;
                for (int v = 1; v < q; ++v) {
                    const int low = v & -v;
                    cm[v] = cm[v ^ low] + lf[std::countr_zero(static_cast<unsigned>(low))];
                    ctr.flops += 1;
                }
            }
            const int total = paths * q;
            const int keep = std::min(L, total);
            std::iota(order.begin(), order.begin() + total, 0);
            // candidate id p*q + v sorts ties by (parent path, symbol value)
            std::uint64_t cmp_count = 0;
            auto cmp = [&](int x, int y) {
                ++cmp_count;
                if (cand_metric[x] != cand_metric[y]) return cand_metric[x] < cand_metric[y];
                return x < y;
            };
            if (keep < total)
                std::nth_element(order.begin(), order.begin() + keep, order.begin() + total, cmp);
            std::sort(order.begin(), order.begin() + keep, cmp);
            ctr.flops += cmp_count;

            for (int r = 0; r < keep; ++r) {
                const int parent = order[r] / q;
                const Symbol v = static_cast<Symbol>(order[r] % q);
                next.copy_path(r, cur, parent);
                next.metric[r] = cand_metric[order[r]];
                next.uhat_of(r)[i] = v;
                next.fprime_of(r)[tau_i] = v;
                for (int j = 0; j < n; ++j)
                    push_partial_sum(geo, next.ps_plane(r, j), i,
                                     static_cast<std::uint8_t>((v >> j) & 1), scr_a.data(),
                                     scr_b.data());
                last_pen[r] = cand_metric[order[r]] - cur.metric[parent];
            }
            std::swap(cur, next);
            paths = keep;
        } else {
            for (int p = 0; p < paths; ++p) {
                const Symbol v = forced_symbol(f, pt, i, cur.fprime_of(p), ctr);
                const double* lf = leaf.data() + std::size_t(p) * n;
                double penalty = 0.0;
                for (int j = 0; j < n; ++j) {
                    const int b = (v >> j) & 1;
                    const int hard = lf[j] < 0.0 ? 1 : 0;
                    if (hard != b) penalty += std::fabs(lf[j]);
                    ctr.flops += 2;
                }
                cur.metric[p] += penalty;
                ctr.flops += 1;
                cur.uhat_of(p)[i] = v;
                for (int j = 0; j < n; ++j)
                    push_partial_sum(geo, cur.ps_plane(p, j), i,
                                     static_cast<std::uint8_t>((v >> j) & 1), scr_a.data(),
                                     scr_b.data());
                last_pen[p] = penalty;
            }
        }

        if (trace) {
            int best = 0;
            for (int p = 1; p < paths; ++p)
                if (cur.metric[p] < cur.metric[best]) best = p;
            const char* cls = pt.cls[i] == FrozenClass::info
                                  ? "info"
                                  : (pt.cls[i] == FrozenClass::static_frozen ? "static" : "dynamic");
            (*trace) << "{\"i\":" << i << ",\"class\":\"" << cls
                     << "\",\"symbol\":" << int(cur.uhat_of(best)[i])
                     << ",\"penalty\":" << last_pen[best] << ",\"metrics\":[";
            for (int p = 0; p < paths; ++p) (*trace) << (p ? "," : "") << cur.metric[p];
            (*trace) << "]}\n";
        }
    }

    int best = 0;
    for (int p = 1; p < paths; ++p)
        if (cur.metric[p] < cur.metric[best]) best = p;
    DecodeResult res;
    res.u_hat.assign(cur.uhat_of(best), cur.uhat_of(best) + N);
    res.metric = cur.metric[best];
    res.counters = ctr;
    res.message = recover_message(f, pt, cur.fprime_of(best), res.counters);
    return res;
}

}  // namespace ers
