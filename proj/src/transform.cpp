#include "ers/transform.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace ers {

Permutation Permutation::identity(int N) {
    Permutation p;
    p.map.resize(N);
    for (int i = 0; i < N; ++i) p.map[i] = i;
    return p;
}

Permutation Permutation::bit_reversal(int N) {
    if (N < 1 || (N & (N - 1)) != 0) throw std::invalid_argument("length must be a power of two");
    int n = 0;
    while ((1 << n) < N) ++n;
    Permutation p;
    p.map.resize(N);
    for (int i = 0; i < N; ++i) {
        int r = 0;
        for (int b = 0; b < n; ++b)
            if (i & (1 << b)) r |= 1 << (n - 1 - b);
        p.map[i] = r;
    }
    return p;
}

Permutation Permutation::natural_locator(const ErsCode& code) {
    const int N = code.N;
    std::vector<int> pos(N, -1);
    for (int i = 0; i < N; ++i) pos[code.locators[i]] = i;
    Permutation p;
    p.map.resize(N);
    // polar column m evaluates the locator whose value is m
    for (int m = 0; m < N; ++m) p.map[m] = pos[m];
    return p;
}

Permutation Permutation::from_map(std::vector<int> map) {
    const int N = static_cast<int>(map.size());
    std::vector<bool> seen(N, false);
    for (int v : map) {
        if (v < 0 || v >= N || seen[v])
            throw std::invalid_argument("permutation map is not a bijection on [0, N)");
        seen[v] = true;
    }
    Permutation p;
    p.map = std::move(map);
    return p;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.map.resize(map.size());
    for (int i = 0; i < size(); ++i) inv.map[map[i]] = i;
    return inv;
}

std::uint64_t Permutation::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (int v : map) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 0x100000001b3ull;
    }
    return h;
}

BinMatrix gp_matrix(int n) {
    if (n < 1) throw std::invalid_argument("kernel power must be >= 1");
    const int N = 1 << n;
    BinMatrix m;
    m.size = N;
    m.a.assign(std::size_t(N) * N, 0);
    // entry (t, c) = 1 iff c's support is contained in t's support
    for (int t = 0; t < N; ++t)
        for (int c = 0; c < N; ++c)
            if ((t & c) == c) m.at(t, c) = 1;
    return m;
}

void polar_encode_plane(std::span<std::uint8_t> bits) {
    const int N = static_cast<int>(bits.size());
    for (int s = 1; s < N; s <<= 1)
        for (int i = 0; i < N; ++i)
            if (!(i & s)) bits[i] ^= bits[i + s];
}

DSet d_set(int N, int K) {
    if (K < 1 || K > N) throw std::invalid_argument("1 <= K <= N required");
    const double rate = double(K) / double(N);
    int a = static_cast<int>(std::ceil(-std::log2(rate) - 1e-12));
    if (a < 0) a = 0;
    DSet d;
    d.a = a;
    const int step = 1 << a;
    for (int i = step - 1; i < N; i += step) d.indices.push_back(i);
    return d;
}

PreTransform pretransform(const ErsCode& code, const Permutation& perm) {
    const FieldSpec& f = code.field;
    const int N = code.N;
    const int K = code.K;
    if (perm.size() != N) throw std::invalid_argument("permutation size mismatch");

    // B = G P^-1 Gp. Column m of G P^-1 is column map[m] of G, and right
    // multiplication by Gp sums columns over subset-closed supports. The
    // kernel is involutory, so this is also G P^-1 Gp^-1.
    GfMatrix B(K, N);
    std::vector<Symbol> permuted(N);
    for (int k = 0; k < K; ++k) {
        for (int m = 0; m < N; ++m) permuted[m] = code.G.at(k, perm.map[m]);
        for (int c = 0; c < N; ++c) {
            Symbol acc = 0;
            for (int t = c; t < N; ++t)  // t must cover c's support; t >= c
                if ((t & c) == c) acc ^= permuted[t];
            B.at(k, c) = acc;
        }
    }

    PreTransform pt;
    pt.M = std::move(B);
    pt.pivots = gf_rref(f, pt.M, &pt.E);
    if (static_cast<int>(pt.pivots.size()) != K)
        throw std::runtime_error("generator matrix lost rank during the transform");
    pt.E_inv = gf_inverse(f, pt.E);
    pt.perm = perm;

    pt.cls.assign(N, FrozenClass::static_frozen);
    pt.tau.assign(N, 0);
    pt.frozen_terms.assign(N, {});
    for (int p : pt.pivots) pt.cls[p] = FrozenClass::info;
    int t = 0;
    for (int i = 0; i < N; ++i) {
        pt.tau[i] = t;
        if (pt.cls[i] == FrozenClass::info) {
            ++t;
            continue;
        }
        for (int r = 0; r < pt.tau[i]; ++r) {
            if (pt.M.at(r, i)) {
                pt.frozen_terms[i].push_back({static_cast<std::uint16_t>(r), pt.M.at(r, i)});
                pt.cls[i] = FrozenClass::dynamic_frozen;
            }
        }
        // echelon structure: rows >= tau[i] are zero in a frozen column
    }
    return pt;
}

std::vector<Symbol> encode_via_transform(const PreTransform& pt, const ErsCode& code,
                                         std::span<const Symbol> msg) {
    const FieldSpec& f = code.field;
    const int N = pt.N();
    const int n = f.n();
    std::vector<Symbol> fprime = gf_vecmat(f, msg, pt.E_inv);
    std::vector<Symbol> u = gf_vecmat(f, fprime, pt.M);

    std::vector<Symbol> out(N, 0);
    std::vector<std::uint8_t> plane(N);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < N; ++i) plane[i] = static_cast<std::uint8_t>((u[i] >> j) & 1);
        polar_encode_plane(plane);
        for (int m = 0; m < N; ++m)
            if (plane[m]) out[pt.perm.map[m]] |= Symbol(1) << j;
    }
    return out;
}

int rank_submatrix(const FieldSpec& f, const GfMatrix& m, std::span<const int> cols) {
    return gf_rank(f, columns_subset(m, cols));
}

Permutation greedy_search_permutation(const ErsCode& code, std::span<const double> pe,
                                      int iters, std::uint64_t seed) {
    const int N = code.N;
    if (static_cast<int>(pe.size()) != N)
        throw std::invalid_argument("profile length must equal N");

    auto objective = [&](const Permutation& p) {
        PreTransform pt = pretransform(code, p);
        double s = 0.0;
        for (int i : pt.pivots) s += 1.0 - pe[i];
        return s;
    };

    // The natural alignment is the best known starting point; random
    // transpositions can only improve from there.
    Permutation cur = Permutation::natural_locator(code);
    double cur_obj = objective(cur);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(0, N - 1);
    for (int it = 0; it < iters; ++it) {
        int i = d(rng), j = d(rng);
        if (i == j) continue;
        Permutation cand = cur;
        std::swap(cand.map[i], cand.map[j]);
        double obj = objective(cand);
        if (obj > cur_obj) {
            cur = std::move(cand);
            cur_obj = obj;
        }
    }
    return cur;
}

std::string permutation_to_json(const Permutation& p) {
    return nlohmann::json(p.map).dump();
}

Permutation permutation_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return Permutation::from_map(j.get<std::vector<int>>());
}

std::string pretransform_to_json(const PreTransform& pt, const ErsCode& code) {
    nlohmann::json j;
    j["N"] = pt.N();
    j["K"] = pt.K();
    j["n"] = code.field.n();
    j["prim_poly"] = code.field.prim_poly();
    j["perm"] = pt.perm.map;
    j["perm_digest"] = pt.perm.digest();
    j["pivots"] = pt.pivots;
    j["tau"] = pt.tau;
    std::vector<std::string> cls;
    cls.reserve(pt.N());
    for (auto c : pt.cls)
        cls.push_back(c == FrozenClass::info ? "info"
                                             : (c == FrozenClass::static_frozen ? "static" : "dynamic"));
    j["class"] = cls;
    std::vector<std::vector<int>> m_rows(pt.K());
    for (int r = 0; r < pt.K(); ++r)
        m_rows[r].assign(pt.M.row(r).begin(), pt.M.row(r).end());
    j["M"] = m_rows;
    std::vector<std::vector<int>> e_rows(pt.K());
    for (int r = 0; r < pt.K(); ++r)
        e_rows[r].assign(pt.E.row(r).begin(), pt.E.row(r).end());
    j["E"] = e_rows;
    auto d = d_set(pt.N(), pt.K());
    j["a"] = d.a;
    j["D"] = d.indices;
    return j.dump(2);
}

}  // namespace ers
