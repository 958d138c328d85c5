#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "ers/analysis.hpp"
#include "ers/transform.hpp"

using namespace ers;

namespace {

Permutation random_perm(std::mt19937_64& rng, int N) {
    std::vector<int> m(N);
    std::iota(m.begin(), m.end(), 0);
    std::shuffle(m.begin(), m.end(), rng);
    return Permutation::from_map(std::move(m));
}

std::vector<Symbol> random_msg(std::mt19937_64& rng, int K, int q) {
    std::vector<Symbol> m(K);
    for (auto& s : m) s = Symbol(rng() % q);
    return m;
}

}  // namespace

TEST_CASE("polar kernel power") {
    auto g1 = gp_matrix(1);
    CHECK(g1.at(0, 0) == 1);
    CHECK(g1.at(0, 1) == 0);
    CHECK(g1.at(1, 0) == 1);
    CHECK(g1.at(1, 1) == 1);

    auto g3 = gp_matrix(3);
    std::vector<int> weights;
    for (int r = 0; r < 8; ++r) {
        int w = 0;
        for (int c = 0; c < 8; ++c) w += g3.at(r, c);
        weights.push_back(w);
    }
    CHECK(weights == std::vector<int>{1, 2, 2, 4, 2, 4, 4, 8});
    // last column is the weight-1 vector
    for (int r = 0; r < 7; ++r) CHECK(g3.at(r, 7) == 0);
    CHECK(g3.at(7, 7) == 1);

    // involution up to n = 8, and lower-triangular with unit diagonal
    for (int n : {2, 5, 8}) {
        auto g = gp_matrix(n);
        const int N = g.size;
        for (int r = 0; r < N; ++r) {
            CHECK(g.at(r, r) == 1);
            for (int c = r + 1; c < N; ++c) CHECK(g.at(r, c) == 0);
        }
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) {
                int acc = 0;
                for (int t = 0; t < N; ++t) acc ^= g.at(r, t) & g.at(t, c);
                CHECK(acc == (r == c ? 1 : 0));
            }
    }
}

TEST_CASE("plane encoder matches the kernel matrix") {
    auto g = gp_matrix(4);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        std::vector<std::uint8_t> u(16);
        for (auto& b : u) b = rng() & 1;
        std::vector<std::uint8_t> ref(16, 0);
        for (int c = 0; c < 16; ++c)
            for (int r = 0; r < 16; ++r) ref[c] ^= u[r] & g.at(r, c);
        auto enc = u;
        polar_encode_plane(enc);
        CHECK(enc == ref);
        polar_encode_plane(enc);  // self-inverse
        CHECK(enc == u);
    }
}

TEST_CASE("permutations") {
    auto id = Permutation::identity(8);
    for (int i = 0; i < 8; ++i) CHECK(id.map[i] == i);
    CHECK(Permutation::bit_reversal(8).map == std::vector<int>{0, 4, 2, 6, 1, 5, 3, 7});
    CHECK_THROWS_AS(Permutation::from_map({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::bit_reversal(12), std::invalid_argument);

    std::mt19937_64 rng(1);
    auto p = random_perm(rng, 32);
    auto inv = p.inverse();
    for (int i = 0; i < 32; ++i) CHECK(inv.map[p.map[i]] == i);

    auto text = permutation_to_json(p);
    CHECK(permutation_from_json(text).map == p.map);
}

TEST_CASE("index set D") {
    auto d = d_set(32, 16);
    CHECK(d.a == 1);
    CHECK(d.indices.size() == 16);
    CHECK(d.indices.front() == 1);
    CHECK(d.indices.back() == 31);
    CHECK(d.indices[1] == 3);

    auto d25 = d_set(32, 8);
    CHECK(d25.a == 2);
    CHECK(d25.indices == std::vector<int>{3, 7, 11, 15, 19, 23, 27, 31});

    auto full = d_set(16, 16);
    CHECK(full.a == 0);
    CHECK(full.indices.size() == 16);
    CHECK(full.indices.front() == 0);

    CHECK(d_set(32, 15).a == 2);  // rate just below 1/2
}

TEST_CASE("full-rate pre-transform is trivial") {
    auto code = code_new(FieldSpec::make(4), 16);
    auto pt = pretransform(code, Permutation::identity(16));
    CHECK(pt.pivots.size() == 16);
    for (int i = 0; i < 16; ++i) {
        CHECK(pt.pivots[i] == i);
        CHECK(pt.cls[i] == FrozenClass::info);
        for (int j = 0; j < 16; ++j) CHECK(pt.M.at(i, j) == (i == j ? 1 : 0));
    }
}

TEST_CASE("natural locator alignment puts pivots exactly on D at case-I rates") {
    struct Case {
        int n, K;
    };
    for (auto c : {Case{4, 8}, Case{5, 16}, Case{5, 8}, Case{6, 32}}) {
        auto code = code_new(FieldSpec::make(c.n), c.K);
        auto pt = pretransform(code, Permutation::natural_locator(code));
        auto d = d_set(code.N, c.K);
        CHECK(pt.pivots == d.indices);
    }
    // case II: pivots cover D
    auto code = code_new(FieldSpec::make(5), 15);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    auto d = d_set(32, 15);
    for (int i : d.indices) CHECK(pt.cls[i] == FrozenClass::info);
}

TEST_CASE("RREF contract and tau") {
    auto code = code_new(FieldSpec::make(5), 16);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        auto pt = pretransform(code, random_perm(rng, 32));
        int count = 0;
        for (int i = 0; i < 32; ++i) {
            CHECK(pt.tau[i] == count);
            if (pt.cls[i] == FrozenClass::info) ++count;
        }
        // pivot columns are standard basis columns in order
        for (int r = 0; r < 16; ++r)
            for (int rr = 0; rr < 16; ++rr)
                CHECK(pt.M.at(rr, pt.pivots[r]) == (rr == r ? 1 : 0));
        // frozen columns have nonzeros only in rows < tau
        for (int i = 0; i < 32; ++i) {
            if (pt.cls[i] == FrozenClass::info) continue;
            for (int r = pt.tau[i]; r < 16; ++r) CHECK(pt.M.at(r, i) == 0);
            bool all_zero = true;
            for (int r = 0; r < pt.tau[i]; ++r) all_zero &= pt.M.at(r, i) == 0;
            CHECK((pt.cls[i] == FrozenClass::static_frozen) == all_zero);
        }
    }
}

TEST_CASE("no position of D is static frozen, and rank(M^D) = |D|") {
    auto code = code_new(FieldSpec::make(5), 16);
    auto d = d_set(32, 16);
    std::mt19937_64 rng(29);
    for (int t = 0; t < 25; ++t) {
        auto pt = pretransform(code, random_perm(rng, 32));
        for (int i : d.indices) CHECK(pt.cls[i] != FrozenClass::static_frozen);
        CHECK(rank_submatrix(code.field, pt.M, d.indices) == int(d.indices.size()));
    }
}

TEST_CASE("rank helpers") {
    auto code = code_new(FieldSpec::make(4), 8);
    auto pt = pretransform(code, Permutation::identity(16));
    CHECK(rank_submatrix(code.field, pt.M, pt.pivots) == 8);
    // a single nonzero column has rank 1
    std::vector<int> one{pt.pivots[3]};
    CHECK(rank_submatrix(code.field, pt.M, one) == 1);
}

TEST_CASE("pipeline reconstruction: E^-1 M Gp P recovers G") {
    auto code = code_new(FieldSpec::make(4), 9);
    std::mt19937_64 rng(31);
    auto perm = random_perm(rng, 16);
    auto pt = pretransform(code, perm);
    const auto& f = code.field;

    GfMatrix x = gf_matmul(f, pt.E_inv, pt.M);
    // right-multiply by the kernel power (binary), then apply P to columns
    auto g = gp_matrix(4);
    GfMatrix rec(9, 16);
    for (int r = 0; r < 9; ++r)
        for (int m = 0; m < 16; ++m) {
            Symbol acc = 0;
            for (int t = 0; t < 16; ++t)
                if (g.at(t, m)) acc ^= x.at(r, t);
            rec.at(r, perm.map[m]) = acc;
        }
    CHECK(rec == code.G);
}

TEST_CASE("transform encoding equals polynomial encoding") {
    auto code = code_new(FieldSpec::make(5), 15);
    std::mt19937_64 rng(37);
    for (int t = 0; t < 5; ++t) {
        auto pt = pretransform(code, random_perm(rng, 32));
        for (int m = 0; m < 200; ++m) {
            auto msg = random_msg(rng, 15, 32);
            CHECK(encode_via_transform(pt, code, msg) == encode_poly(code, msg));
        }
    }
    // zero message
    auto pt = pretransform(code, Permutation::natural_locator(code));
    std::vector<Symbol> zero(15, 0);
    for (auto s : encode_via_transform(pt, code, zero)) CHECK(s == 0);
}

TEST_CASE("frozen symbols are the dynamic combination of earlier pivots") {
    auto code = code_new(FieldSpec::make(4), 6);
    std::mt19937_64 rng(41);
    auto pt = pretransform(code, random_perm(rng, 16));
    const auto& f = code.field;
    for (int t = 0; t < 100; ++t) {
        auto msg = random_msg(rng, 6, 16);
        auto fprime = gf_vecmat(f, msg, pt.E_inv);
        auto u = gf_vecmat(f, fprime, pt.M);
        for (int i = 0; i < 16; ++i) {
            if (pt.cls[i] == FrozenClass::info) continue;
            Symbol expect = 0;
            for (const auto& term : pt.frozen_terms[i]) expect ^= f.mul(fprime[term.t], term.coeff);
            CHECK(u[i] == expect);
        }
    }
}

TEST_CASE("greedy search reaches the optimal pivot placement") {
    auto code = code_new(FieldSpec::make(5), 16);
    auto prof = ga_profile(32, 11.0, 0.5);
    auto perm = greedy_search_permutation(code, prof.pe, 50, 17);
    auto pt = pretransform(code, perm);
    auto d = d_set(32, 16);
    for (int i : d.indices) CHECK(pt.cls[i] != FrozenClass::static_frozen);
    CHECK(pt.pivots == d.indices);  // case-I optimum
}

TEST_CASE("pre-transform JSON export") {
    auto code = code_new(FieldSpec::make(4), 8);
    auto pt = pretransform(code, Permutation::natural_locator(code));
    auto text = pretransform_to_json(pt, code);
    CHECK(text.find("\"pivots\"") != std::string::npos);
    CHECK(text.find("\"tau\"") != std::string::npos);
    CHECK(text.find("\"M\"") != std::string::npos);
}
