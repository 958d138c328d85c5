#include "ers/ers_code.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace ers {

namespace {

std::vector<Symbol> build_locators(const FieldSpec& f, LocatorOrder order,
                                   std::span<const Symbol> custom) {
    const int N = f.q();
    std::vector<Symbol> locs;
    switch (order) {
        case LocatorOrder::alpha_power:
            locs.reserve(N);
            for (int i = 0; i < N - 1; ++i) locs.push_back(f.alpha_pow(i));
            locs.push_back(0);
            break;
        case LocatorOrder::natural_binary:
            locs.reserve(N);
            for (int i = 1; i < N; ++i) locs.push_back(static_cast<Symbol>(i));
            locs.push_back(0);
            break;
        case LocatorOrder::custom: {
            locs.assign(custom.begin(), custom.end());
            if (static_cast<int>(locs.size()) != N)
                throw std::invalid_argument("custom locator list must have length 2^n");
            std::vector<bool> seen(N, false);
            for (Symbol v : locs) {
                if (v >= N || seen[v])
                    throw std::invalid_argument("custom locator list is not a permutation of the field");
                seen[v] = true;
            }
            if (locs.back() != 0)
                throw std::invalid_argument("custom locator list must place the zero element last");
            break;
        }
    }
    return locs;
}

}  // namespace

ErsCode code_new(FieldSpec field, int K, LocatorOrder order, std::span<const Symbol> custom) {
    const int N = field.q();
    if (K < 1 || K > N) throw std::invalid_argument("code dimension must satisfy 1 <= K <= N");
    ErsCode code;
    code.N = N;
    code.K = K;
    code.locators = build_locators(field, order, custom);
    code.G = GfMatrix(K, N);
    for (int i = 0; i < N; ++i) {
        Symbol p = 1;  // locators[i]^0
        for (int k = 0; k < K; ++k) {
            code.G.at(k, i) = p;
            p = field.mul(p, code.locators[i]);
        }
    }
    code.field = std::move(field);
    return code;
}

std::vector<Symbol> encode_poly(const ErsCode& code, std::span<const Symbol> msg) {
    if (static_cast<int>(msg.size()) != code.K)
        throw std::invalid_argument("message length must equal K");
    const FieldSpec& f = code.field;
    std::vector<Symbol> c(code.N);
    for (int i = 0; i < code.N; ++i) {
        const Symbol x = code.locators[i];
        Symbol acc = 0;
        for (int k = code.K - 1; k >= 0; --k) acc = static_cast<Symbol>(f.mul(acc, x) ^ msg[k]);
        c[i] = acc;
    }
    return c;
}

std::vector<Symbol> encode_matrix(const ErsCode& code, std::span<const Symbol> msg) {
    if (static_cast<int>(msg.size()) != code.K)
        throw std::invalid_argument("message length must equal K");
    return gf_vecmat(code.field, msg, code.G);
}

MdsReport mds_check_matrix(const FieldSpec& f, const GfMatrix& G, std::uint64_t trials,
                           std::uint64_t seed) {
    const int N = G.cols;
    const int K = G.rows;
    MdsReport report;

    auto test_subset = [&](const std::vector<int>& cols) {
        GfMatrix sub = columns_subset(G, cols);
        ++report.checked;
        if (gf_rank(f, std::move(sub)) != K) {
            report.ok = false;
            report.first_failing_columns = cols;
            return false;
        }
        return true;
    };

    if (N <= 16) {
        // enumerate all C(N, K) column subsets
        std::vector<int> cols(K);
        for (int i = 0; i < K; ++i) cols[i] = i;
        while (true) {
            if (!test_subset(cols)) return report;
            int i = K - 1;
            while (i >= 0 && cols[i] == N - K + i) --i;
            if (i < 0) break;
            ++cols[i];
            for (int j = i + 1; j < K; ++j) cols[j] = cols[j - 1] + 1;
        }
        return report;
    }

    std::mt19937_64 rng(seed);
    std::vector<int> all(N);
    for (int i = 0; i < N; ++i) all[i] = i;
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (int i = 0; i < K; ++i) {
            std::uniform_int_distribution<int> d(i, N - 1);
            std::swap(all[i], all[d(rng)]);
        }
        std::vector<int> cols(all.begin(), all.begin() + K);
        std::sort(cols.begin(), cols.end());
        if (!test_subset(cols)) return report;
    }
    return report;
}

MdsReport mds_check(const ErsCode& code, std::uint64_t trials, std::uint64_t seed) {
    return mds_check_matrix(code.field, code.G, trials, seed);
}

}  // namespace ers
