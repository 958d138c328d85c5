// Extended Reed-Solomon codes over GF(2^n): length N = 2^n, evaluation at
// all field elements with the zero locator in the last position, which makes
// the last codeword symbol a parity of the others.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ers/galois.hpp"
#include "ers/matrix.hpp"

namespace ers {

enum class LocatorOrder {
    alpha_power,     // 1, alpha, alpha^2, ..., alpha^{N-2}, 0
    natural_binary,  // 1, 2, 3, ..., N-1, 0
    custom,
};

struct ErsCode {
    FieldSpec field;
    int N = 0;
    int K = 0;
    std::vector<Symbol> locators;  // permutation of all field elements, zero last
    GfMatrix G;                    // K x N, G[k][i] = locators[i]^k (0^0 = 1)

    double rate() const { return double(K) / double(N); }
};

// Throws std::invalid_argument on bad K, a custom list that is not a
// permutation of the field, or a custom list whose last element is not zero.
ErsCode code_new(FieldSpec field, int K, LocatorOrder order = LocatorOrder::alpha_power,
                 std::span<const Symbol> custom_locators = {});

// Horner evaluation of the message polynomial at every locator.
std::vector<Symbol> encode_poly(const ErsCode& code, std::span<const Symbol> msg);

// C = F G; agrees with encode_poly exactly.
std::vector<Symbol> encode_matrix(const ErsCode& code, std::span<const Symbol> msg);

struct MdsReport {
    bool ok = true;
    std::vector<int> first_failing_columns;  // empty when ok
    std::uint64_t checked = 0;
};

// Verifies that every K-column submatrix of G has rank K. Exhaustive for
// N <= 16; otherwise samples `trials` random column subsets.
MdsReport mds_check(const ErsCode& code, std::uint64_t trials = 10'000, std::uint64_t seed = 1);

// Same check against an arbitrary generator matrix (test hook for corrupted G).
MdsReport mds_check_matrix(const FieldSpec& f, const GfMatrix& G, std::uint64_t trials,
                           std::uint64_t seed);

}  // namespace ers
