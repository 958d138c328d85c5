// Re-interpretation of an eRS code as n binary polar codes: polar kernel
// power, column permutation, Gaussian elimination to row reduced echelon
// form, and the resulting classification of input positions into
// information / static frozen / dynamic frozen symbols.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ers/ers_code.hpp"
#include "ers/matrix.hpp"

namespace ers {

struct Permutation {
    // map[i] = column to which position i is sent; as a matrix, P[i][map[i]] = 1,
    // so (x P)[map[i]] = x[i] and (x P^-1)[i] = x[map[i]].
    std::vector<int> map;

    static Permutation identity(int N);
    static Permutation bit_reversal(int N);
    // Aligns polar column m with the locator whose binary composition is m.
    static Permutation natural_locator(const ErsCode& code);
    // Validates bijectivity; throws std::invalid_argument otherwise.
    static Permutation from_map(std::vector<int> map);

    Permutation inverse() const;
    int size() const { return static_cast<int>(map.size()); }
    std::uint64_t digest() const;  // FNV-1a over the map, for config echoes
};

enum class PermStrategy { identity, bit_reversal, natural_locator, greedy_search, custom };

// Hill-climb over transpositions, maximizing sum over pivots of (1 - pe[i]).
// Starts from the natural locator alignment and explores `iters` random
// transpositions. pe has one subchannel error probability per position.
Permutation greedy_search_permutation(const ErsCode& code, std::span<const double> pe,
                                      int iters, std::uint64_t seed);

struct BinMatrix {
    int size = 0;
    std::vector<std::uint8_t> a;
    std::uint8_t at(int r, int c) const { return a[std::size_t(r) * size + c]; }
    std::uint8_t& at(int r, int c) { return a[std::size_t(r) * size + c]; }
};

// n-fold Kronecker power of the 2x2 kernel [[1,0],[1,1]].
BinMatrix gp_matrix(int n);

// In-place binary polar transform of one bit plane (self-inverse).
void polar_encode_plane(std::span<std::uint8_t> bits);

struct DSet {
    int a = 0;
    std::vector<int> indices;  // {2^a - 1, 2*2^a - 1, ..., N - 1}
};
DSet d_set(int N, int K);

enum class FrozenClass : std::uint8_t { info = 0, static_frozen = 1, dynamic_frozen = 2 };

struct PreTransform {
    GfMatrix M;      // K x N in row reduced echelon form
    GfMatrix E;      // K x K row elimination matrix, M = E G P^-1 Gp
    GfMatrix E_inv;  // cached inverse
    std::vector<int> pivots;         // pivot column set A, ascending, |A| = K
    std::vector<FrozenClass> cls;    // size N
    std::vector<int> tau;            // tau[i] = |A intersect [0, i)|
    Permutation perm;

    struct FrozenTerm {
        std::uint16_t t;  // row index into the transformed message
        Symbol coeff;     // M[t][i]
    };
    // Nonzero column entries per frozen position; empty for pivots and
    // static frozen columns. Rows are restricted to t < tau[i] by the
    // echelon structure.
    std::vector<std::vector<FrozenTerm>> frozen_terms;

    int N() const { return M.cols; }
    int K() const { return M.rows; }
};

// Computes M = E G P^-1 Gp in RREF together with the position classification.
// Throws std::runtime_error if G has rank < K (corrupted input).
PreTransform pretransform(const ErsCode& code, const Permutation& perm);

// Encodes through the transform: F' = F E^-1, U = F' M, then each bit plane
// of U is polar-encoded and permuted. Equals encode_poly exactly.
std::vector<Symbol> encode_via_transform(const PreTransform& pt, const ErsCode& code,
                                         std::span<const Symbol> msg);

int rank_submatrix(const FieldSpec& f, const GfMatrix& m, std::span<const int> cols);

// JSON serialization (integer-array form for permutations; nested arrays
// plus classification for pre-transforms).
std::string permutation_to_json(const Permutation& p);
Permutation permutation_from_json(const std::string& text);
std::string pretransform_to_json(const PreTransform& pt, const ErsCode& code);

}  // namespace ers
