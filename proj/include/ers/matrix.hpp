// Dense matrices over GF(2^n): products, row reduction, rank.

#pragma once

#include <span>
#include <vector>

#include "ers/galois.hpp"

namespace ers {

struct GfMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Symbol> a;

    GfMatrix() = default;
    GfMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

    Symbol& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
    Symbol at(int r, int c) const { return a[std::size_t(r) * cols + c]; }
    std::span<Symbol> row(int r) { return {a.data() + std::size_t(r) * cols, std::size_t(cols)}; }
    std::span<const Symbol> row(int r) const {
        return {a.data() + std::size_t(r) * cols, std::size_t(cols)};
    }

    static GfMatrix identity(int k);

    bool operator==(const GfMatrix&) const = default;
};

GfMatrix gf_matmul(const FieldSpec& f, const GfMatrix& x, const GfMatrix& y);

// v (length rows) * m -> length cols.
std::vector<Symbol> gf_vecmat(const FieldSpec& f, std::span<const Symbol> v, const GfMatrix& m);

// In-place reduction to row reduced echelon form. Returns the pivot column
// indices in increasing order. If elim is non-null it receives the full-rank
// row operation matrix E with (reduced m) = E * (original m).
std::vector<int> gf_rref(const FieldSpec& f, GfMatrix& m, GfMatrix* elim = nullptr);

int gf_rank(const FieldSpec& f, GfMatrix m);

// Throws std::invalid_argument if m is singular or not square.
GfMatrix gf_inverse(const FieldSpec& f, const GfMatrix& m);

GfMatrix columns_subset(const GfMatrix& m, std::span<const int> cols);

}  // namespace ers
