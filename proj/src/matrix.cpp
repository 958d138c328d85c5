#include "ers/matrix.hpp"

#include <stdexcept>

namespace ers {

GfMatrix GfMatrix::identity(int k) {
    GfMatrix m(k, k);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

GfMatrix gf_matmul(const FieldSpec& f, const GfMatrix& x, const GfMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matmul dimension mismatch");
    GfMatrix out(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r) {
        for (int t = 0; t < x.cols; ++t) {
            const Symbol v = x.at(r, t);
            if (!v) continue;
            auto yrow = y.row(t);
            auto orow = out.row(r);
            for (int c = 0; c < y.cols; ++c)
                if (yrow[c]) orow[c] ^= f.mul(v, yrow[c]);
        }
    }
    return out;
}

std::vector<Symbol> gf_vecmat(const FieldSpec& f, std::span<const Symbol> v, const GfMatrix& m) {
    if (static_cast<int>(v.size()) != m.rows) throw std::invalid_argument("vecmat dimension mismatch");
    std::vector<Symbol> out(m.cols, 0);
    for (int t = 0; t < m.rows; ++t) {
        if (!v[t]) continue;
        auto row = m.row(t);
        for (int c = 0; c < m.cols; ++c)
            if (row[c]) out[c] ^= f.mul(v[t], row[c]);
    }
    return out;
}

std::vector<int> gf_rref(const FieldSpec& f, GfMatrix& m, GfMatrix* elim) {
    if (elim) *elim = GfMatrix::identity(m.rows);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        // leftmost nonzero column, first nonzero row at or below r
        int sel = -1;
        for (int rr = r; rr < m.rows; ++rr)
            if (m.at(rr, c)) { sel = rr; break; }
        if (sel < 0) continue;
        if (sel != r) {
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(sel, j));
            if (elim)
                for (int j = 0; j < elim->cols; ++j) std::swap(elim->at(r, j), elim->at(sel, j));
        }
        const Symbol piv_inv = f.inv(m.at(r, c));
        if (piv_inv != 1) {
            for (int j = 0; j < m.cols; ++j) m.at(r, j) = f.mul(piv_inv, m.at(r, j));
            if (elim)
                for (int j = 0; j < elim->cols; ++j) elim->at(r, j) = f.mul(piv_inv, elim->at(r, j));
        }
        for (int rr = 0; rr < m.rows; ++rr) {
            if (rr == r) continue;
            const Symbol factor = m.at(rr, c);
            if (!factor) continue;
            for (int j = 0; j < m.cols; ++j)
                if (m.at(r, j)) m.at(rr, j) ^= f.mul(factor, m.at(r, j));
            if (elim)
                for (int j = 0; j < elim->cols; ++j)
                    if (elim->at(r, j)) elim->at(rr, j) ^= f.mul(factor, elim->at(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int gf_rank(const FieldSpec& f, GfMatrix m) {
    return static_cast<int>(gf_rref(f, m).size());
}

GfMatrix gf_inverse(const FieldSpec& f, const GfMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    GfMatrix work = m;
    GfMatrix e;
    auto piv = gf_rref(f, work, &e);
    if (static_cast<int>(piv.size()) != m.rows)
        throw std::invalid_argument("inverse of singular matrix");
    return e;
}

GfMatrix columns_subset(const GfMatrix& m, std::span<const int> cols) {
    GfMatrix out(m.rows, static_cast<int>(cols.size()));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < out.cols; ++c) out.at(r, c) = m.at(r, cols[c]);
    return out;
}

}  // namespace ers
