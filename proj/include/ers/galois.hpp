// GF(2^n) arithmetic for 2 <= n <= 10, log/antilog table based.
//
// Elements are n-bit unsigned values: bit j of the value is the coefficient
// of alpha^j in the binary composition of the element.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ers {

using Symbol = std::uint16_t;

class FieldSpec {
public:
    FieldSpec() = default;  // empty shell; use make() to build a usable field

    // Builds the field context. If prim_poly is not given, a conventional
    // primitive polynomial for the requested order is used. Throws
    // std::invalid_argument if the polynomial is not primitive of degree n.
    static FieldSpec make(int n, std::optional<std::uint32_t> prim_poly = std::nullopt);

    static std::uint32_t default_prim_poly(int n);

    int n() const { return n_; }
    int q() const { return q_; }  // field size 2^n
    std::uint32_t prim_poly() const { return prim_poly_; }

    Symbol add(Symbol a, Symbol b) const { return a ^ b; }

    Symbol mul(Symbol a, Symbol b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[std::size_t(log_[a]) + std::size_t(log_[b])];  // exp_ doubled, no mod
    }

    // Multiplicative inverse; throws std::domain_error on 0.
    Symbol inv(Symbol a) const;

    // a^e with 0^0 = 1; e may be any nonnegative integer.
    Symbol pow(Symbol a, std::uint64_t e) const;

    // alpha^k for any integer k >= 0.
    Symbol alpha_pow(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

    // Discrete log of a nonzero element; throws std::domain_error on 0.
    int log(Symbol a) const;

private:
    int n_ = 0;
    int q_ = 0;
    std::uint32_t prim_poly_ = 0;
    std::vector<Symbol> exp_;       // size 2(q-1); exp_[k] = alpha^k
    std::vector<std::int16_t> log_; // size q; log_[0] = -1
};

inline int bit_of(Symbol a, int j) { return (a >> j) & 1; }

// Binary composition (u_0, ..., u_{n-1}) of an element; u_j multiplies alpha^j.
std::vector<std::uint8_t> bits_of(Symbol a, int n);

// Inverse of bits_of; throws std::invalid_argument if bits.size() != n.
Symbol from_bits(std::span<const std::uint8_t> bits, int n);

}  // namespace ers
