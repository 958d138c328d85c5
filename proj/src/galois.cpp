#include "ers/galois.hpp"

#include <sstream>
#include <stdexcept>

namespace ers {

std::uint32_t FieldSpec::default_prim_poly(int n) {
    // Conventional primitive polynomials, x^n term included.
    switch (n) {
        case 2: return 0b111;
        case 3: return 0b1011;
        case 4: return 0b10011;
        case 5: return 0b100101;
        case 6: return 0b1000011;
        case 7: return 0b10001001;
        case 8: return 0b100011101;
        case 9: return 0b1000010001;
        case 10: return 0b10000001001;
        default: throw std::invalid_argument("field order exponent must be in [2, 10]");
    }
}

FieldSpec FieldSpec::make(int n, std::optional<std::uint32_t> prim_poly) {
    if (n < 2 || n > 10)
        throw std::invalid_argument("field order exponent must be in [2, 10]");
    const std::uint32_t pp = prim_poly.value_or(default_prim_poly(n));
    const int q = 1 << n;
    if ((pp >> n) != 1u)
        throw std::invalid_argument("primitive polynomial must have degree exactly n");
    if ((pp & 1u) == 0)
        throw std::invalid_argument("primitive polynomial must have a nonzero constant term");

    FieldSpec f;
    f.n_ = n;
    f.q_ = q;
    f.prim_poly_ = pp;
    f.exp_.assign(std::size_t(2) * (q - 1), 0);
    f.log_.assign(q, -1);

    // Cycle powers of alpha = x. A return to an earlier power before
    // exhausting all q-1 nonzero elements means pp is not primitive.
    Symbol x = 1;
    for (int k = 0; k < q - 1; ++k) {
        if (f.log_[x] >= 0) {
            std::ostringstream msg;
            msg << "polynomial 0x" << std::hex << pp << std::dec
                << " is not primitive: alpha^" << k << " repeats alpha^" << f.log_[x];
            throw std::invalid_argument(msg.str());
        }
        f.exp_[k] = x;
        f.exp_[k + q - 1] = x;
        f.log_[x] = static_cast<std::int16_t>(k);
        x = static_cast<Symbol>(x << 1);
        if (x & q) x = static_cast<Symbol>(x ^ pp);
    }
    if (x != 1) {
        // Cannot happen for an irreducible pp; guards a reducible one whose
        // x-orbit is the full unit group of the quotient ring.
        std::ostringstream msg;
        msg << "polynomial 0x" << std::hex << pp << std::dec
            << " is not primitive: alpha^" << (q - 1) << " != 1";
        throw std::invalid_argument(msg.str());
    }
    return f;
}

Symbol FieldSpec::inv(Symbol a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Symbol FieldSpec::pow(Symbol a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? Symbol{1} : Symbol{0};
    return exp_[(std::uint64_t(log_[a]) * e) % std::uint64_t(q_ - 1)];
}

int FieldSpec::log(Symbol a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
}

std::vector<std::uint8_t> bits_of(Symbol a, int n) {
    std::vector<std::uint8_t> bits(n);
    for (int j = 0; j < n; ++j) bits[j] = static_cast<std::uint8_t>((a >> j) & 1);
    return bits;
}

Symbol from_bits(std::span<const std::uint8_t> bits, int n) {
    if (static_cast<int>(bits.size()) != n)
        throw std::invalid_argument("bit vector length must equal the field order exponent");
    Symbol a = 0;
    for (int j = 0; j < n; ++j)
        if (bits[j]) a = static_cast<Symbol>(a | (Symbol(1) << j));
    return a;
}

}  // namespace ers
