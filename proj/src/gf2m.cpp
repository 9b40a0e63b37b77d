#include "pod/gf2m.hpp"

#include "pod/errors.hpp"

namespace pod {

namespace {
// primitive polynomials, lowest-weight choices
constexpr std::uint32_t kPrimitive[11] = {
    0, 0,
    0b111,          // m=2: x^2+x+1
    0b1011,         // m=3: x^3+x+1
    0b10011,        // m=4: x^4+x+1
    0b100101,       // m=5: x^5+x^2+1
    0b1000011,      // m=6: x^6+x+1
    0b10001001,     // m=7: x^7+x^3+1
    0b100011101,    // m=8: x^8+x^4+x^3+x^2+1
    0b1000010001,   // m=9: x^9+x^4+1
    0b10000001001,  // m=10: x^10+x^3+1
};
}

Gf2mField::Gf2mField(unsigned m) : m_(m) {
    if (m < 2 || m > 10) throw ValidationError("Gf2mField: m must be in [2,10]");
    poly_ = kPrimitive[m];
    const std::size_t q = size();
    antilog_.assign(q - 1, 0);
    log_.assign(q, 0);
    std::uint32_t x = 1;
    for (std::size_t i = 0; i < q - 1; ++i) {
        antilog_[i] = x;
        log_[x] = std::uint32_t(i);
        x <<= 1;
        if (x & q) x ^= poly_;
    }
    if (x != 1) throw ValidationError("Gf2mField: modulus is not primitive");
}

std::uint32_t Gf2mField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return antilog_[(log_[a] + log_[b]) % (size() - 1)];
}

std::uint32_t Gf2mField::alpha_pow(std::uint32_t e) const {
    return antilog_[e % (size() - 1)];
}

std::uint32_t Gf2mField::log_of(std::uint32_t x) const {
    if (x == 0 || x >= size()) throw ValidationError("Gf2mField::log_of: not a unit");
    return log_[x];
}

std::uint64_t Gf2mField::minimal_polynomial(std::uint32_t exponent) const {
    const std::size_t order = size() - 1;
    // cyclotomic coset of the exponent under doubling
    std::vector<std::uint32_t> coset;
    std::uint32_t e = exponent % order;
    do {
        coset.push_back(e);
        e = std::uint32_t((2ull * e) % order);
    } while (e != exponent % order);
    // product of (X + alpha^c); coefficients collapse into GF(2)
    std::vector<std::uint32_t> poly{1};
    for (std::uint32_t c : coset) {
        const std::uint32_t root = alpha_pow(c);
        std::vector<std::uint32_t> next(poly.size() + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] ^= poly[i];
            next[i] ^= mul(poly[i], root);
        }
        poly = std::move(next);
    }
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] > 1) throw ValidationError("minimal_polynomial: coefficient outside GF(2)");
        if (poly[i]) bits |= std::uint64_t(1) << i;
    }
    return bits;
}

} // namespace pod
