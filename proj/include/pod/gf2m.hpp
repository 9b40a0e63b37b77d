#pragma once

#include <cstdint>
#include <vector>

namespace pod {

// GF(2^m) with log/antilog tables over a fixed primitive polynomial per m.
class Gf2mField {
public:
    explicit Gf2mField(unsigned m);

    unsigned degree() const { return m_; }
    std::size_t size() const { return std::size_t(1) << m_; }  // q = 2^m
    std::uint32_t modulus() const { return poly_; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t alpha_pow(std::uint32_t e) const;            // alpha^e
    std::uint32_t log_of(std::uint32_t x) const;               // x != 0

    // Minimal polynomial over GF(2) of alpha^exponent, as packed bits.
    std::uint64_t minimal_polynomial(std::uint32_t exponent) const;

private:
    unsigned m_;
    std::uint32_t poly_;
    std::vector<std::uint32_t> log_, antilog_;
};

} // namespace pod
