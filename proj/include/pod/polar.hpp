#pragma once

#include <cstdint>
#include <vector>

#include "pod/bit_matrix.hpp"

namespace pod {

// Blocklength-n polar code with G_n = F^{(x)m} in natural bit order. Natural
// order makes G_n its own GF(2) inverse, so no separate inverse path exists.
struct PolarSpec {
    unsigned m = 0;
    std::size_t n = 0;
    BitMatrix generator;

    static PolarSpec make(unsigned m);
};

// Per-synthetic-channel classification derived from a dynamic frozen matrix
// in RREF: pivot columns carry information, every other column is frozen to
// the XOR of earlier pivots (possibly none, i.e. statically frozen).
struct DynamicFrozenSpec {
    std::size_t n = 0, k = 0;
    std::vector<std::uint32_t> pivots;                    // strictly increasing
    std::vector<std::int32_t> pivot_rank;                 // per position, -1 when frozen
    std::vector<std::vector<std::uint32_t>> constraints;  // per position, pivot ranks
};

struct DecodePath {
    std::vector<std::uint8_t> u_hat;
    double metric = 0.0;
};

struct PolarDecodeOptions {
    bool min_sum = false;        // sign*min f-rule instead of the exact one
    bool approx_metric = false;  // |L| on sign mismatch instead of ln(1+e^-x)
    double llr_clamp = 40.0;     // input saturation
};

// c = u * F^{(x)m} via the in-place butterfly, O(n log n).
std::vector<std::uint8_t> polar_encode(const PolarSpec& spec, const std::vector<std::uint8_t>& u);

// Successive cancellation over the dynamic-frozen polar code. Owns scratch
// buffers, so confine each instance to one thread.
class PolarDecoder {
public:
    PolarDecoder(const PolarSpec& spec, DynamicFrozenSpec df, PolarDecodeOptions opts = {});

    DecodePath sc(const std::vector<double>& llr);
    // Up to list_size paths, sorted by ascending path metric. list_size == 1
    // matches sc() exactly.
    std::vector<DecodePath> scl(const std::vector<double>& llr, std::size_t list_size);

    const DynamicFrozenSpec& frozen_spec() const { return df_; }

private:
    struct Path {
        std::vector<std::vector<double>> llr;        // [depth][pos]
        std::vector<std::vector<std::uint8_t>> left; // saved left-child sums
        std::vector<std::vector<std::uint8_t>> node; // assembled node sums
        std::vector<std::uint8_t> u;
        double metric = 0.0;
    };

    void check_input(const std::vector<double>& llr) const;
    double frozen_bit_penalty(Path& path, std::size_t leaf, double llr) const;
    void sc_node(unsigned depth);
    void scl_node(unsigned depth, std::size_t list_size);
    void leaf_fork(std::size_t list_size);

    unsigned m_;
    std::size_t n_;
    DynamicFrozenSpec df_;
    PolarDecodeOptions opts_;
    std::size_t leaf_ = 0;
    Path sc_path_;
    std::vector<Path> paths_;
};

DecodePath sc_decode(const PolarSpec& spec, const DynamicFrozenSpec& df,
                     const std::vector<double>& llr, PolarDecodeOptions opts = {});
std::vector<DecodePath> scl_decode(const PolarSpec& spec, const DynamicFrozenSpec& df,
                                   const std::vector<double>& llr, std::size_t list_size,
                                   PolarDecodeOptions opts = {});

} // namespace pod
