#pragma once

#include <cstdint>
#include <vector>

#include "pod/bit_matrix.hpp"
#include "pod/permutation.hpp"
#include "pod/polar.hpp"

namespace pod {

// Polar transformation of a binary linear block code: the canonical RREF of
// G * P^-1 * G_n^-1 together with the elimination matrix that produced it.
// Every codeword factors as (m * e_p^-1) * m_p * G_n * P.
struct TransformResult {
    BitMatrix m_p;                     // k x n dynamic frozen matrix, RREF
    BitMatrix e_p;                     // k x k invertible row-operation matrix
    std::vector<std::size_t> pivots;
    DynamicFrozenSpec df;
    Permutation perm;                  // the P used

    std::string dump() const;          // inspection text format
};

// G with columns gathered through h^-1: out[r][j] = g[r][h(j)].
BitMatrix permute_columns(const BitMatrix& g, const Permutation& h);

TransformResult polar_transform(const BitMatrix& g, const Permutation& p, const PolarSpec& spec);

// Classifies the columns of an RREF dynamic frozen matrix into information
// pivots and frozen positions with their constraint sets.
DynamicFrozenSpec df_spec_from_m(const BitMatrix& m_p);

// Transform for P*h. The dynamic frozen matrix is recomputed from scratch and
// must match the base transform bit-exactly; a mismatch means h was not an
// automorphism and raises AutomorphismViolation.
TransformResult branch_dress(const TransformResult& base, const Permutation& h,
                             const PolarSpec& spec);

// rowspan(G) == rowspan(G*h^-1), the automorphism-group membership test.
bool verify_automorphism(const BitMatrix& g, const Permutation& h);

// u_hat restricted to the pivots, mapped back through E_P.
std::vector<std::uint8_t> recover_message(const TransformResult& result,
                                          const std::vector<std::uint8_t>& u_hat);
std::vector<std::uint8_t> recover_message(const DynamicFrozenSpec& df, const BitMatrix& e_p,
                                          const std::vector<std::uint8_t>& u_hat);

// Full encode chain m -> m*E^-1 -> u=m_P*M -> u*G_n -> *P; equals m*G.
std::vector<std::uint8_t> encode_through(const TransformResult& result, const PolarSpec& spec,
                                         const std::vector<std::uint8_t>& message);

} // namespace pod
