#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pod/bit_matrix.hpp"
#include "pod/gf2m.hpp"
#include "pod/permutation.hpp"

namespace pod {

// A verified benchmark code: full-rank generator, matching parity check, and
// automorphism generators that passed the rowspan test at construction.
struct CodeSpec {
    std::string name;
    std::size_t n = 0, k = 0, d = 0;
    BitMatrix g, h;
    std::vector<Permutation> aut_generators;

    std::size_t correctable_t() const { return d ? (d - 1) / 2 : 0; }
};

// Generator polynomial of the narrow-sense BCH code of length 2^m-1:
// lcm of the minimal polynomials of alpha^1..alpha^(delta-1).
std::uint64_t bch_generator(const Gf2mField& field, unsigned design_distance);

// k x n matrix whose rows are x^i * g(x).
BitMatrix cyclic_generator_matrix(std::uint64_t gen_poly, std::size_t n);

// Appends an overall parity column; every codeword becomes even-weight.
BitMatrix extend_code(const BitMatrix& g);

// Systematic-form parity check: rank n-k with g * h^T == 0.
BitMatrix parity_from_generator(const BitMatrix& g);

// The affine semilinear group AGammaL(1,2^m) acting on coordinates labelled
// by field elements: position i < 2^m-1 is alpha^i, the last position is the
// zero element (the overall parity coordinate). Generators: x -> alpha*x,
// x -> x+1 and the Frobenius x -> x^2.
std::vector<Permutation> agl_generators(const Gf2mField& field);

// Generators of M24 in the coordinates of golay24(): positions 0..22 are the
// residues mod 23, position 23 is the infinity (parity) coordinate.
std::vector<Permutation> m24_generators();

CodeSpec ebch_code(unsigned m, unsigned design_distance, std::size_t expected_k,
                   std::size_t design_d, const std::string& name);
CodeSpec golay24();
CodeSpec repetition_block_code();

// Builtin names: rep8-3, ebch16-7, ebch64-16, ebch64-36, egolay24-12.
CodeSpec builtin_code(const std::string& name);
bool is_builtin_code(const std::string& name);

// Generator matrix from a matrix text file plus an optional generator-set
// file of automorphisms; everything is verified on load.
CodeSpec load_code(const std::string& generator_path, const std::string& automorphism_path = "");

} // namespace pod
