#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pod/permutation.hpp"

namespace pod {

// Minimal unsigned big integer, enough for permutation group orders.
class BigUint {
public:
    BigUint(std::uint64_t v = 0);
    void mul(std::uint64_t f);
    std::string to_string() const;
    std::optional<std::uint64_t> to_u64() const;
    bool operator==(const BigUint& other) const = default;

private:
    std::vector<std::uint32_t> limbs_;  // base 1e9, little-endian
};

// Base and strong generating set built by the deterministic Schreier-Sims
// algorithm. Immutable after construction; safe to share across threads.
class Bsgs {
public:
    static Bsgs schreier_sims(std::size_t n, const std::vector<Permutation>& generators);

    std::size_t n() const { return n_; }
    std::size_t depth() const { return levels_.size(); }
    std::vector<std::uint32_t> base() const;
    std::vector<std::size_t> transversal_sizes() const;
    const std::vector<Permutation>& level_generators(std::size_t level) const;

    BigUint order() const;
    std::optional<std::uint64_t> order_u64() const;

    bool contains(const Permutation& p) const;

    // Exactly uniform over the group: one independently uniform coset
    // representative per level.
    Permutation sample_uniform(std::mt19937_64& rng) const;

    // All elements, depth-first over transversals with orbit points taken in
    // ascending order. CapacityError when the order exceeds limit.
    std::vector<Permutation> enumerate(std::size_t limit) const;
    // First count elements of the same depth-first order (prefix-stable).
    std::vector<Permutation> first_elements(std::size_t count) const;

private:
    struct Level {
        std::uint32_t base_point = 0;
        std::vector<Permutation> gens;
        std::vector<std::uint32_t> orbit;     // BFS discovery order, orbit[0] = base_point
        std::vector<std::int32_t> slot;       // point -> index into orbit, -1 outside
        std::vector<Permutation> reps;        // reps[slot[p]] maps base_point to p
        void rebuild(std::size_t n);
    };

    // residue and the first level it failed to sift through (depth() if none)
    std::pair<Permutation, std::size_t> sift(Permutation p, std::size_t from) const;
    void enumerate_rec(std::size_t level, const Permutation& acc,
                       std::vector<Permutation>& out, std::size_t cap) const;

    std::size_t n_ = 0;
    std::vector<Level> levels_;
};

} // namespace pod
