#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pod/bit_matrix.hpp"
#include "pod/errors.hpp"

namespace pod {

// Bijection on {0..n-1}, stored as the image table images[i] = pi(i).
// The matrix convention is P[i][pi(i)] = 1, so the row-vector action
// v -> v*P places coordinate i at position pi(i).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> images);

    static Permutation identity(std::size_t n);
    static Permutation from_cycles(std::size_t n,
                                   const std::vector<std::vector<std::uint32_t>>& cycles);

    std::size_t size() const { return images_.size(); }
    std::uint32_t operator()(std::size_t i) const { return images_[i]; }
    const std::vector<std::uint32_t>& images() const { return images_; }

    bool is_identity() const;
    // size() when the permutation is the identity
    std::uint32_t smallest_moved_point() const;

    Permutation inverse() const;
    BitMatrix to_matrix() const;

    // out[pi(i)] = v[i]
    template <typename T>
    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != images_.size()) throw ShapeError("Permutation::apply: length mismatch");
        std::vector<T> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[images_[i]] = v[i];
        return out;
    }

    bool operator==(const Permutation& other) const = default;

    std::string to_text() const;  // n space-separated images
    static Permutation parse(const std::string& line);
    static Permutation from_text_file(const std::string& path);

private:
    std::vector<std::uint32_t> images_;
};

// Applies a first, then b: compose(a,b)(i) == b(a(i)). Consistent with the
// matrix product matrix(a)*matrix(b).
Permutation compose(const Permutation& a, const Permutation& b);

// Generator-set file: a line "n <count>" followed by one permutation per line.
std::vector<Permutation> parse_generator_file(std::istream& in);
std::vector<Permutation> load_generator_file(const std::string& path);

} // namespace pod
