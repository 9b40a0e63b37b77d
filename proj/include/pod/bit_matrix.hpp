#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pod {

// Dense GF(2) matrix with 64-bit packed rows. Column c of row r lives in
// word c/64 at bit c%64; trailing bits of the last word stay zero.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    // One string per row, characters '0'/'1', string index = column index.
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = data_[r * wpr_ + c / 64];
        const std::uint64_t mask = std::uint64_t(1) << (c % 64);
        if (v) w |= mask; else w &= ~mask;
    }

    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * wpr_; }
    std::uint64_t* row(std::size_t r) { return data_.data() + r * wpr_; }

    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    bool row_is_zero(std::size_t r) const;

    std::vector<std::uint8_t> row_bits(std::size_t r) const;
    void set_row_bits(std::size_t r, const std::vector<std::uint8_t>& bits);

    bool operator==(const BitMatrix& other) const = default;

    // Text format: first line "rows cols", then one '0'/'1' line per row.
    std::string to_text() const;
    static BitMatrix from_text(std::istream& in);
    static BitMatrix from_text_file(const std::string& path);

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

struct RrefResult {
    BitMatrix rref;
    BitMatrix elim;                   // invertible; elim * input == rref
    std::vector<std::size_t> pivots;  // pivot columns, strictly increasing
};

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);
BitMatrix transpose(const BitMatrix& a);

// Deterministic reduction: leftmost nonzero column, topmost candidate row,
// eliminate above and below at pivot time. The result is the canonical RREF.
RrefResult rref_with_transform(const BitMatrix& a);

BitMatrix invert(const BitMatrix& a);  // SingularError when not invertible
std::size_t gf2_rank(const BitMatrix& a);
bool rowspan_equal(const BitMatrix& a, const BitMatrix& b);

// x * a for a row vector x of length a.rows().
std::vector<std::uint8_t> mul_vec_mat(const std::vector<std::uint8_t>& x, const BitMatrix& a);

// a * v^T for a column vector v of length a.cols(); returns one bit per row.
std::vector<std::uint8_t> mul_mat_vec(const BitMatrix& a, const std::vector<std::uint8_t>& v);

// Solves x * a == target. Returns nullopt when target is outside rowspan(a);
// shape violations throw instead.
std::optional<std::vector<std::uint8_t>> solve_right(const BitMatrix& a,
                                                     const std::vector<std::uint8_t>& target);

} // namespace pod
