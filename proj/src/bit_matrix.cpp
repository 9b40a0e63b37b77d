#include "pod/bit_matrix.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

#include "pod/errors.hpp"

namespace pod {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) return {};
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw ShapeError("BitMatrix::from_strings: ragged rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            const char ch = rows[r][c];
            if (ch != '0' && ch != '1')
                throw ParseError("BitMatrix::from_strings: expected '0'/'1'");
            if (ch == '1') m.set(r, c, true);
        }
    }
    return m;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* ra = row(a);
    std::uint64_t* rb = row(b);
    for (std::size_t w = 0; w < wpr_; ++w) std::swap(ra[w], rb[w]);
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    const std::uint64_t* p = row(r);
    for (std::size_t w = 0; w < wpr_; ++w)
        if (p[w]) return false;
    return true;
}

std::vector<std::uint8_t> BitMatrix::row_bits(std::size_t r) const {
    std::vector<std::uint8_t> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
    return out;
}

void BitMatrix::set_row_bits(std::size_t r, const std::vector<std::uint8_t>& bits) {
    if (bits.size() != cols_) throw ShapeError("BitMatrix::set_row_bits: length mismatch");
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, bits[c] & 1);
}

std::string BitMatrix::to_text() const {
    std::ostringstream os;
    os << rows_ << ' ' << cols_ << '\n';
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) os << (get(r, c) ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

BitMatrix BitMatrix::from_text(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw ParseError("matrix text: missing \"rows cols\" header");
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        std::string line;
        if (!(in >> line) || line.size() != cols)
            throw ParseError("matrix text: bad row " + std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c) {
            if (line[c] != '0' && line[c] != '1')
                throw ParseError("matrix text: expected '0'/'1' in row " + std::to_string(r));
            if (line[c] == '1') m.set(r, c, true);
        }
    }
    return m;
}

BitMatrix BitMatrix::from_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    return from_text(in);
}

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions disagree");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const std::uint64_t* ar = a.row(i);
        std::uint64_t* orow = out.row(i);
        for (std::size_t w = 0; w < a.words_per_row(); ++w) {
            std::uint64_t bits = ar[w];
            while (bits) {
                const std::size_t t = w * 64 + std::size_t(__builtin_ctzll(bits));
                bits &= bits - 1;
                const std::uint64_t* br = b.row(t);
                for (std::size_t v = 0; v < b.words_per_row(); ++v) orow[v] ^= br[v];
            }
        }
    }
    return out;
}

BitMatrix transpose(const BitMatrix& a) {
    BitMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) out.set(c, r, true);
    return out;
}

RrefResult rref_with_transform(const BitMatrix& a) {
    BitMatrix r = a;
    BitMatrix e = BitMatrix::identity(a.rows());
    std::vector<std::size_t> pivots;
    std::size_t cur = 0;
    for (std::size_t col = 0; col < a.cols() && cur < a.rows(); ++col) {
        std::size_t sel = a.rows();
        for (std::size_t i = cur; i < a.rows(); ++i) {
            if (r.get(i, col)) { sel = i; break; }
        }
        if (sel == a.rows()) continue;
        r.swap_rows(cur, sel);
        e.swap_rows(cur, sel);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i != cur && r.get(i, col)) {
                r.xor_row(i, cur);
                e.xor_row(i, cur);
            }
        }
        pivots.push_back(col);
        ++cur;
    }
    return {std::move(r), std::move(e), std::move(pivots)};
}

BitMatrix invert(const BitMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("invert: matrix not square");
    RrefResult rr = rref_with_transform(a);
    if (rr.pivots.size() != a.rows()) throw SingularError("invert: singular matrix");
    return std::move(rr.elim);
}

std::size_t gf2_rank(const BitMatrix& a) {
    // plain elimination without transform tracking
    BitMatrix r = a;
    std::size_t cur = 0;
    for (std::size_t col = 0; col < a.cols() && cur < a.rows(); ++col) {
        std::size_t sel = a.rows();
        for (std::size_t i = cur; i < a.rows(); ++i)
            if (r.get(i, col)) { sel = i; break; }
        if (sel == a.rows()) continue;
        r.swap_rows(cur, sel);
        for (std::size_t i = cur + 1; i < a.rows(); ++i)
            if (r.get(i, col)) r.xor_row(i, cur);
        ++cur;
    }
    return cur;
}

bool rowspan_equal(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols()) throw ShapeError("rowspan_equal: column counts differ");
    RrefResult ra = rref_with_transform(a);
    RrefResult rb = rref_with_transform(b);
    if (ra.pivots != rb.pivots) return false;
    const std::size_t rank = ra.pivots.size();
    for (std::size_t i = 0; i < rank; ++i) {
        const std::uint64_t* x = ra.rref.row(i);
        const std::uint64_t* y = rb.rref.row(i);
        for (std::size_t w = 0; w < ra.rref.words_per_row(); ++w)
            if (x[w] != y[w]) return false;
    }
    return true;
}

std::vector<std::uint8_t> mul_vec_mat(const std::vector<std::uint8_t>& x, const BitMatrix& a) {
    if (x.size() != a.rows()) throw ShapeError("mul_vec_mat: length mismatch");
    std::vector<std::uint64_t> acc(a.words_per_row(), 0);
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (x[t] & 1) {
            const std::uint64_t* r = a.row(t);
            for (std::size_t w = 0; w < acc.size(); ++w) acc[w] ^= r[w];
        }
    }
    std::vector<std::uint8_t> out(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c)
        out[c] = (acc[c / 64] >> (c % 64)) & 1u;
    return out;
}

std::vector<std::uint8_t> mul_mat_vec(const BitMatrix& a, const std::vector<std::uint8_t>& v) {
    if (v.size() != a.cols()) throw ShapeError("mul_mat_vec: length mismatch");
    std::vector<std::uint64_t> packed(a.words_per_row(), 0);
    for (std::size_t c = 0; c < v.size(); ++c)
        if (v[c] & 1) packed[c / 64] |= std::uint64_t(1) << (c % 64);
    std::vector<std::uint8_t> out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const std::uint64_t* row = a.row(r);
        std::uint64_t par = 0;
        for (std::size_t w = 0; w < packed.size(); ++w) par ^= row[w] & packed[w];
        out[r] = std::uint8_t(__builtin_popcountll(par) & 1);
    }
    return out;
}

std::optional<std::vector<std::uint8_t>> solve_right(const BitMatrix& a,
                                                     const std::vector<std::uint8_t>& target) {
    if (target.size() != a.cols()) throw ShapeError("solve_right: target length mismatch");
    RrefResult rr = rref_with_transform(a);
    // coefficients against the RREF basis are read off at the pivot columns
    std::vector<std::uint8_t> y(a.rows(), 0);
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) y[r] = target[rr.pivots[r]] & 1;
    std::vector<std::uint8_t> check = mul_vec_mat(y, rr.rref);
    for (std::size_t c = 0; c < target.size(); ++c)
        if (check[c] != (target[c] & 1)) return std::nullopt;
    return mul_vec_mat(y, rr.elim);
}

} // namespace pod
