#include "pod/permutation.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace pod {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<std::uint8_t> seen(images_.size(), 0);
    for (std::uint32_t v : images_) {
        if (v >= images_.size() || seen[v])
            throw ValidationError("Permutation: image table is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(std::size_t n,
                                     const std::vector<std::vector<std::uint32_t>>& cycles) {
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= n) throw ValidationError("Permutation::from_cycles: point out of range");
            img[c[i]] = c[(i + 1) % c.size()];
        }
    }
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

std::uint32_t Permutation::smallest_moved_point() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return std::uint32_t(i);
    return std::uint32_t(images_.size());
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = std::uint32_t(i);
    return Permutation(std::move(inv));
}

BitMatrix Permutation::to_matrix() const {
    BitMatrix m(size(), size());
    for (std::size_t i = 0; i < size(); ++i) m.set(i, images_[i], true);
    return m;
}

std::string Permutation::to_text() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i) os << ' ';
        os << images_[i];
    }
    return os.str();
}

Permutation Permutation::parse(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::uint32_t> img;
    std::uint32_t v;
    while (is >> v) img.push_back(v);
    if (img.empty()) throw ParseError("permutation text: empty line");
    return Permutation(std::move(img));
}

Permutation Permutation::from_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open permutation file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") != std::string::npos)
            return parse(line);
    }
    throw ParseError("permutation file is empty: " + path);
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw ShapeError("compose: sizes differ");
    std::vector<std::uint32_t> img(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) img[i] = b(a(i));
    return Permutation(std::move(img));
}

std::vector<Permutation> parse_generator_file(std::istream& in) {
    std::size_t n = 0, count = 0;
    if (!(in >> n >> count)) throw ParseError("generator file: missing \"n count\" header");
    std::string rest;
    std::getline(in, rest);
    std::vector<Permutation> out;
    out.reserve(count);
    std::string line;
    while (out.size() < count && std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        Permutation p = Permutation::parse(line);
        if (p.size() != n) throw ParseError("generator file: permutation length != n");
        out.push_back(std::move(p));
    }
    if (out.size() != count) throw ParseError("generator file: fewer permutations than declared");
    return out;
}

std::vector<Permutation> load_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open generator file: " + path);
    return parse_generator_file(in);
}

} // namespace pod
