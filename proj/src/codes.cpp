#include "pod/codes.hpp"

#include <set>

#include "pod/bsgs.hpp"
#include "pod/errors.hpp"
#include "pod/transform.hpp"

namespace pod {

namespace {

int poly_degree(std::uint64_t p) { return 63 - __builtin_clzll(p); }

std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (a) {
        if (a & 1) r ^= b;
        a >>= 1;
        b <<= 1;
    }
    return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = poly_degree(m);
    while (a && poly_degree(a) >= dm) a ^= m << (poly_degree(a) - dm);
    return a;
}

void verify_code(const CodeSpec& code) {
    if (gf2_rank(code.g) != code.k)
        throw ValidationError(code.name + ": generator is rank-deficient");
    const BitMatrix prod = matmul(code.g, transpose(code.h));
    for (std::size_t r = 0; r < prod.rows(); ++r)
        if (!prod.row_is_zero(r))
            throw ValidationError(code.name + ": G*H^T != 0");
    for (std::size_t i = 0; i < code.aut_generators.size(); ++i)
        if (!verify_automorphism(code.g, code.aut_generators[i]))
            throw ValidationError(code.name + ": listed automorphism generator " +
                                  std::to_string(i) + " fails the rowspan test");
}

}  // namespace

std::uint64_t bch_generator(const Gf2mField& field, unsigned design_distance) {
    const std::size_t n = field.size() - 1;
    if (design_distance < 2 || design_distance > n)
        throw ValidationError("bch_generator: design distance out of range");
    std::uint64_t g = 1;
    std::set<std::uint32_t> seen;  // smallest coset member already absorbed
    for (unsigned e = 1; e < design_distance; ++e) {
        std::uint32_t mn = e % n, x = std::uint32_t((2ull * e) % n);
        while (x != e % n) {
            mn = std::min(mn, x);
            x = std::uint32_t((2ull * x) % n);
        }
        if (!seen.insert(mn).second) continue;
        g = poly_mul(g, field.minimal_polynomial(e));
    }
    // sanity: g divides x^n - 1
    const std::uint64_t xn1 = (std::uint64_t(1) << n) | 1;
    if (poly_mod(xn1, g) != 0)
        throw ValidationError("bch_generator: polynomial does not divide x^n-1");
    return g;
}

BitMatrix cyclic_generator_matrix(std::uint64_t gen_poly, std::size_t n) {
    const std::size_t k = n - std::size_t(poly_degree(gen_poly));
    BitMatrix g(k, n);
    for (std::size_t r = 0; r < k; ++r) {
        const std::uint64_t row = gen_poly << r;
        for (std::size_t c = 0; c < n; ++c)
            if ((row >> c) & 1) g.set(r, c, true);
    }
    return g;
}

BitMatrix extend_code(const BitMatrix& g) {
    BitMatrix out(g.rows(), g.cols() + 1);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        unsigned parity = 0;
        for (std::size_t c = 0; c < g.cols(); ++c) {
            if (g.get(r, c)) {
                out.set(r, c, true);
                parity ^= 1;
            }
        }
        if (parity) out.set(r, g.cols(), true);
    }
    return out;
}

BitMatrix parity_from_generator(const BitMatrix& g) {
    const std::size_t n = g.cols(), k = g.rows();
    RrefResult rr = rref_with_transform(g);
    if (rr.pivots.size() != k)
        throw ValidationError("parity_from_generator: generator is rank-deficient");
    // systematic on the pivot columns: h = [A^T at non-pivots | I], scattered
    // back into the original column order
    std::vector<std::size_t> nonpivots;
    std::vector<std::uint8_t> is_pivot(n, 0);
    for (std::size_t p : rr.pivots) is_pivot[p] = 1;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) nonpivots.push_back(c);
    BitMatrix h(n - k, n);
    for (std::size_t r = 0; r < nonpivots.size(); ++r) {
        h.set(r, nonpivots[r], true);
        for (std::size_t i = 0; i < k; ++i)
            if (rr.rref.get(i, nonpivots[r])) h.set(r, rr.pivots[i], true);
    }
    return h;
}

std::vector<Permutation> agl_generators(const Gf2mField& field) {
    const std::size_t q = field.size();
    const std::uint32_t zero_pos = std::uint32_t(q - 1);
    auto pos_of = [&](std::uint32_t el) {
        return el == 0 ? zero_pos : field.log_of(el);
    };
    auto el_of = [&](std::uint32_t pos) -> std::uint32_t {
        return pos == zero_pos ? 0 : field.alpha_pow(pos);
    };
    std::vector<std::uint32_t> mul(q), add_one(q), frob(q);
    for (std::uint32_t i = 0; i < q; ++i) {
        mul[i] = (i == zero_pos) ? zero_pos : (i + 1) % std::uint32_t(q - 1);
        add_one[i] = pos_of(el_of(i) ^ 1u);
        frob[i] = (i == zero_pos) ? zero_pos : std::uint32_t((2ull * i) % (q - 1));
    }
    return {Permutation(std::move(mul)), Permutation(std::move(add_one)),
            Permutation(std::move(frob))};
}

std::vector<Permutation> m24_generators() {
    constexpr std::uint32_t kP = 23, kInf = 23;
    bool is_square[kP] = {};
    for (std::uint32_t i = 1; i < kP; ++i) is_square[(i * i) % kP] = true;
    auto inv_mod = [](std::uint32_t a) {  // a^(p-2) mod 23
        std::uint64_t r = 1, b = a;
        for (unsigned e = kP - 2; e; e >>= 1, b = b * b % kP)
            if (e & 1) r = r * b % kP;
        return std::uint32_t(r);
    };
    const std::uint32_t inv9 = inv_mod(9);
    std::vector<std::uint32_t> add(24), dbl(24), neg_inv(24), cube(24);
    for (std::uint32_t y = 0; y < kP; ++y) {
        add[y] = (y + 1) % kP;
        dbl[y] = (2 * y) % kP;
        neg_inv[y] = (y == 0) ? kInf : (kP - inv_mod(y)) % kP;
        const std::uint32_t y3 = std::uint32_t((std::uint64_t(y) * y % kP) * y % kP);
        if (y == 0)
            cube[y] = 0;
        else if (is_square[y])
            cube[y] = std::uint32_t(std::uint64_t(y3) * inv9 % kP);
        else
            cube[y] = std::uint32_t(std::uint64_t(9) * y3 % kP);
    }
    add[kInf] = kInf;
    dbl[kInf] = kInf;
    neg_inv[kInf] = 0;
    cube[kInf] = kInf;
    return {Permutation(std::move(add)), Permutation(std::move(dbl)),
            Permutation(std::move(neg_inv)), Permutation(std::move(cube))};
}

CodeSpec ebch_code(unsigned m, unsigned design_distance, std::size_t expected_k,
                   std::size_t design_d, const std::string& name) {
    const Gf2mField field(m);
    const std::uint64_t gpoly = bch_generator(field, design_distance);
    const std::size_t n = field.size() - 1;
    CodeSpec code;
    code.name = name;
    code.g = extend_code(cyclic_generator_matrix(gpoly, n));
    code.n = n + 1;
    code.k = code.g.rows();
    code.d = design_d;
    if (code.k != expected_k)
        throw ValidationError(name + ": unexpected dimension " + std::to_string(code.k));
    code.h = parity_from_generator(code.g);
    code.aut_generators = agl_generators(field);
    verify_code(code);
    return code;
}

CodeSpec golay24() {
    static const CodeSpec cached = [] {
        // quadratic-residue generator polynomial of the (23,12) Golay code:
        // x^11+x^10+x^6+x^5+x^4+x^2+1, extended at the infinity coordinate
        const std::uint64_t gpoly = (1ull << 11) | (1ull << 10) | (1ull << 6) | (1ull << 5) |
                                    (1ull << 4) | (1ull << 2) | 1ull;
        CodeSpec code;
        code.name = "egolay24-12";
        code.g = extend_code(cyclic_generator_matrix(gpoly, 23));
        code.n = 24;
        code.k = 12;
        code.d = 8;
        // self-dual: the generator doubles as the parity check
        code.h = code.g;
        code.aut_generators = m24_generators();
        verify_code(code);
        const Bsgs group = Bsgs::schreier_sims(24, code.aut_generators);
        const auto order = group.order_u64();
        if (!order || *order != 244823040ull)
            throw ValidationError("golay24: M24 generator set has wrong order " +
                                  group.order().to_string());
        return code;
    }();
    return cached;
}

CodeSpec repetition_block_code() {
    CodeSpec code;
    code.name = "rep8-3";
    code.g = BitMatrix::from_strings({
        "11100000",
        "00011100",
        "00000011",
    });
    code.n = 8;
    code.k = 3;
    code.d = 2;
    code.h = parity_from_generator(code.g);
    // swaps inside each repeated block plus the exchange of the two
    // three-repetition blocks
    code.aut_generators = {
        Permutation::from_cycles(8, {{0, 1}}),
        Permutation::from_cycles(8, {{1, 2}}),
        Permutation::from_cycles(8, {{3, 4}}),
        Permutation::from_cycles(8, {{4, 5}}),
        Permutation::from_cycles(8, {{6, 7}}),
        Permutation::from_cycles(8, {{0, 3}, {1, 4}, {2, 5}}),
    };
    verify_code(code);
    return code;
}

bool is_builtin_code(const std::string& name) {
    return name == "rep8-3" || name == "ebch16-7" || name == "ebch64-16" ||
           name == "ebch64-36" || name == "egolay24-12";
}

CodeSpec builtin_code(const std::string& name) {
    if (name == "rep8-3") return repetition_block_code();
    if (name == "ebch16-7") return ebch_code(4, 5, 7, 6, name);
    if (name == "ebch64-16") return ebch_code(6, 23, 16, 24, name);
    if (name == "ebch64-36") return ebch_code(6, 11, 36, 12, name);
    if (name == "egolay24-12") return golay24();
    throw ValidationError("unknown builtin code: " + name);
}

CodeSpec load_code(const std::string& generator_path, const std::string& automorphism_path) {
    CodeSpec code;
    code.name = generator_path;
    code.g = BitMatrix::from_text_file(generator_path);
    code.n = code.g.cols();
    code.k = code.g.rows();
    code.d = 0;  // unknown for user-supplied codes
    code.h = parity_from_generator(code.g);
    if (!automorphism_path.empty()) {
        code.aut_generators = load_generator_file(automorphism_path);
        for (const Permutation& p : code.aut_generators)
            if (p.size() != code.n)
                throw ValidationError("load_code: automorphism degree != code length");
    }
    verify_code(code);
    return code;
}

} // namespace pod
