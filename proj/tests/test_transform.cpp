#include <doctest.h>

#include <random>
#include <set>

#include "pod/bsgs.hpp"
#include "pod/codes.hpp"
#include "pod/errors.hpp"
#include "pod/transform.hpp"
#include "test_util.hpp"

using namespace pod;

TEST_SUITE_BEGIN("transform");

namespace {

const Permutation kP1 = Permutation::from_cycles(8, {{0, 3}, {1, 4}, {2, 5}});
const Permutation kP2 = Permutation::from_cycles(8, {{0, 1}});

// canonical RREF of G * Gn for the repetition code, derived independently
const std::vector<std::string> kRepM = {"10110100", "01010100", "00000001"};

BitMatrix padded(const BitMatrix& g, std::size_t n_pad) {
    BitMatrix out(g.rows(), n_pad);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c)
            if (g.get(r, c)) out.set(r, c, true);
    return out;
}

Permutation pad_perm(const Permutation& p, std::size_t n_pad) {
    std::vector<std::uint32_t> img(n_pad);
    for (std::size_t i = 0; i < p.size(); ++i) img[i] = p(i);
    for (std::size_t i = p.size(); i < n_pad; ++i) img[i] = std::uint32_t(i);
    return Permutation(std::move(img));
}

}  // namespace

TEST_CASE("repetition code transform reproduces the worked example") {
    const CodeSpec code = repetition_block_code();
    const PolarSpec spec = PolarSpec::make(3);

    const TransformResult t1 = polar_transform(code.g, kP1, spec);
    const TransformResult t2 = polar_transform(code.g, kP2, spec);
    CHECK(t1.m_p == BitMatrix::from_strings(kRepM));
    CHECK(t1.m_p == t2.m_p);
    CHECK(t1.pivots == std::vector<std::size_t>{0, 1, 7});

    // independent oracle: E_P * (G * P^-1 * Gn^-1) via explicit matrix products
    const BitMatrix gn_inv = invert(spec.generator);
    const BitMatrix a1 = matmul(matmul(code.g, invert(kP1.to_matrix())), gn_inv);
    CHECK(matmul(t1.e_p, a1) == t1.m_p);
    const BitMatrix a2 = matmul(matmul(code.g, invert(kP2.to_matrix())), gn_inv);
    CHECK(matmul(t2.e_p, a2) == t2.m_p);

    // the row reduction of G*P1^-1 alone is the plain row swap
    CHECK(rref_with_transform(permute_columns(code.g, kP1)).elim ==
          BitMatrix::from_strings({"010", "100", "001"}));
}

TEST_CASE("transform rejects bad input") {
    const PolarSpec spec = PolarSpec::make(3);
    BitMatrix deficient = BitMatrix::from_strings({"11100000", "11100000", "00000011"});
    CHECK_THROWS_AS(polar_transform(deficient, Permutation::identity(8), spec), ValidationError);
    CHECK_THROWS_AS(polar_transform(BitMatrix(3, 16), Permutation::identity(16), spec), ShapeError);
}

TEST_CASE("df_spec_from_m classifies columns") {
    SUBCASE("identity-left block is the classical static frozen code") {
        BitMatrix m_p(3, 8);
        for (std::size_t r = 0; r < 3; ++r) m_p.set(r, r, true);
        const DynamicFrozenSpec df = df_spec_from_m(m_p);
        CHECK(df.pivots == std::vector<std::uint32_t>{0, 1, 2});
        for (std::size_t j = 3; j < 8; ++j) {
            CHECK(df.pivot_rank[j] == -1);
            CHECK(df.constraints[j].empty());
        }
    }
    SUBCASE("worked-example matrix has upper trapezoidal constraints") {
        const DynamicFrozenSpec df = df_spec_from_m(BitMatrix::from_strings(kRepM));
        CHECK(df.k == 3);
        CHECK(df.pivots == std::vector<std::uint32_t>{0, 1, 7});
        for (std::size_t j = 0; j < 8; ++j)
            for (std::uint32_t r : df.constraints[j]) CHECK(df.pivots[r] < j);
        CHECK(df.constraints[2] == std::vector<std::uint32_t>{0});
        CHECK(df.constraints[3] == std::vector<std::uint32_t>{0, 1});
        CHECK(df.constraints[4].empty());
        CHECK(df.constraints[5] == std::vector<std::uint32_t>{0, 1});
        CHECK(df.constraints[6].empty());
    }
    SUBCASE("non-RREF input is rejected") {
        CHECK_THROWS_AS(df_spec_from_m(BitMatrix::from_strings({"1100", "0110"})),
                        ValidationError);
        CHECK_THROWS_AS(df_spec_from_m(BitMatrix(2, 4)), ValidationError);
    }
}

TEST_CASE("induced codebook satisfies every frozen constraint") {
    std::mt19937_64 rng(21);
    const BitMatrix g = podtest::random_full_rank(rng, 4, 8);
    const PolarSpec spec = PolarSpec::make(3);
    const TransformResult tr = polar_transform(g, Permutation::identity(8), spec);
    for (std::uint64_t mi = 0; mi < 16; ++mi) {
        std::vector<std::uint8_t> m_p(4);
        for (std::size_t b = 0; b < 4; ++b) m_p[b] = (mi >> b) & 1;
        const auto u = mul_vec_mat(m_p, tr.m_p);
        for (std::size_t j = 0; j < 8; ++j) {
            if (tr.df.pivot_rank[j] >= 0) continue;
            std::uint8_t expect = 0;
            for (std::uint32_t r : tr.df.constraints[j]) expect ^= u[tr.df.pivots[r]];
            CHECK(u[j] == expect);
        }
    }
}

TEST_CASE("encode chain round trip") {
    SUBCASE("padded eGolay under the identity permutation") {
        const CodeSpec code = golay24();
        const PolarSpec spec = PolarSpec::make(5);
        const BitMatrix g = padded(code.g, 32);
        const TransformResult tr = polar_transform(g, Permutation::identity(32), spec);
        std::mt19937_64 rng(23);
        for (int iter = 0; iter < 100; ++iter) {
            const auto msg = podtest::random_message(rng, 12);
            CHECK(encode_through(tr, spec, msg) == mul_vec_mat(msg, g));
        }
    }
    SUBCASE("eBCH(16,7) against the linear-solve oracle") {
        const CodeSpec code = builtin_code("ebch16-7");
        const PolarSpec spec = PolarSpec::make(4);
        const TransformResult tr = polar_transform(code.g, Permutation::identity(16), spec);
        std::mt19937_64 rng(29);
        for (int iter = 0; iter < 1000; ++iter) {
            const auto msg = podtest::random_message(rng, 7);
            const auto cw = encode_through(tr, spec, msg);
            CHECK(cw == mul_vec_mat(msg, code.g));
            const auto u = polar_encode(spec, tr.perm.inverse().apply(cw));
            CHECK(recover_message(tr, u) == msg);
            CHECK(*solve_right(code.g, cw) == msg);
        }
    }
}

TEST_CASE("verify_automorphism on the repetition code") {
    const CodeSpec code = repetition_block_code();
    CHECK(verify_automorphism(code.g, Permutation::identity(8)));
    CHECK(verify_automorphism(code.g, kP1));
    CHECK(verify_automorphism(code.g, kP2));
    const Permutation cross = Permutation::from_cycles(8, {{3, 7}});
    CHECK_FALSE(verify_automorphism(code.g, cross));
    // exhaustive oracle
    const auto book = podtest::codebook(code.g);
    const auto book_cross = podtest::codebook(permute_columns(code.g, cross));
    CHECK(book != book_cross);
}

TEST_CASE("branch_dress keeps the dynamic frozen matrix") {
    const CodeSpec code = repetition_block_code();
    const PolarSpec spec = PolarSpec::make(3);
    const TransformResult base = polar_transform(code.g, kP1, spec);

    SUBCASE("identity leaves the transform unchanged") {
        const TransformResult same = branch_dress(base, Permutation::identity(8), spec);
        CHECK(same.m_p == base.m_p);
        CHECK(same.e_p == base.e_p);
        CHECK(same.perm == base.perm);
    }
    SUBCASE("the worked-example automorphism gives the same M with a new perm") {
        const TransformResult dressed = branch_dress(base, kP2, spec);
        CHECK(dressed.m_p == base.m_p);
        CHECK(dressed.perm == compose(kP1, kP2));
        CHECK_FALSE(dressed.perm == base.perm);
    }
    SUBCASE("a non-automorphism raises the violation error") {
        CHECK_THROWS_AS(branch_dress(base, Permutation::from_cycles(8, {{3, 7}}), spec),
                        AutomorphismViolation);
    }
}

TEST_CASE("orbit of M24 automorphisms preserves M on the padded eGolay code") {
    const CodeSpec code = golay24();
    const PolarSpec spec = PolarSpec::make(5);
    const TransformResult base = polar_transform(padded(code.g, 32), Permutation::identity(32), spec);
    const Bsgs group = Bsgs::schreier_sims(24, code.aut_generators);
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 100; ++iter) {
        const Permutation h = pad_perm(group.sample_uniform(rng), 32);
        const TransformResult dressed = branch_dress(base, h, spec);
        CHECK(dressed.m_p == base.m_p);
    }
}

TEST_CASE("equal rowspans after permutation give bit-identical M") {
    const CodeSpec code = builtin_code("ebch16-7");
    const PolarSpec spec = PolarSpec::make(4);
    const Bsgs group = Bsgs::schreier_sims(16, code.aut_generators);
    std::mt19937_64 rng(37);
    for (int iter = 0; iter < 25; ++iter) {
        // P2 = P1*h shares the rowspan of G*P^-1 by construction
        const Permutation p1 = group.sample_uniform(rng);
        const Permutation h = group.sample_uniform(rng);
        const Permutation p2 = compose(p1, h);
        REQUIRE(rowspan_equal(permute_columns(code.g, p1), permute_columns(code.g, p2)));
        CHECK(polar_transform(code.g, p1, spec).m_p == polar_transform(code.g, p2, spec).m_p);
    }
}

TEST_CASE("branch codebooks coincide on the repetition code") {
    const CodeSpec code = repetition_block_code();
    const PolarSpec spec = PolarSpec::make(3);
    const auto book = podtest::codebook(code.g);
    const Bsgs group = Bsgs::schreier_sims(8, code.aut_generators);
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 8; ++iter) {
        const TransformResult tr =
            polar_transform(code.g, compose(kP1, group.sample_uniform(rng)), spec);
        std::set<std::vector<std::uint8_t>> branch_book;
        for (std::uint64_t mi = 0; mi < 8; ++mi) {
            std::vector<std::uint8_t> m_p(3);
            for (std::size_t b = 0; b < 3; ++b) m_p[b] = (mi >> b) & 1;
            branch_book.insert(tr.perm.apply(polar_encode(spec, mul_vec_mat(m_p, tr.m_p))));
        }
        CHECK(branch_book == book);
    }
}

TEST_CASE("recover_message validates constraints") {
    const CodeSpec code = repetition_block_code();
    const PolarSpec spec = PolarSpec::make(3);
    const TransformResult tr = polar_transform(code.g, Permutation::identity(8), spec);
    std::vector<std::uint8_t> u(8, 0);
    u[2] = 1;  // violates u2 = u0
    CHECK_THROWS_AS(recover_message(tr, u), ValidationError);
}

TEST_SUITE_END();
