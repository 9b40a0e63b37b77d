#include <doctest.h>

#include <cmath>
#include <random>

#include "pod/codes.hpp"
#include "pod/errors.hpp"
#include "pod/polar.hpp"
#include "pod/transform.hpp"
#include "test_util.hpp"

using namespace pod;

TEST_SUITE_BEGIN("polar");

namespace {

BitMatrix kron_f(unsigned m) {
    BitMatrix g = BitMatrix::from_strings({"1"});
    for (unsigned s = 0; s < m; ++s) {
        const std::size_t n = g.rows();
        BitMatrix next(2 * n, 2 * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (g.get(i, j)) {
                    next.set(i, j, true);          // top-left F'
                    next.set(i + n, j, true);      // bottom-left F'
                    next.set(i + n, j + n, true);  // bottom-right F'
                }
        g = std::move(next);
    }
    return g;
}

std::vector<double> noiseless_llr(const std::vector<std::uint8_t>& c, double mag = 40.0) {
    std::vector<double> llr(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) llr[i] = c[i] ? -mag : mag;
    return llr;
}

std::vector<double> random_llr(std::mt19937_64& rng, std::size_t n, double scale = 3.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    std::vector<double> llr(n);
    for (auto& v : llr) v = gauss(rng);
    return llr;
}

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

// the exact path metric of a full path equals the codeword-level penalty sum
double codeword_penalty(const std::vector<std::uint8_t>& c, const std::vector<double>& llr) {
    double pm = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) pm += softplus(-(c[j] ? -llr[j] : llr[j]));
    return pm;
}

DynamicFrozenSpec classical_df(std::size_t n, const std::vector<std::uint32_t>& info) {
    BitMatrix m_p(info.size(), n);
    for (std::size_t r = 0; r < info.size(); ++r) m_p.set(r, info[r], true);
    return df_spec_from_m(m_p);
}

}  // namespace

TEST_CASE("spec generator matches the Kronecker recursion and is self-inverse") {
    for (unsigned m = 1; m <= 6; ++m) {
        const PolarSpec spec = PolarSpec::make(m);
        CHECK(spec.generator == kron_f(m));
        CHECK(matmul(spec.generator, spec.generator) == BitMatrix::identity(spec.n));
    }
}

TEST_CASE("polar_encode basics") {
    const PolarSpec s1 = PolarSpec::make(1);
    CHECK(polar_encode(s1, {0, 0}) == std::vector<std::uint8_t>{0, 0});
    CHECK(polar_encode(s1, {1, 1}) == std::vector<std::uint8_t>{0, 1});
    CHECK_THROWS_AS(polar_encode(s1, {1, 1, 0}), ShapeError);
}

TEST_CASE("butterfly equals the matrix product and is involutive") {
    const PolarSpec spec = PolarSpec::make(4);
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        const std::vector<std::uint8_t> u = podtest::random_message(rng, 16);
        const auto c = polar_encode(spec, u);
        CHECK(c == mul_vec_mat(u, spec.generator));
        CHECK(polar_encode(spec, c) == u);
    }
}

TEST_CASE("sc decodes the all-zero codeword from saturated LLRs") {
    const PolarSpec spec = PolarSpec::make(4);
    const DynamicFrozenSpec df = classical_df(16, {7, 11, 13, 14, 15});
    const DecodePath path = sc_decode(spec, df, std::vector<double>(16, 40.0));
    CHECK(path.u_hat == std::vector<std::uint8_t>(16, 0));
    CHECK(path.metric == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sc recovers every repetition-code message through the transform") {
    const CodeSpec code = repetition_block_code();
    const PolarSpec spec = PolarSpec::make(3);
    const TransformResult tr = polar_transform(code.g, Permutation::identity(8), spec);
    for (std::uint64_t m = 0; m < 8; ++m) {
        const std::vector<std::uint8_t> msg{std::uint8_t(m & 1), std::uint8_t((m >> 1) & 1),
                                            std::uint8_t((m >> 2) & 1)};
        const auto cw = encode_through(tr, spec, msg);
        const DecodePath path = sc_decode(spec, tr.df, noiseless_llr(cw));
        CHECK(recover_message(tr, path.u_hat) == msg);
    }
}

TEST_CASE("sc input validation") {
    const PolarSpec spec = PolarSpec::make(3);
    const DynamicFrozenSpec df = classical_df(8, {3, 5, 6, 7});
    CHECK_THROWS_AS(sc_decode(spec, df, std::vector<double>(7, 1.0)), ShapeError);
    std::vector<double> bad(8, 1.0);
    bad[2] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(sc_decode(spec, df, bad), ValidationError);
}

TEST_CASE("scl with list size one reduces to sc") {
    const CodeSpec code = repetition_block_code();
    const PolarSpec spec = PolarSpec::make(3);
    const TransformResult tr = polar_transform(code.g, Permutation::identity(8), spec);
    PolarDecoder dec(spec, tr.df);
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 1000; ++iter) {
        const auto llr = random_llr(rng, 8);
        const DecodePath sc = dec.sc(llr);
        const auto list = dec.scl(llr, 1);
        REQUIRE(list.size() == 1);
        CHECK(list[0].u_hat == sc.u_hat);
        CHECK(list[0].metric == doctest::Approx(sc.metric).epsilon(1e-12));
    }
}

TEST_CASE("every scl path satisfies its frozen constraints and the metric identity") {
    const CodeSpec code = builtin_code("ebch16-7");
    const PolarSpec spec = PolarSpec::make(4);
    const TransformResult tr = polar_transform(code.g, Permutation::identity(16), spec);
    PolarDecoder dec(spec, tr.df);
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        const auto llr = random_llr(rng, 16);
        const auto list = dec.scl(llr, 8);
        REQUIRE(!list.empty());
        for (std::size_t p = 0; p + 1 < list.size(); ++p)
            CHECK(list[p].metric <= list[p + 1].metric);
        for (const DecodePath& path : list) {
            for (std::size_t j = 0; j < 16; ++j) {
                if (tr.df.pivot_rank[j] >= 0) continue;
                std::uint8_t expect = 0;
                for (std::uint32_t r : tr.df.constraints[j]) expect ^= path.u_hat[tr.df.pivots[r]];
                CHECK(path.u_hat[j] == expect);
            }
            // full-path metric == codeword-level penalty, the exact-metric anchor
            const auto cw = polar_encode(spec, path.u_hat);
            CHECK(path.metric == doctest::Approx(codeword_penalty(cw, llr)).epsilon(1e-9));
        }
        // best list metric never exceeds the sc metric
        CHECK(list[0].metric <= dec.sc(llr).metric + 1e-12);
    }
}

TEST_CASE("exhaustive scl equals brute-force ML on the repetition code") {
    const CodeSpec code = repetition_block_code();
    const PolarSpec spec = PolarSpec::make(3);
    const TransformResult tr = polar_transform(code.g, Permutation::identity(8), spec);
    PolarDecoder dec(spec, tr.df);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int iter = 0; iter < 1000; ++iter) {
        const std::vector<std::uint8_t> msg = podtest::random_message(rng, 3);
        const auto cw = mul_vec_mat(msg, code.g);
        std::vector<double> llr(8);
        for (std::size_t j = 0; j < 8; ++j)
            llr[j] = 2.0 * ((cw[j] ? -1.0 : 1.0) + gauss(rng));
        const auto list = dec.scl(llr, 8);
        const auto best = polar_encode(spec, list[0].u_hat);
        CHECK(best == podtest::naive_ml(code.g, llr));
    }
}

TEST_CASE("min-sum and approximate-metric modes still decode noiseless input") {
    const CodeSpec code = builtin_code("ebch16-7");
    const PolarSpec spec = PolarSpec::make(4);
    const TransformResult tr = polar_transform(code.g, Permutation::identity(16), spec);
    PolarDecodeOptions opts;
    opts.min_sum = true;
    opts.approx_metric = true;
    PolarDecoder dec(spec, tr.df, opts);
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 50; ++iter) {
        const auto msg = podtest::random_message(rng, 7);
        const auto cw = encode_through(tr, spec, msg);
        const auto list = dec.scl(noiseless_llr(cw), 4);
        CHECK(recover_message(tr, list[0].u_hat) == msg);
        CHECK(list[0].metric == doctest::Approx(0.0));
    }
}

TEST_SUITE_END();
