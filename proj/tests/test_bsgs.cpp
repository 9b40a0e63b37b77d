#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "pod/bsgs.hpp"
#include "pod/codes.hpp"
#include "pod/errors.hpp"

using namespace pod;

TEST_SUITE_BEGIN("permgroup");

namespace {

// breadth-first closure, usable up to a few thousand elements
std::set<std::vector<std::uint32_t>> closure(std::size_t n, const std::vector<Permutation>& gens) {
    std::set<std::vector<std::uint32_t>> seen{Permutation::identity(n).images()};
    std::vector<Permutation> frontier{Permutation::identity(n)};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const Permutation& p : frontier) {
            for (const Permutation& g : gens) {
                Permutation q = compose(p, g);
                if (seen.insert(q.images()).second) next.push_back(std::move(q));
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST_CASE("trivial group") {
    const Bsgs g = Bsgs::schreier_sims(6, {});
    CHECK(g.order().to_string() == "1");
    CHECK(g.contains(Permutation::identity(6)));
    CHECK_FALSE(g.contains(Permutation::from_cycles(6, {{0, 1}})));
    std::mt19937_64 rng(1);
    CHECK(g.sample_uniform(rng).is_identity());
    CHECK(g.enumerate(10) == std::vector<Permutation>{Permutation::identity(6)});
}

TEST_CASE("symmetric group S4 from a transposition and a 4-cycle") {
    const std::vector<Permutation> gens{Permutation::from_cycles(4, {{0, 1}}),
                                        Permutation::from_cycles(4, {{0, 1, 2, 3}})};
    const Bsgs g = Bsgs::schreier_sims(4, gens);
    CHECK(g.order_u64() == 24);
    const auto elems = g.enumerate(100);
    CHECK(elems.size() == 24);
    std::set<std::vector<std::uint32_t>> as_set;
    for (const auto& p : elems) as_set.insert(p.images());
    CHECK(as_set.size() == 24);
    CHECK(as_set == closure(4, gens));
    // membership agrees with the exhaustive oracle for every transposition
    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = a + 1; b < 4; ++b)
            CHECK(g.contains(Permutation::from_cycles(4, {{a, b}})));
}

TEST_CASE("membership oracle on a proper subgroup") {
    // A4 inside S4: products of two transpositions plus 3-cycles
    const std::vector<Permutation> gens{Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                                        Permutation::from_cycles(4, {{0, 1, 2}})};
    const Bsgs g = Bsgs::schreier_sims(4, gens);
    CHECK(g.order_u64() == 12);
    const auto oracle = closure(4, gens);
    std::mt19937_64 rng(5);
    std::vector<std::uint32_t> img(4);
    std::iota(img.begin(), img.end(), 0u);
    for (int iter = 0; iter < 200; ++iter) {
        for (std::size_t i = 4; i > 1; --i) std::swap(img[i - 1], img[rng() % i]);
        const Permutation p(img);
        CHECK(g.contains(p) == (oracle.count(p.images()) == 1));
    }
}

TEST_CASE("repetition code automorphism generators close to order 144") {
    const CodeSpec code = repetition_block_code();
    const Bsgs g = Bsgs::schreier_sims(8, code.aut_generators);
    CHECK(g.order_u64() == 144);
    const auto elems = g.enumerate(200);
    CHECK(elems.size() == 144);
    CHECK(closure(8, code.aut_generators).size() == 144);
}

TEST_CASE("order is invariant under generator shuffling") {
    const CodeSpec code = repetition_block_code();
    std::vector<Permutation> gens = code.aut_generators;
    std::mt19937_64 rng(9);
    for (int iter = 0; iter < 5; ++iter) {
        for (std::size_t i = gens.size(); i > 1; --i) std::swap(gens[i - 1], gens[rng() % i]);
        CHECK(Bsgs::schreier_sims(8, gens).order_u64() == 144);
    }
}

TEST_CASE("AGammaL(1,2^m) orders from the closed form") {
    CHECK(Bsgs::schreier_sims(8, agl_generators(Gf2mField(3))).order_u64() == 168);
    CHECK(Bsgs::schreier_sims(16, agl_generators(Gf2mField(4))).order_u64() == 960);
}

TEST_CASE("AGammaL(1,8) enumerates completely") {
    const Bsgs g = Bsgs::schreier_sims(8, agl_generators(Gf2mField(3)));
    const auto elems = g.enumerate(200);
    CHECK(elems.size() == 168);
    std::set<std::vector<std::uint32_t>> distinct;
    for (const auto& p : elems) {
        distinct.insert(p.images());
        CHECK(g.contains(p));
    }
    CHECK(distinct.size() == 168);
    CHECK_THROWS_AS(g.enumerate(100), CapacityError);
}

TEST_CASE("first_elements is a prefix of enumerate") {
    const Bsgs g = Bsgs::schreier_sims(8, agl_generators(Gf2mField(3)));
    const auto all = g.enumerate(200);
    const auto head = g.first_elements(17);
    REQUIRE(head.size() == 17);
    for (std::size_t i = 0; i < head.size(); ++i) CHECK(head[i] == all[i]);
}

TEST_CASE("closure properties of sampled elements") {
    const Bsgs g = Bsgs::schreier_sims(16, agl_generators(Gf2mField(4)));
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 100; ++iter) {
        const Permutation a = g.sample_uniform(rng), b = g.sample_uniform(rng);
        CHECK(g.contains(compose(a, b)));
        CHECK(g.contains(a.inverse()));
    }
}

TEST_CASE("uniform sampling over S3 passes a chi-square test") {
    const std::vector<Permutation> gens{Permutation::from_cycles(3, {{0, 1}}),
                                        Permutation::from_cycles(3, {{0, 1, 2}})};
    const Bsgs g = Bsgs::schreier_sims(3, gens);
    REQUIRE(g.order_u64() == 6);
    std::mt19937_64 rng(17);
    std::map<std::vector<std::uint32_t>, int> counts;
    const int draws = 6000;
    for (int i = 0; i < draws; ++i) {
        const Permutation s = g.sample_uniform(rng);
        CHECK(g.contains(s));
        counts[s.images()]++;
    }
    REQUIRE(counts.size() == 6);
    double chi2 = 0.0;
    for (const auto& [img, c] : counts) {
        const double diff = c - 1000.0;
        chi2 += diff * diff / 1000.0;
    }
    // chi-square df=5 at significance 0.001
    CHECK(chi2 < 20.515);
}

TEST_CASE("invalid generators are rejected") {
    CHECK_THROWS_AS(Bsgs::schreier_sims(4, {Permutation::identity(5)}), ValidationError);
}

TEST_SUITE_END();
