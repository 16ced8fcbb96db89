#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mzv/extfield.hpp"

using namespace mzv;

TEST(ExtField, AxiomsSmall) {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {5, 2}, {2, 1}, {3, 1}}) {
        const ExtField& E = ExtField::get(p, n);
        std::uint32_t Q = E.order();
        for (std::uint32_t a = 0; a < Q; ++a) {
            EXPECT_EQ(E.add(a, E.neg(a)), 0u);
            EXPECT_EQ(E.pow(a, Q), a);
            if (a) EXPECT_EQ(E.mul(a, E.inv(a)), 1u);
            for (std::uint32_t b = 0; b < Q; b += 3) {
                EXPECT_EQ(E.add(a, b), E.add(b, a));
                for (std::uint32_t c = 0; c < Q; c += 5)
                    EXPECT_EQ(E.mul(a, E.add(b, c)), E.add(E.mul(a, b), E.mul(a, c)));
            }
        }
        // p * 1 = 0
        std::uint32_t s = 0;
        for (int i = 0; i < p; ++i) s = E.add(s, 1);
        EXPECT_EQ(s, 0u);
    }
}

TEST(ExtField, EmbeddingIsAHomomorphism) {
    for (int q : {2, 3, 4, 9, 8}) {
        const Fq& F = Fq::get(q);
        PointField P(F, 2);
        const ExtField& E = P.ext();
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                EXPECT_EQ(P.embed(F.add(a, b)), E.add(P.embed(a), P.embed(b)));
                EXPECT_EQ(P.embed(F.mul(a, b)), E.mul(P.embed(a), P.embed(b)));
            }
        std::set<std::uint32_t> img;
        for (int a = 0; a < q; ++a) img.insert(P.embed(a));
        EXPECT_EQ(int(img.size()), q);
    }
}

TEST(ExtField, PolynomialEvaluationMatchesArithmetic) {
    std::mt19937 rng(1);
    const Fq& F = Fq::get(3);
    PointField P(F, 5);
    const ExtField& E = P.ext();
    for (int it = 0; it < 50; ++it) {
        std::vector<Fq::elt> a(6), b(4);
        for (auto& x : a) x = Fq::elt(rng() % 3);
        for (auto& x : b) x = Fq::elt(rng() % 3);
        Poly f(F, Var::theta, a), g(F, Var::theta, b);
        std::uint32_t x = E.gen_pow(rng() % 1000);
        EXPECT_EQ(P.eval(f * g, x), E.mul(P.eval(f, x), P.eval(g, x)));
        EXPECT_EQ(P.eval(f + g, x), E.add(P.eval(f, x), P.eval(g, x)));
    }
}

TEST(ExtField, OrbitsHaveExactDegreeAndAreDisjoint) {
    for (int q : {2, 3, 4}) {
        const Fq& F = Fq::get(q);
        int K = q == 4 ? 3 : 5;
        PointField P(F, K);
        PointField::OrbitStream os(P);
        std::set<std::uint32_t> seen;
        std::uint32_t x;
        long total = 0;
        while (os.next(x)) {
            EXPECT_EQ(P.ext().degree_over(x, q), K);
            for (int i = 0; i < K; ++i) EXPECT_TRUE(seen.insert(P.frob(x, i)).second);
            total += K;
        }
        // elements of exact degree K: q^K minus those in proper subfields
        long expect = long(ipow(q, K)) - q;
        EXPECT_EQ(total, expect);
    }
}

TEST(ExtField, CapIsEnforced) { EXPECT_THROW(ExtField::get(3, 20), std::length_error); }
