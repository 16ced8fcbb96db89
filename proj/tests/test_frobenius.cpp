#include <gtest/gtest.h>

#include "mzv/frobenius.hpp"

using namespace mzv;

namespace {

RationalFunc rt(const Fq& F, const std::string& s) { return RationalFunc::parse(F, Var::t, s); }

}  // namespace

TEST(Frobenius, TwistExamples) {
    const Fq& F2 = Fq::get(2);
    TwistedPoly c = TwistedPoly::constant(rt(F2, "(t+1)/t"));
    EXPECT_EQ(twist(c, 2), c);
    RationalFunc T = RationalFunc(T_poly(F2));
    TwistedPoly x1 = twist(TwistedPoly::X(F2, 1), 2);
    EXPECT_EQ(x1, TwistedPoly::constant(T) + TwistedPoly::X(F2, 2));
    TwistedPoly x2 = twist(TwistedPoly::X(F2, 2), 2);
    EXPECT_EQ(x2, TwistedPoly::constant(T * T) + TwistedPoly::X(F2, 4));
    const Fq& F3 = Fq::get(3);
    RationalFunc T3 = RationalFunc(T_poly(F3));
    TwistedPoly y = twist(TwistedPoly::X(F3, 2), 3);
    TwistedPoly expect = TwistedPoly::constant(T3 * T3) + TwistedPoly::X(F3, 3).scaled(T3 + T3) + TwistedPoly::X(F3, 6);
    EXPECT_EQ(y, expect);
}

TEST(Frobenius, TwistMatchesThetaFrobenius) {
    // in theta-coordinates the twist replaces theta by theta^q
    const Fq& F = Fq::get(3);
    TwistedPoly p = TwistedPoly::X(F, 2).scaled(rt(F, "t+2")) + TwistedPoly::X(F, 1).scaled(rt(F, "1/t")) +
                    TwistedPoly::constant(rt(F, "t^2"));
    auto a = p.theta_coeffs();
    auto b = twist(p, 3).theta_coeffs();
    std::map<int, RationalFunc> expect;
    for (const auto& [k, c] : a) expect.emplace(3 * k, c);
    EXPECT_EQ(b, expect);
}

TEST(Frobenius, SystemShapes) {
    for (int q : {2, 3, 4}) {
        const Fq& F = Fq::get(q);
        FrobSystem s0 = build_system(F, {Index{}}, 0);
        EXPECT_EQ(s0.nodes.size(), 1u);
        FrobSystem sq = build_system(F, nd0_indices(q, q), q);
        EXPECT_EQ(sq.M, (std::vector<Index>{{1, q - 1}}));
        EXPECT_EQ(sq.nodes.size(), 3u);
        if (q >= 3) {
            FrobSystem s2 = build_system(F, nd0_indices(2 * q - 2, q), 2 * q - 2);
            EXPECT_EQ(s2.M.size(), 2u);
            EXPECT_EQ(s2.nodes.size(), 4u);
            EXPECT_EQ(s2.children.at(Index{}).size(), 2u);
        }
    }
    const Fq& F = Fq::get(2);
    EXPECT_THROW(build_system(F, {}, 2), std::invalid_argument);
    EXPECT_THROW(build_system(F, {{1, 1}, {3}}, 2), std::invalid_argument);
}

TEST(Frobenius, SmallExamples) {
    const Fq& F2 = Fq::get(2);
    FrobSolution z = solve_Xw(F2, 0);
    ASSERT_EQ(z.dimension, 1);
    EXPECT_EQ(z.basis[0].at(Index{}), TwistedPoly::constant(RationalFunc::one(F2, Var::t)));
    const Fq& F3 = Fq::get(3);
    EXPECT_EQ(solve_Xw(F3, 3).dimension, 0);
    EXPECT_EQ(solve_Xw(F3, 4).dimension, 1);
}

TEST(Frobenius, TreeSolverAgreesWithGlobal) {
    for (int q : {2, 3, 4})
        for (int w = 0; w <= (q == 2 ? 5 : 7); ++w) {
            const Fq& F = Fq::get(q);
            FrobSystem S = build_system(F, nd0_indices(w, q), w);
            FrobSolution a = solve_system(S), b = solve_system_global(S);
            EXPECT_EQ(a.dimension, b.dimension) << q << " " << w;
            EXPECT_TRUE(a.verified);
            EXPECT_TRUE(b.verified);
            if (a.dimension == 1) {
                EXPECT_EQ(a.basis[0], b.basis[0]) << q << " " << w;
            }
        }
}

TEST(Frobenius, DimensionPattern) {
    for (int q : {2, 3, 4}) {
        const Fq& F = Fq::get(q);
        for (int w = 0; w <= 10; ++w) {
            FrobSolution s = solve_Xw(F, w);
            EXPECT_EQ(s.dimension, w % (q - 1) == 0 ? 1 : 0) << q << " " << w;
            EXPECT_TRUE(s.verified);
            if (s.dimension == 1) {
                NormalizationReport r = check_generator_normalization(s.basis[0], w, F);
                EXPECT_TRUE(r.ok) << q << " " << w << " " << r.note;
                EXPECT_TRUE(r.polynomial_in_T) << q << " " << w;
            }
        }
    }
}

TEST(Frobenius, DegreeBoundsAndConstants) {
    for (int q : {2, 3}) {
        const Fq& F = Fq::get(q);
        for (int w = 1; w <= 6; ++w) {
            FrobSystem S = build_system(F, nd0_indices(w, q), w);
            FrobSolution s = solve_system(S);
            for (const auto& b : s.basis)
                for (const auto& [n, e] : b) {
                    auto th = e.theta_coeffs();
                    int deg = th.empty() ? -1 : th.rbegin()->first;
                    EXPECT_LE(deg, (w - wt(n)) / (q - 1));
                    if (wt(n) == w) {
                        EXPECT_LE(deg, 0);
                    }
                }
            // one extra degree of freedom yields no further solutions
            if (w <= 5) {
                EXPECT_EQ(solve_system(build_system(F, nd0_indices(w, q), w, 1)).dimension, s.dimension);
            }
        }
    }
}

TEST(Frobenius, NormalizationExamples) {
    const Fq& F2 = Fq::get(2);
    FrobSolution s = solve_Xw(F2, 1);
    ASSERT_EQ(s.dimension, 1);
    NormalizationReport r = check_generator_normalization(s.basis[0], 1, F2);
    EXPECT_TRUE(r.ok);
    EXPECT_TRUE(r.numerators_divisible);
    ASSERT_EQ(r.b.size(), 2u);
    EXPECT_TRUE(r.b[1].is_one());
    const Fq& F3 = Fq::get(3);
    FrobSolution s3 = solve_Xw(F3, 2);
    ASSERT_EQ(s3.dimension, 1);
    EXPECT_TRUE(check_generator_normalization(s3.basis[0], 2, F3).ok);
    EXPECT_TRUE(check_generator_normalization(solve_Xw(F3, 0).basis[0], 0, F3).ok);
}

TEST(Frobenius, TextRoundTrip) {
    for (int q : {2, 3, 4}) {
        const Fq& F = Fq::get(q);
        FrobSolution s = solve_Xw(F, 2 * (q - 1));
        ASSERT_EQ(s.dimension, 1);
        for (const auto& [n, e] : s.basis[0]) EXPECT_EQ(TwistedPoly::parse(F, e.to_string()), e) << e.to_string();
    }
    const Fq& F = Fq::get(2);
    EXPECT_THROW(TwistedPoly::parse(F, "(t)*x"), std::invalid_argument);
}
