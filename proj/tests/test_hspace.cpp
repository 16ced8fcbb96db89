#include <gtest/gtest.h>

#include <random>

#include "mzv/hspace.hpp"

using namespace mzv;

namespace {

RationalFunc rf(const Fq& F, const std::string& s) { return RationalFunc::parse(F, Var::theta, s); }

HElem comb(const Fq& F, std::initializer_list<std::pair<Index, long long>> terms) {
    HElem h(F);
    for (const auto& [s, c] : terms) h.add_term(s, RationalFunc::constant(F, Var::theta, F.from_int(c)));
    return h;
}

// Independent oracle for the harmonic product: sum over all order-preserving
// overlapping merges (stuffles), written as an explicit search.
void stuffle_rec(const Index& s, size_t i, const Index& n, size_t j, Index& cur, FpComb& out, int p) {
    if (i == s.size() && j == n.size()) {
        out[cur] = (out[cur] + 1) % p;
        if (!out[cur]) out.erase(cur);
        return;
    }
    if (i < s.size()) {
        cur.push_back(s[i]);
        stuffle_rec(s, i + 1, n, j, cur, out, p);
        cur.pop_back();
    }
    if (j < n.size()) {
        cur.push_back(n[j]);
        stuffle_rec(s, i, n, j + 1, cur, out, p);
        cur.pop_back();
    }
    if (i < s.size() && j < n.size()) {
        cur.push_back(s[i] + n[j]);
        stuffle_rec(s, i + 1, n, j + 1, cur, out, p);
        cur.pop_back();
    }
}

FpComb stuffle_oracle(const Index& s, const Index& n, int p) {
    FpComb out;
    Index cur;
    stuffle_rec(s, 0, n, 0, cur, out, p);
    return out;
}

Index random_index(std::mt19937& rng, int w) {
    Index s;
    while (w > 0) {
        int a = 1 + int(rng() % w);
        s.push_back(a);
        w -= a;
    }
    return s;
}

}  // namespace

TEST(HSpace, Bracket) {
    const Fq& F = Fq::get(3);
    EXPECT_EQ(bracket(F, {Index{1}, Index{2, 3}}), HElem::of(F, {1, 2, 3}));
    EXPECT_TRUE(bracket(F, {Index{1}, HElem(F)}).is_zero());
    EXPECT_EQ(bracket(F, {Index{1}, comb(F, {{{2}, 2}, {{3}, 1}})}), comb(F, {{{1, 2}, 2}, {{1, 3}, 1}}));
    // [s, ∅] is [s], not zero
    EXPECT_EQ(bracket(F, {Index{4}, HElem::of(F, {})}), HElem::of(F, {4}));
}

TEST(HSpace, Boxplus) {
    const Fq& F = Fq::get(2);
    EXPECT_EQ(boxplus(HElem::of(F, {2, 1}), HElem::of(F, {3})), HElem::of(F, {2, 4}));
    EXPECT_TRUE(boxplus(HElem::of(F, {}), HElem::of(F, {5})).is_zero());
    EXPECT_TRUE(boxplus(HElem::of(F, {5}), HElem::of(F, {})).is_zero());
    for (int s = 1; s < 5; ++s)
        for (int n = 1; n < 5; ++n) EXPECT_EQ(boxplus(Index{s}, Index{n}), (Index{s + n}));
}

TEST(HSpace, DeltaCoeff) {
    EXPECT_EQ(delta_coeff(1, 1, 1, 2), 0);
    EXPECT_EQ(delta_coeff(2, 1, 1, 2), 1);
    EXPECT_EQ(delta_coeff(1, 2, 1, 3), 0);
    EXPECT_EQ(delta_coeff(2, 1, 2, 2), 0);
    EXPECT_EQ(delta_coeff(2, 1, 3, 2), 0);  // j out of range
}

TEST(HSpace, ProductExamples) {
    const Fq& F3 = Fq::get(3);
    const Fq& F2 = Fq::get(2);
    EXPECT_EQ(harmonic_product(HElem::of(F3, {1}), HElem::of(F3, {1})), comb(F3, {{{1, 1}, 2}, {{2}, 1}}));
    EXPECT_EQ(harmonic_product(HElem::of(F2, {1}), HElem::of(F2, {1})), HElem::of(F2, {2}));
    EXPECT_EQ(harmonic_product(HElem::of(F3, {1}), HElem::of(F3, {2})), comb(F3, {{{1, 2}, 1}, {{2, 1}, 1}, {{3}, 1}}));
    EXPECT_EQ(qshuffle_product(HElem::of(F3, {1}), HElem::of(F3, {2})), comb(F3, {{{1, 2}, 1}, {{2, 1}, 1}, {{3}, 1}}));
    EXPECT_EQ(qshuffle_product(HElem::of(F2, {1}), HElem::of(F2, {1})), HElem::of(F2, {2}));
    HElem P = comb(F3, {{{2, 1}, 2}, {{1}, 1}});
    EXPECT_EQ(harmonic_product(HElem::of(F3, {}), P), P);
    EXPECT_EQ(qshuffle_product(P, HElem::of(F3, {})), P);
    EXPECT_TRUE(qshuffle_product(P, HElem(F3)).is_zero());
}

TEST(HSpace, DZetaExamples) {
    const Fq& F2 = Fq::get(2);
    const Fq& F3 = Fq::get(3);
    EXPECT_EQ(d_zeta(F2, {2}, {1}), HElem::of(F2, {2, 1}));
    EXPECT_TRUE(d_zeta(F3, {1}, {2}).is_zero());
    EXPECT_TRUE(d_zeta(F2, {1}, {1}).is_zero());
    EXPECT_THROW(d_zeta(F2, {}, {1}), std::invalid_argument);
    EXPECT_TRUE(d_term(F2, {2}, {1}, Bullet::Li).is_zero());
    // vanishing whenever s1 + n1 <= q
    for (int q : {3, 4, 5})
        for (int a = 1; a < q; ++a)
            for (int b = 1; a + b <= q; ++b) EXPECT_TRUE(d_zeta(Fq::get(q), {a, 1}, {b}).is_zero());
}

TEST(HSpace, HarmonicMatchesStuffleOracle) {
    std::mt19937 rng(7);
    for (int q : {2, 3, 4, 5}) {
        int p = 0;
        is_prime_power(q, &p);
        for (int it = 0; it < 60; ++it) {
            Index s = random_index(rng, 1 + int(rng() % 5)), n = random_index(rng, 1 + int(rng() % 4));
            EXPECT_EQ(*index_product(s, n, Bullet::Li, q), stuffle_oracle(s, n, p));
        }
    }
}

TEST(HSpace, AlphaExamples) {
    const Fq& F2 = Fq::get(2);
    EXPECT_EQ(alpha_q(HElem::of(F2, {1}), Bullet::Zeta), HElem::of(F2, {1, 2}));
    for (int q : {2, 3, 4, 5}) {
        const Fq& F = Fq::get(q);
        EXPECT_EQ(alpha_q(HElem::of(F, {}), Bullet::Zeta), HElem::of(F, {1, q - 1}));
        EXPECT_EQ(alpha_q(HElem::of(F, {}), Bullet::Li), HElem::of(F, {1, q - 1}));
        HElem P = comb(F, {{{2, 1}, 1}, {{3}, 1}});
        EXPECT_EQ(alpha_q_iter(P, 0, Bullet::Zeta), P);
        for (int m = 1; m <= 3; ++m) {
            HElem A = alpha_q_iter(P, m, Bullet::Zeta);
            int w = 0;
            EXPECT_TRUE(A.is_homogeneous(&w));
            EXPECT_EQ(w, 3 + m * q);
            // depth grows by at most 2 per iteration
            EXPECT_LE(A.max_depth(), 2 + 2 * m);
        }
    }
}

TEST(HSpace, CommutativityGradingDepth) {
    std::mt19937 rng(2024);
    for (int q : {2, 3, 4}) {
        const Fq& F = Fq::get(q);
        for (int it = 0; it < 40; ++it) {
            int w1 = 1 + int(rng() % 5), w2 = 1 + int(rng() % (9 - w1));
            Index s = random_index(rng, w1), n = random_index(rng, w2);
            for (Bullet b : {Bullet::Li, Bullet::Zeta}) {
                auto sn = index_product(s, n, b, q), ns = index_product(n, s, b, q);
                EXPECT_EQ(*sn, *ns);
                for (const auto& kv : *sn) {
                    EXPECT_EQ(wt(kv.first), w1 + w2);
                    EXPECT_GE(dep(kv.first), std::max(dep(s), dep(n)));
                    EXPECT_LE(dep(kv.first), dep(s) + dep(n));
                }
            }
            // D-support depth: depth of u ≤ dep(s) + dep(n)
            for (const auto& kv : *d_zeta_comb(s, n, q)) EXPECT_LE(dep(kv.first), dep(s) + dep(n));
            HElem P = HElem::of(F, s), Q = HElem::of(F, n);
            EXPECT_EQ(product(P, Q, Bullet::Zeta), product(Q, P, Bullet::Zeta));
        }
    }
}

TEST(HSpace, ProductsAgreeWhenEntriesSmall) {
    // entries summing to at most q never produce a carry, so both products coincide
    for (int q : {3, 4, 5}) {
        std::mt19937 rng(q);
        for (int it = 0; it < 50; ++it) {
            Index s, n;
            int ds = 1 + int(rng() % 3), dn = 1 + int(rng() % 3);
            for (int i = 0; i < ds; ++i) s.push_back(1 + int(rng() % (q / 2)));
            for (int i = 0; i < dn; ++i) n.push_back(1 + int(rng() % (q / 2)));
            int maxsum = 0;
            for (int a : s)
                for (int b : n) maxsum = std::max(maxsum, a + b);
            if (maxsum > q) continue;
            EXPECT_EQ(*index_product(s, n, Bullet::Li, q), *index_product(s, n, Bullet::Zeta, q));
        }
    }
}

TEST(HSpace, ScalarsAndLinearity) {
    const Fq& F = Fq::get(3);
    HElem P = HElem::of(F, {1, 2}, rf(F, "θ+1")) + HElem::of(F, {3}, rf(F, "1/θ"));
    HElem Q = HElem::of(F, {2}, rf(F, "θ^2"));
    HElem R = HElem::of(F, {1}, rf(F, "2"));
    EXPECT_EQ(product(P + R, Q, Bullet::Zeta), product(P, Q, Bullet::Zeta) + product(R, Q, Bullet::Zeta));
    EXPECT_EQ(product(rf(F, "θ") * P, Q, Bullet::Li), rf(F, "θ") * product(P, Q, Bullet::Li));
    EXPECT_TRUE((P - P).is_zero());
    EXPECT_TRUE(P.is_homogeneous());
    EXPECT_FALSE((P + R).is_homogeneous());
}

TEST(HSpace, TextAndJsonRoundTrip) {
    for (int q : {2, 3, 4, 9}) {
        const Fq& F = Fq::get(q);
        std::mt19937 rng(q);
        for (int it = 0; it < 20; ++it) {
            HElem P(F);
            for (int k = 0; k < 4; ++k) {
                std::vector<Fq::elt> a(1 + rng() % 3), b(1 + rng() % 3);
                for (auto& x : a) x = Fq::elt(rng() % q);
                for (auto& x : b) x = Fq::elt(rng() % q);
                Poly den(F, Var::theta, b);
                if (den.is_zero()) continue;
                P.add_term(random_index(rng, 1 + int(rng() % 5)), RationalFunc(Poly(F, Var::theta, a), den));
            }
            P.add_term({}, rf(F, "θ"));
            EXPECT_EQ(HElem::parse(F, P.to_string()), P) << P.to_string();
            EXPECT_EQ(HElem::from_json(F, nlohmann::json::parse(P.to_json().dump())), P);
        }
        EXPECT_EQ(HElem(F).to_string(), "0");
        EXPECT_TRUE(HElem::parse(F, "0").is_zero());
        EXPECT_EQ(HElem::of(F, {}).to_string(), "1*[]");
    }
    const Fq& F2 = Fq::get(2);
    EXPECT_EQ(HElem::parse(F2, "1*[1,2] + (θ^2+θ)*[3]"),
              HElem::of(F2, {1, 2}) + HElem::of(F2, {3}, rf(F2, "θ^2+θ")));
    EXPECT_THROW(HElem::parse(F2, "1*[0]"), std::invalid_argument);
}

TEST(HSpace, CoeffsInFpL1) {
    const Fq& F = Fq::get(3);
    Poly L1 = L_poly(1, 3);
    EXPECT_TRUE(coeffs_in_Fp_L1(HElem::of(F, {1}, RationalFunc(L1 * L1 + L1.scaled(2)))));
    EXPECT_FALSE(coeffs_in_Fp_L1(HElem::of(F, {1}, rf(F, "θ"))));
    EXPECT_FALSE(coeffs_in_Fp_L1(HElem::of(F, {1}, rf(F, "1/θ"))));
    const Fq& F4 = Fq::get(4);
    EXPECT_FALSE(coeffs_in_Fp_L1(HElem::of(F4, {1}, RationalFunc::constant(F4, Var::theta, F4.gen()))));
}

TEST(HSpace, FieldMismatchIsAnError) {
    HElem a = HElem::of(Fq::get(2), {1}), b = HElem::of(Fq::get(3), {1});
    EXPECT_THROW(a + b, std::invalid_argument);
    EXPECT_THROW(HElem::of(Fq::get(3), {1}, RationalFunc::one(Fq::get(3), Var::t)), std::invalid_argument);
}
