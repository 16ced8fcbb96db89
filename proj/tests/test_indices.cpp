#include <gtest/gtest.h>

#include <climits>

#include "mzv/indices.hpp"

using namespace mzv;

namespace {

// Independent oracle: decode every bitmask of w-1 cut points into a composition.
std::vector<Index> compositions_by_bitmask(int w) {
    std::vector<Index> out;
    if (w == 0) return {Index{}};
    for (unsigned mask = 0; mask < (1u << (w - 1)); ++mask) {
        Index s;
        int run = 1;
        for (int i = 0; i < w - 1; ++i) {
            if (mask & (1u << i)) { s.push_back(run); run = 1; }
            else ++run;
        }
        s.push_back(run);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Indices, Basics) {
    EXPECT_EQ(wt(Index{}), 0);
    EXPECT_EQ(dep(Index{}), 0);
    EXPECT_EQ(wt(Index{2, 3}), 5);
    EXPECT_EQ(index_to_string(Index{}), "∅");
    EXPECT_EQ(index_to_string(Index{1, 2}), "(1,2)");
}

TEST(Indices, EnumerateExamples) {
    auto all3 = enumerate(Family::ALL, 3, 5);
    EXPECT_EQ(all3, (std::vector<Index>{{1, 1, 1}, {1, 2}, {2, 1}, {3}}));
    auto t4 = enumerate(Family::T, 4, 3);
    EXPECT_EQ(t4, (std::vector<Index>{{1, 1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {2, 2}, {3, 1}}));
    EXPECT_EQ(enumerate(Family::ND0, 3, 3), (std::vector<Index>{{1, 2}}));
    EXPECT_EQ(enumerate(Family::ND0, 0, 3), (std::vector<Index>{Index{}}));
    EXPECT_EQ(enumerate(Family::ALL, 1, 2), (std::vector<Index>{{1}}));
}

TEST(Indices, FamiliesMatchFilteredOracle) {
    for (int q : {2, 3, 4, 5})
        for (int w = 0; w <= 10; ++w) {
            auto all = compositions_by_bitmask(w);
            EXPECT_EQ(enumerate(Family::ALL, w, q), all);
            for (Family f : {Family::T, Family::ND, Family::ND0}) {
                std::vector<Index> filt;
                for (const auto& s : all)
                    if (in_family(s, f, q)) filt.push_back(s);
                EXPECT_EQ(enumerate(f, w, q), filt) << family_name(f) << " q=" << q << " w=" << w;
                EXPECT_EQ(family_size(f, w, q), (long long)filt.size()) << family_name(f) << " q=" << q << " w=" << w;
            }
            EXPECT_EQ(family_size(Family::ALL, w, q), (long long)all.size());
        }
    EXPECT_EQ(family_size(Family::ALL, 100, 2), LLONG_MAX);
}

TEST(Indices, Dprime) {
    EXPECT_EQ(dprime(2, 3), 2);
    EXPECT_EQ(dprime(3, 3), 3);
    EXPECT_EQ(dprime(5, 3), 11);
    EXPECT_EQ(dprime(0, 2), 1);
    // q = 2: the recurrence gives 1,1,1,2,3,5,8,...
    std::vector<long long> q2 = {1, 1, 1, 2, 3, 5, 8, 13, 21};
    for (int w = 0; w < int(q2.size()); ++w) EXPECT_EQ(dprime(w, 2), q2[w]);
    for (int q : {2, 3, 4, 5})
        for (int w = 0; w <= 12; ++w) {
            EXPECT_EQ((long long)enumerate(Family::T, w, q).size(), dprime(w, q));
            EXPECT_EQ((long long)enumerate(Family::ND, w, q).size(), dprime(w, q));
        }
}

TEST(Indices, Bijection) {
    EXPECT_EQ(nd_to_t({7, 1}, 3), (Index{3, 3, 1, 1}));
    EXPECT_EQ(nd_to_t({1}, 5), (Index{1}));
    EXPECT_EQ(nd_to_t({3, 1}, 2), (Index{2, 1, 1}));
    EXPECT_THROW(nd_to_t({3}, 3), std::invalid_argument);
    EXPECT_THROW(t_to_nd({3}, 3), std::invalid_argument);
    for (int q : {2, 3, 4})
        for (int w = 0; w <= 10; ++w) {
            std::set<Index> img;
            for (const auto& s : enumerate(Family::ND, w, q)) {
                Index t = nd_to_t(s, q);
                EXPECT_TRUE(in_T(t, q));
                EXPECT_EQ(wt(t), w);
                EXPECT_EQ(t_to_nd(t, q), s);
                img.insert(t);
            }
            auto T = enumerate(Family::T, w, q);
            EXPECT_EQ(img, std::set<Index>(T.begin(), T.end()));
        }
}

TEST(Indices, PrefixSet) {
    EXPECT_EQ(prefix_set(std::vector<Index>{{1, 2}}), (std::set<Index>{{}, {1}, {1, 2}}));
    EXPECT_EQ(prefix_set(enumerate(Family::ND0, 3, 3)), (std::set<Index>{{}, {1}, {1, 2}}));
    EXPECT_EQ(prefix_set(std::vector<Index>{Index{}}), (std::set<Index>{{}}));
}

TEST(Indices, ThakurDecomposition) {
    auto d = decompose_thakur({2, 3, 3, 4, 1}, 3);
    EXPECT_EQ(d.sT, (Index{2}));
    EXPECT_EQ(d.m, 2);
    EXPECT_EQ(d.sprime, (Index{4, 1}));
    ASSERT_TRUE(d.sdprime.has_value());
    EXPECT_EQ(*d.sdprime, (Index{1, 1}));
    auto e = decompose_thakur({3}, 2);
    EXPECT_TRUE(e.sT.empty());
    EXPECT_EQ(e.m, 0);
    EXPECT_EQ(e.sprime, (Index{3}));
    EXPECT_EQ(*e.sdprime, (Index{1}));
    for (int q : {2, 3, 4})
        for (int w = 0; w <= 9; ++w)
            for (const auto& s : enumerate(Family::ALL, w, q)) {
                auto t = decompose_thakur(s, q);
                EXPECT_TRUE(in_T(t.sT, q));
                EXPECT_EQ(concat(t.init(q), t.sprime), s);
                if (in_T(s, q)) {
                    EXPECT_EQ(t.sT, s);
                    EXPECT_EQ(t.m, 0);
                    EXPECT_TRUE(t.sprime.empty());
                }
                EXPECT_EQ(t.sdprime.has_value(), !t.sprime.empty());
                if (!t.sprime.empty()) {
                    EXPECT_GT(t.sprime[0], q);
                    Index dd = t.sprime;
                    dd[0] -= q;
                    EXPECT_EQ(*t.sdprime, dd);
                }
            }
}
