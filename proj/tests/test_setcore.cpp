#include <gtest/gtest.h>

#include "convexsum/convexgen.hpp"
#include "convexsum/setcore.hpp"
#include "oracles.hpp"

using namespace convexsum;

namespace {

const IntegerSet kPowers{1, 2, 4, 8, 16};
const IntegerSet kSmall{1, 2, 4, 7, 11};

std::vector<Int> as_vector(const IntegerSet& a) { return oracle::elems(a); }

}  // namespace

TEST(IntegerSet, RejectsDisorderAndDuplicates) {
    EXPECT_THROW((IntegerSet{1, 1}), std::invalid_argument);
    EXPECT_THROW((IntegerSet{3, 2}), std::invalid_argument);
    EXPECT_NO_THROW((IntegerSet{-5, 0, 7}));
    EXPECT_TRUE(IntegerSet{}.empty());
}

TEST(IntegerSet, CanonicalRepresentation) {
    const Int big = Int(1) << 80;
    IntegerSet wide(std::vector<Int>{Int(-3), Int(5)});
    EXPECT_TRUE(wide.is_narrow());
    EXPECT_EQ(wide, (IntegerSet{-3, 5}));
    IntegerSet huge(std::vector<Int>{Int(1), big});
    EXPECT_FALSE(huge.is_narrow());
    EXPECT_EQ(huge.back(), big);
    EXPECT_TRUE(huge.contains(big));
    EXPECT_FALSE(huge.contains(big + 1));
    // Elements just past the int64 window go wide.
    IntegerSet edge(std::vector<std::int64_t>{0, kNarrowLimit + 1});
    EXPECT_FALSE(edge.is_narrow());
}

TEST(Sumset, Examples) {
    EXPECT_EQ(sumset(IntegerSet{0}, IntegerSet{0}), (IntegerSet{0}));
    EXPECT_EQ(sumset(kPowers, kPowers).size(), 15u);
    EXPECT_EQ(sumset(kSmall, kSmall).size(), 14u);
    EXPECT_TRUE(sumset(IntegerSet{}, kSmall).empty());
}

TEST(Diffset, Examples) {
    EXPECT_EQ(diffset(IntegerSet{0}, IntegerSet{0}), (IntegerSet{0}));
    EXPECT_EQ(diffset(kPowers, kPowers).size(), 21u);
    EXPECT_EQ(diffset(kSmall, kSmall).size(), 19u);
    EXPECT_TRUE(diffset(kSmall, IntegerSet{}).empty());
}

TEST(RepFunction, Examples) {
    const auto delta = rep_function(kSmall, kSmall, RepMode::difference);
    EXPECT_EQ(delta(0), 5u);
    EXPECT_EQ(delta(3), 2u);
    EXPECT_EQ(delta(-3), 2u);
    EXPECT_EQ(delta(100), 0u);
    const auto sigma = rep_function(kSmall, kSmall, RepMode::sum);
    EXPECT_EQ(sigma(8), 3u);
    EXPECT_EQ(sigma.total(), 25u);
    EXPECT_EQ(delta.total(), 25u);
}

TEST(Slice, Examples) {
    EXPECT_EQ(slice(kSmall, 0), kSmall);
    EXPECT_EQ(slice(kSmall, 3), (IntegerSet{4, 7}));
    EXPECT_TRUE(slice(kSmall, 1000).empty());
    EXPECT_TRUE(slice(kSmall, Int(1) << 100).empty());
}

TEST(Slice, SizeMatchesDeltaEverywhere) {
    for (const auto& a : {kSmall, kPowers, generate("squares", 40), generate("mianchowla", 30)}) {
        const auto delta = rep_function(a, a, RepMode::difference);
        for (std::size_t k = 0; k < delta.size(); ++k) {
            const Int s = delta.support()[k];
            const auto as = slice(a, s);
            ASSERT_EQ(as.size(), delta.counts()[k]) << "s=" << s;
            // A_{-s} = A_s - s
            EXPECT_EQ(slice(a, -s), as.translated(-s));
        }
    }
}

TEST(SetCore, WideElementsMatchOracle) {
    const auto a = generate("powers", 70);  // up to 2^70
    ASSERT_FALSE(a.is_narrow());
    const IntegerSet b{-3, 0, 5};
    EXPECT_EQ(as_vector(sumset(a, b)), oracle::keys(oracle::reps(a, b, true)));
    EXPECT_EQ(as_vector(diffset(a, b)), oracle::keys(oracle::reps(a, b, false)));
    EXPECT_EQ(diffset(a, a).size(), 70u * 69u + 1u);
    EXPECT_EQ(sumset(a, a).size(), 70u * 71u / 2u);
    EXPECT_EQ(slice(a, Int(1) << 69), (IntegerSet(std::vector<Int>{Int(1) << 70})));
}

TEST(SetCore, Properties) {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 30), -50, 200);
        const auto b = oracle::random_set(rng, 1 + rng.uniform(0, 30), -500, 500);
        const auto d = rep_function(a, b, RepMode::difference);
        const auto s = rep_function(a, b, RepMode::sum);
        EXPECT_EQ(d.total(), a.size() * b.size());
        EXPECT_EQ(s.total(), a.size() * b.size());
        EXPECT_EQ(sumset(a, b), sumset(b, a));
        const auto daa = diffset(a, a);
        EXPECT_EQ(daa, daa.negated());
        EXPECT_TRUE(daa.contains(0));
        // A' ⊆ A implies A' + B ⊆ A + B
        std::vector<std::int64_t> sub;
        for (auto x : a.narrow())
            if (rng.coin()) sub.push_back(x);
        EXPECT_TRUE(sumset(IntegerSet(sub), b).is_subset_of(sumset(a, b)));
    }
}

TEST(SetCore, OracleEquivalenceUpTo64) {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 63), -1000, 1000);
        const auto b = oracle::random_set(rng, 1 + rng.uniform(0, 63), -100000, 100000);
        for (bool sum : {false, true}) {
            const auto want = oracle::reps(a, b, sum);
            const auto got = rep_function(a, b, sum ? RepMode::sum : RepMode::difference);
            ASSERT_EQ(got.size(), want.size());
            std::size_t k = 0;
            for (const auto& [v, c] : want) {
                EXPECT_EQ(got.support()[k], v);
                EXPECT_EQ(got.counts()[k], c);
                ++k;
            }
        }
        const Int s = a.size() > 1 ? Int(a[1] - a[0]) : Int(0);
        EXPECT_EQ(as_vector(slice(a, s)), oracle::slice(a, s));
    }
}

TEST(RepFunction, ArrayAndSortedPathsAgree) {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 80), -3000, 3000);
        const auto b = oracle::random_set(rng, 1 + rng.uniform(0, 80), -3000, 3000);
        for (auto mode : {RepMode::difference, RepMode::sum}) {
            const auto sorted = rep_function(a, b, mode, RepStrategy::sorted);
            const auto array = rep_function(a, b, mode, RepStrategy::counting_array);
            EXPECT_EQ(sorted, array);
            EXPECT_EQ(sorted, rep_function(a, b, mode));
        }
        // symmetric self-difference path
        EXPECT_EQ(rep_function(a, a, RepMode::difference, RepStrategy::sorted),
                  rep_function(a, a, RepMode::difference, RepStrategy::counting_array));
    }
    const auto wide = generate("powers", 64);
    EXPECT_THROW(rep_function(wide, wide, RepMode::sum, RepStrategy::counting_array), std::invalid_argument);
}

TEST(SelfOverlaps, MatchSliceSizes) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = oracle::random_set(rng, 1 + rng.uniform(0, 100), -400, 400);
        const auto shifts = diffset(x, x);
        const auto got = self_overlaps(x, shifts);
        for (std::size_t k = 0; k < shifts.size(); ++k) ASSERT_EQ(got[k], slice(x, shifts[k]).size());
        // shifts outside A - A give zero
        const auto far = self_overlaps(x, IntegerSet{-5000, 5000});
        EXPECT_EQ(far[0], 0u);
        EXPECT_EQ(far[1], 0u);
    }
    const auto wide = generate("powers", 66);
    const auto shifts = diffset(wide, wide);
    const auto got = self_overlaps(wide, shifts);
    for (std::size_t k = 0; k < shifts.size(); ++k) ASSERT_EQ(got[k], shifts[k] == 0 ? 66u : 1u);
}

TEST(RepFunction, SelfDifferenceArrayMatchesSorted) {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_set(rng, 2 + rng.uniform(0, 200), -1000, 1000 + rng.uniform(0, 20000));
        EXPECT_EQ(rep_function(a, a, RepMode::difference),
                  rep_function(a, a, RepMode::difference, RepStrategy::sorted));
    }
    const auto sq = generate("squares", 300);
    EXPECT_EQ(rep_function(sq, sq, RepMode::difference), rep_function(sq, sq, RepMode::difference, RepStrategy::sorted));
}
