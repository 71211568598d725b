#include <gtest/gtest.h>

#include "convexsum/convexgen.hpp"
#include "convexsum/energy.hpp"
#include "oracles.hpp"

using namespace convexsum;

namespace {
const IntegerSet kPowers{1, 2, 4, 8, 16};
const IntegerSet kSmall{1, 2, 4, 7, 11};
}  // namespace

TEST(Energy, Examples) {
    EXPECT_EQ(energy(IntegerSet{0}, IntegerSet{0}), 1);
    EXPECT_EQ(energy(kPowers, kPowers), 45);
    EXPECT_EQ(energy(kSmall, kSmall), 49);
    EXPECT_EQ(energy(kSmall, kSmall), oracle::energy_quadruples(kSmall, kSmall));
    EXPECT_EQ(energy(IntegerSet{}, kSmall), 0);
}

TEST(Energy, DebugModeComputesAllThree) {
    const auto f = energy_formulas(kSmall, kSmall);
    EXPECT_EQ(f.delta_product, 49);
    EXPECT_EQ(f.difference_square, 49);
    EXPECT_EQ(f.sum_square, 49);
    EXPECT_EQ(energy(kSmall, kPowers, EnergyCheck::debug), oracle::energy_quadruples(kSmall, kPowers));
}

TEST(Energy, TripleFormulaProperty) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 40), -60, 60);
        const auto b = oracle::random_set(rng, 1 + rng.uniform(0, 40), -300, 300);
        const auto f = energy_formulas(a, b);
        EXPECT_TRUE(f.agree()) << a.to_string() << " " << b.to_string();
        EXPECT_EQ(f.difference_square, oracle::energy(a, b));
    }
    const auto wide = generate("powers", 70);
    EXPECT_TRUE(energy_formulas(wide, generate("squares", 20)).agree());
}

TEST(Energy, CauchySchwarzLowerBounds) {
    Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 60), -100, 400);
        const Int e = energy(a, a);
        const Int n4 = Int(a.size()) * a.size() * a.size() * a.size();
        EXPECT_GE(e * sumset(a, a).size(), n4);
        EXPECT_GE(e * diffset(a, a).size(), n4);
    }
}

TEST(Energy3, Examples) {
    EXPECT_EQ(energy3(IntegerSet{0}), 1);
    EXPECT_EQ(energy3(kPowers), 145);
    EXPECT_EQ(energy3(kSmall), 157);
}

TEST(Energy3, MatchesTripleOracle) {
    Rng rng(33);
    for (int trial = 0; trial < 12; ++trial) {
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 70), -80, 80);
        EXPECT_EQ(energy3(a), oracle::energy3_triples(a));
    }
    const auto sq = generate("squares", 128);
    EXPECT_EQ(energy3(sq), oracle::energy3_triples(sq));
}

TEST(Energy, SidonClosedForms) {
    for (std::size_t n = 2; n <= 30; ++n) {
        const auto a = generate("mianchowla", n);
        const Int nn = n;
        EXPECT_EQ(energy(a, a), 2 * nn * nn - nn);
        EXPECT_EQ(energy3(a), nn * nn * nn + nn * nn - nn);
        EXPECT_EQ(diffset(a, a).size(), n * n - n + 1);
        EXPECT_EQ(sumset(a, a).size(), n * (n + 1) / 2);
    }
}

TEST(RankedDifferences, Examples) {
    const auto r = ranked_differences(kSmall);
    ASSERT_EQ(r.entries.size(), 19u);
    EXPECT_EQ(r.entries[0], (RankedDifference{0, 5}));
    EXPECT_EQ(r.entries[1], (RankedDifference{-3, 2}));
    EXPECT_EQ(r.entries[2], (RankedDifference{3, 2}));
    EXPECT_EQ(r.entries[3], (RankedDifference{-10, 1}));
    const auto p = ranked_differences(kPowers);
    for (std::size_t i = 1; i < p.entries.size(); ++i) EXPECT_EQ(p.entries[i].count, 1u);
    EXPECT_THROW(ranked_differences(IntegerSet{}), std::invalid_argument);
}

TEST(RankedDifferences, PermutationOfSupport) {
    Rng rng(34);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 50), 0, 120);
        const auto r = ranked_differences(a);
        const auto want = oracle::reps(a, a, false);
        ASSERT_EQ(r.entries.size(), want.size());
        std::uint64_t total = 0;
        std::map<Int, std::uint64_t> seen;
        for (std::size_t i = 0; i < r.entries.size(); ++i) {
            total += r.entries[i].count;
            seen[r.entries[i].value] = r.entries[i].count;
            if (i > 0) {
                const auto& prev = r.entries[i - 1];
                const auto& cur = r.entries[i];
                EXPECT_TRUE(prev.count > cur.count || (prev.count == cur.count && prev.value < cur.value));
            }
        }
        EXPECT_EQ(seen, want);
        EXPECT_EQ(total, a.size() * a.size());
        EXPECT_EQ(r.entries[0], (RankedDifference{0, a.size()}));
    }
}

TEST(PopularSet, Examples) {
    const auto p = popular_set(kPowers, PopularKind::P);
    EXPECT_EQ(p.threshold, Rational(25, 42));
    EXPECT_EQ(p.members.size(), 21u);
    EXPECT_EQ(popular_set(IntegerSet{0}, PopularKind::P).members, (IntegerSet{0}));
    const auto pp = popular_set(kSmall, PopularKind::P_prime);
    EXPECT_EQ(pp.threshold, Rational(25, 28));
    EXPECT_EQ(pp.members.size(), 19u);
    EXPECT_THROW(popular_set(IntegerSet{}, PopularKind::P), std::invalid_argument);
}

TEST(PopularSet, MatchesRationalOracle) {
    Rng rng(35);
    for (int trial = 0; trial < 40; ++trial) {
        // dense sets have nontrivial popular sets
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 63), 0, 90);
        for (auto kind : {PopularKind::P, PopularKind::P_prime}) {
            const auto got = popular_set(a, kind);
            const auto deltas = oracle::reps(a, a, false);
            const std::size_t spread = kind == PopularKind::P ? deltas.size() : oracle::reps(a, a, true).size();
            const Rational threshold(Int(a.size() * a.size()), Int(2 * spread));
            std::vector<Int> want;
            for (const auto& [s, c] : deltas)
                if (Rational(Int(c)) >= threshold) want.push_back(s);
            EXPECT_EQ(oracle::elems(got.members), want);
            EXPECT_EQ(got.threshold, threshold);
            EXPECT_TRUE(got.members.contains(0));
        }
    }
}

TEST(DyadicLayers, Examples) {
    const auto scan = dyadic_layers(kPowers);
    EXPECT_EQ(scan.doubling, Rational(3));
    ASSERT_EQ(scan.layers.size(), 2u);
    EXPECT_EQ(scan.layers[0].lower, Rational(5, 3));
    EXPECT_EQ(scan.layers[1].lower, Rational(10, 3));
    EXPECT_EQ(scan.layers[1].upper, Rational(20, 3));
    EXPECT_TRUE(scan.layers[0].members.empty());
    EXPECT_EQ(scan.layers[1].members, (IntegerSet{0}));
    EXPECT_EQ(scan.layers[1].mass, 5u);
    EXPECT_EQ(scan.residue.size(), 20u);
    EXPECT_EQ(scan.residue_mass + scan.layers[0].mass + scan.layers[1].mass, 25u);

    // |A| = 1: L = 1 and |A_0| = 1 = |A|/L sits on the strict lower edge.
    const auto one = dyadic_layers(IntegerSet{0});
    ASSERT_EQ(one.layers.size(), 1u);
    EXPECT_TRUE(one.layers[0].members.empty());
    EXPECT_EQ(one.residue, (IntegerSet{0}));
}

TEST(DyadicLayers, PartitionProperty) {
    Rng rng(36);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracle::random_set(rng, 1 + rng.uniform(0, 60), 0, 150);
        const auto scan = dyadic_layers(a);
        const auto deltas = oracle::reps(a, a, false);
        const Rational base = Rational(Int(a.size())) / scan.doubling;
        std::uint64_t mass = scan.residue_mass;
        std::size_t members = scan.residue.size();
        for (const auto& layer : scan.layers) {
            mass += layer.mass;
            members += layer.members.size();
            for (std::size_t i = 0; i < layer.members.size(); ++i) {
                const Rational c(Int(deltas.at(layer.members[i])));
                EXPECT_LT(layer.lower, c);
                EXPECT_LE(c, layer.upper);
            }
        }
        for (std::size_t i = 0; i < scan.residue.size(); ++i)
            EXPECT_LE(Rational(Int(deltas.at(scan.residue[i]))), base);
        EXPECT_EQ(mass, a.size() * a.size());
        EXPECT_EQ(members, deltas.size());
        EXPECT_GE(scan.layers.back().upper, Rational(Int(a.size())));
    }
}
