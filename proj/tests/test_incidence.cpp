#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "convexsum/incidence.hpp"
#include "oracles.hpp"

using namespace convexsum;

namespace {
const IntegerSet kTiny{1, 2, 4};

IntegerSet random_subset(Rng& rng, const IntegerSet& a) {
    std::vector<Int> keep;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (rng.coin()) keep.push_back(a[i]);
    if (keep.empty()) keep.push_back(a[0]);
    return IntegerSet(std::move(keep));
}
}  // namespace

TEST(BuildSystem, Examples) {
    const auto one = build_system(kTiny, kTiny, IntegerSet{0});
    EXPECT_EQ(one.system.curves.size(), 3u);
    for (const auto& c : one.system.curves) EXPECT_EQ(c.points.size(), 3u);

    const auto two = build_system(kTiny, kTiny, IntegerSet{0, 1});
    EXPECT_EQ(two.system.curves.size(), 6u);
    EXPECT_EQ(two.points.size(), 25u);
    EXPECT_EQ(two.points.points().front(), (Point{2, 1}));
    EXPECT_EQ(two.points.points().back(), (Point{6, 5}));
    ASSERT_EQ(two.system.base_curve.size(), 3u);
    EXPECT_EQ(two.system.base_curve[2], (std::pair<std::size_t, Int>{3, 4}));
}

TEST(BuildSystem, SubsetIndicesAndGridBound) {
    const auto a = generate("squares", 12);
    const auto part = IntegerSet{4, 25, 100};
    const auto inst = build_system(a, part, IntegerSet{-3, 0, 7});
    std::vector<std::size_t> q;
    for (const auto& [i, f] : inst.system.base_curve) q.push_back(i);
    EXPECT_EQ(q, (std::vector<std::size_t>{2, 5, 10}));
    std::set<std::int64_t> xs;
    for (const auto& p : inst.points.points()) xs.insert(p.x);
    EXPECT_LE(xs.size(), 2 * a.size());
    // every curve lies on the grid
    for (const auto& c : inst.system.curves)
        for (const auto& p : c.points) EXPECT_TRUE(inst.points.contains(p));
}

TEST(BuildSystem, Errors) {
    EXPECT_THROW(build_system(IntegerSet{1, 2, 3}, IntegerSet{1}, IntegerSet{0}), std::invalid_argument);
    EXPECT_THROW(build_system(kTiny, IntegerSet{3}, IntegerSet{0}), std::invalid_argument);
    EXPECT_THROW(build_system(kTiny, IntegerSet{}, IntegerSet{0}), std::invalid_argument);
    EXPECT_THROW(build_system(kTiny, kTiny, IntegerSet{}), std::invalid_argument);
}

TEST(CountIncidences, Examples) {
    const auto inst = build_system(kTiny, kTiny, IntegerSet{0, 1});
    PseudoLineSystem single{inst.system.base_curve, {inst.system.curves[0]}};
    EXPECT_EQ(count_incidences(PointSet::from_unsorted(inst.system.curves[0].points), single), 3u);
    EXPECT_EQ(count_incidences(PointSet{}, inst.system), 0u);
    EXPECT_EQ(count_incidences(inst.points, inst.system), 18u);
}

TEST(CountIncidences, MatchesOracle) {
    Rng rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        const auto a = generate(Family{FamilyKind::random_convex, 2, 1ULL + trial % 6, trial + 1ULL}, 3 + trial % 9);
        const auto part = random_subset(rng, a);
        const auto b = oracle::random_set(rng, 1 + rng.uniform(0, 7), -20, 20);
        const auto inst = build_system(a, part, b);
        // a random subset of the grid plus a few stray points
        std::vector<Point> pts;
        for (const auto& p : inst.points.points())
            if (rng.uniform(0, 3) != 0) pts.push_back(p);
        pts.push_back({0, 0});
        pts.push_back({100, 1});
        const auto p = PointSet::from_unsorted(pts);
        const auto want = oracle::incidences(p, inst.system);
        EXPECT_EQ(count_incidences(p, inst.system), want);
        EXPECT_EQ(count_incidences(p, inst.system, 3), want);
        EXPECT_GE(count_incidences(inst.points, inst.system), part.size() * a.size() * b.size());
    }
}

TEST(VerifyPseudoline, BuiltSystemsHold) {
    Rng rng(62);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = generate(Family{FamilyKind::random_convex, 2, 1ULL + trial % 4, trial + 7ULL}, 2 + trial);
        const auto inst = build_system(a, random_subset(rng, a), oracle::random_set(rng, 1 + trial, -30, 30));
        const auto check = verify_pseudoline(inst.system);
        EXPECT_TRUE(check.holds) << check.witness;
        EXPECT_FALSE(check.sampled);
        const auto m = inst.system.curves.size();
        EXPECT_EQ(check.pairs_examined, m * (m - 1) / 2);
    }
}

TEST(VerifyPseudoline, ViolationsAreFound) {
    auto inst = build_system(kTiny, kTiny, IntegerSet{0, 5});
    // same alpha, different beta: disjoint
    EXPECT_EQ(detail::shared_points(inst.system.curves[0], inst.system.curves[1]), 0u);
    inst.system.curves.push_back(inst.system.curves[2]);
    const auto check = verify_pseudoline(inst.system);
    EXPECT_FALSE(check.holds);
    EXPECT_NE(check.witness.find("share 3 points"), std::string::npos);

    // the graph of an arithmetic progression is a line: translates along it coincide in part
    PseudoLineSystem flat;
    flat.base_curve = {{1, 0}, {2, 1}, {3, 2}, {4, 3}};
    flat.curves = {make_curve(flat, 1, 0), make_curve(flat, 2, 1)};
    EXPECT_FALSE(verify_pseudoline(flat).holds);
    EXPECT_THROW(st_ratio(PointSet{}, flat), std::invalid_argument);
}

TEST(VerifyPseudoline, SampledAboveLimit) {
    const auto a = generate("squares", 70);
    const auto b = generate("poly:3", 60);
    const auto inst = build_system(a, a, b);
    ASSERT_GT(inst.system.curves.size(), kExhaustivePairLimit);
    const auto check = verify_pseudoline(inst.system);
    EXPECT_TRUE(check.sampled);
    EXPECT_TRUE(check.holds);
    EXPECT_EQ(check.pairs_examined, kSampledPairs);
}

TEST(StRatio, Examples) {
    const auto inst = build_system(kTiny, kTiny, IntegerSet{0});
    EXPECT_EQ(st_ratio(PointSet{}, inst.system), 0.0);
    PseudoLineSystem single{inst.system.base_curve, {inst.system.curves[0]}};
    EXPECT_NEAR(st_ratio(PointSet::from_unsorted(inst.system.curves[0].points), single),
                3.0 / (std::cbrt(9.0) + 3.0 + 1.0), 1e-12);
    const auto sq = generate("squares", 32);
    const auto big = build_system(sq, sq, sq);
    const double r = st_ratio(big.points, big.system);
    EXPECT_GT(r, 0);
    EXPECT_TRUE(std::isfinite(r));
}

TEST(RichPoints, MatchOracle) {
    const auto inst = build_system(kTiny, kTiny, IntegerSet{0, 1});
    const auto deg = oracle::point_degrees(inst.points, inst.system);
    for (std::uint64_t tau : {1u, 2u, 3u, 7u}) {
        const auto rich = rich_points(inst.points, inst.system, tau);
        std::size_t want = 0;
        for (auto d : deg) want += d >= tau;
        EXPECT_EQ(rich.size(), want) << tau;
        EXPECT_TRUE(check_richness(rich, inst.system, tau).holds);
    }
    EXPECT_TRUE(rich_points(inst.points, inst.system, 7).empty());
    EXPECT_THROW(rich_points(inst.points, inst.system, 0), std::invalid_argument);
}

TEST(RichPoints, OrdinateCountAgainstRichPoints) {
    // The plain count #{x : sigma(x) >= tau} times |I| can exceed |P_tau|;
    // with threshold 2 tau - 1 it never does.
    const auto tiny = build_system(kTiny, kTiny, IntegerSet{0, 1});
    const auto rich2 = rich_points(tiny.points, tiny.system, 2);
    const auto tiny_report = check_ordinate_richness(tiny, kTiny, IntegerSet{0, 1}, 2, rich2.size());
    EXPECT_TRUE(tiny_report.check.holds);
    EXPECT_GT(tiny_report.plain_count * 3, rich2.size());

    Rng rng(63);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = generate(Family{FamilyKind::random_convex, 2, 1ULL + trial % 3, trial + 20ULL}, 3 + trial % 12);
        const auto part = random_subset(rng, a);
        const auto b = oracle::random_set(rng, 1 + rng.uniform(0, 12), -15, 15);
        const auto inst = build_system(a, part, b);
        for (std::uint64_t tau = 1; tau <= 8; tau *= 2) {
            const auto rich = rich_points(inst.points, inst.system, tau);
            EXPECT_TRUE(check_richness(rich, inst.system, tau).holds);
            const auto r = check_ordinate_richness(inst, part, b, tau, rich.size());
            EXPECT_TRUE(r.check.holds) << a.to_string() << " " << part.to_string() << " " << b.to_string();
        }
    }
}

TEST(Dump, Formats) {
    const auto inst = build_system(kTiny, IntegerSet{2, 4}, IntegerSet{-1});
    std::ostringstream curves, points;
    write_curves(curves, inst.system);
    EXPECT_EQ(curves.str(), "1 -1 2 3\n2 -1 2 3\n3 -1 2 3\n");
    const std::vector<std::string> notes{"grid"};
    write_points(points, rich_points(inst.points, inst.system, 2), notes);
    EXPECT_EQ(points.str().substr(0, 7), "# grid\n");
}
