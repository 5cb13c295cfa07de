#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace sraembed;

namespace {

FiniteMetricSpace line(std::size_t n) { return generate(GenSpec{Family::Line, n, {}, {}, 0}); }

} // namespace

TEST(DistortionAudit, ScalingHasDistortionOne) {
    const auto s = line(6);
    PointMap m(Subset::all(6), 1);
    for (std::size_t i = 0; i < 6; ++i) m.row(i)[0] = 2.0 * double(i);
    const auto r = distortion_audit(s, m);
    EXPECT_EQ(r.lipschitz, 2.0);
    EXPECT_EQ(r.colipschitz, 2.0);
    EXPECT_EQ(r.distortion, 1.0);
}

TEST(DistortionAudit, HandComputedDistortionTwo) {
    const auto s = line(3);
    PointMap m(Subset::all(3), 1, {0.0, 1.0, 3.0});
    const auto r = distortion_audit(s, m);
    EXPECT_EQ(r.lipschitz, 2.0);
    EXPECT_EQ(r.colipschitz, 1.0);
    EXPECT_EQ(r.distortion, 2.0);
    EXPECT_EQ(r.witness_max, std::make_pair(PointId{1}, PointId{2}));
    EXPECT_EQ(r.witness_min, std::make_pair(PointId{0}, PointId{1}));
}

TEST(DistortionAudit, IdentityMap) {
    const auto coords = cloud_coordinates(20, 3, 5);
    const auto s = validate_metric(euclidean_matrix(coords, 3));
    const auto r = distortion_audit(s, PointMap(Subset::all(20), 3, coords));
    EXPECT_NEAR(r.lipschitz, 1.0, 1e-15);
    EXPECT_NEAR(r.colipschitz, 1.0, 1e-15);
}

TEST(DistortionAudit, DegenerateDomain) {
    const auto s = line(3);
    try {
        distortion_audit(s, PointMap(Subset::from_indices(std::vector<std::size_t>{1}), 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateDomain);
    }
}

TEST(DistortionAudit, MatchesDoubleLoopBitwise) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = generate(GenSpec{Family::EuclideanCloud, 30 + seed, {}, 2, seed});
        PointMap m(Subset::all(s.size()), 4);
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t c = 0; c < 4; ++c) m.row(i)[c] = unit_double(seed + 77, i * 4 + c);
        const auto r = distortion_audit(s, m);
        const auto e = oracle::ratios(s, m);
        EXPECT_TRUE(oracle::bitwise_equal(r.lipschitz, e.lip));
        EXPECT_TRUE(oracle::bitwise_equal(r.colipschitz, e.colip));
        EXPECT_GE(r.distortion, 1.0);
        const double wmax = euclidean_distance(m.value(r.witness_max.first), m.value(r.witness_max.second)) /
                            s.d(r.witness_max.first, r.witness_max.second);
        const double wmin = euclidean_distance(m.value(r.witness_min.first), m.value(r.witness_min.second)) /
                            s.d(r.witness_min.first, r.witness_min.second);
        EXPECT_EQ(wmax, r.lipschitz);
        EXPECT_EQ(wmin, r.colipschitz);
    }
}

TEST(DistortionAudit, IndependentOfThreadCount) {
    const auto s = generate(GenSpec{Family::EuclideanCloud, 120, {}, 2, 3});
    PointMap m(Subset::all(120), 2);
    for (std::size_t i = 0; i < 120; ++i)
        for (std::size_t c = 0; c < 2; ++c) m.row(i)[c] = unit_double(11, 2 * i + c);
    setenv("SRA_EMBED_THREADS", "1", 1);
    const auto a = distortion_audit(s, m);
    setenv("SRA_EMBED_THREADS", "7", 1);
    const auto b = distortion_audit(s, m);
    unsetenv("SRA_EMBED_THREADS");
    EXPECT_TRUE(oracle::bitwise_equal(a.lipschitz, b.lipschitz));
    EXPECT_TRUE(oracle::bitwise_equal(a.colipschitz, b.colipschitz));
    EXPECT_EQ(a.witness_max, b.witness_max);
    EXPECT_EQ(a.witness_min, b.witness_min);
}

TEST(CheckInequality, Directions) {
    EXPECT_TRUE(check_inequality("eq", 1.0, 1.0, Direction::AtMost).pass);
    EXPECT_TRUE(check_inequality("eq", 1.0, 1.0, Direction::AtLeast).pass);
    EXPECT_TRUE(check_inequality("slack", 1.0, 1.0 + 5e-10, Direction::AtMost).pass);
    EXPECT_FALSE(check_inequality("over", 1.0, 1.0 + 2e-9, Direction::AtMost).pass);
    EXPECT_FALSE(check_inequality("under", 1.0, 1.0 - 2e-9, Direction::AtLeast).pass);
    EXPECT_TRUE(check_inequality("inf", 0.5, INFINITY, Direction::AtLeast).pass);
    const auto rec = check_inequality("name", 3.0, 2.0, Direction::AtMost);
    EXPECT_EQ(rec.name, "name");
    EXPECT_EQ(rec.bound, 3.0);
    EXPECT_EQ(rec.measured, 2.0);
}
