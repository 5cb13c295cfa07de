#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace sraembed;

namespace {

FiniteMetricSpace line(std::size_t n) { return generate(GenSpec{Family::Line, n, {}, {}, 0}); }

// Random partial map that is coordinate-wise L-Lipschitz: a mix of distance
// functions to random points, scaled by L.
PointMap random_lipschitz_map(const FiniteMetricSpace& s, const Subset& dom, std::size_t dim, double L,
                              std::uint64_t seed) {
    PointMap m(dom, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        const std::size_t anchor = mix64(seed, c) % s.size();
        const double offset = unit_double(seed, 100 + c) * 3.0;
        const double sign = unit_double(seed, 200 + c) < 0.5 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < dom.size(); ++i)
            m.row(i)[c] = offset + sign * L * s.d(dom[i].value, anchor);
    }
    return m;
}

} // namespace

TEST(McShane, WholeDomainIsIdentity) {
    const auto s = generate(GenSpec{Family::EuclideanCloud, 12, {}, 2, 1});
    const auto m = random_lipschitz_map(s, Subset::all(12), 3, 1.5, 4);
    const auto F = mcshane_extend(s, m, 1.5);
    for (std::size_t i = 0; i < m.values().size(); ++i)
        EXPECT_TRUE(oracle::bitwise_equal(F.values()[i], m.values()[i]));
}

TEST(McShane, HandValue) {
    const auto s = line(3);
    PointMap m(Subset::from_indices(std::vector<std::size_t>{0, 2}), 1, {0.0, 4.0});
    const auto F = mcshane_extend(s, m, 2.0);
    EXPECT_EQ(F.value(PointId{1})[0], 2.0);
    EXPECT_EQ(F.value(PointId{0})[0], 0.0);
    EXPECT_EQ(F.value(PointId{2})[0], 4.0);
}

TEST(McShane, RejectsNonLipschitzCoordinate) {
    const auto s = line(3);
    PointMap m(Subset::from_indices(std::vector<std::size_t>{0, 2}), 2, {0.0, 0.0, 1.0, 5.0});
    try {
        mcshane_extend(s, m, 2.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CoordinateNotLipschitz);
        EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 2, 1}));
    }
    EXPECT_THROW(mcshane_extend(s, m, 0.0), Error);
}

TEST(McShane, ContractOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 10 + seed % 20;
        const auto s = generate(GenSpec{Family::EuclideanCloud, n, {}, 1 + seed % 3, seed});
        std::vector<std::size_t> dom;
        for (std::size_t i = 0; i < n; ++i)
            if (unit_double(seed, 900 + i) < 0.4 || dom.empty()) dom.push_back(i);
        const double L = 0.5 + unit_double(seed, 7) * 3;
        const std::size_t dim = 1 + seed % 4;
        const auto partial = random_lipschitz_map(s, Subset::from_indices(dom), dim, L, seed);
        const auto F = mcshane_extend(s, partial, L);
        ASSERT_EQ(F.size(), n);
        for (std::size_t i = 0; i < dom.size(); ++i)
            for (std::size_t c = 0; c < dim; ++c)
                EXPECT_TRUE(oracle::bitwise_equal(F.value(PointId{dom[i]})[c], partial.row(i)[c]));
        // Independent formula evaluation off the domain.
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t c = 0; c < dim; ++c) {
                double want = partial.has(PointId{x}) ? partial.value(PointId{x})[c] : INFINITY;
                if (!partial.has(PointId{x}))
                    for (std::size_t i = 0; i < dom.size(); ++i)
                        want = std::min(want, std::fma(L, s.d(x, dom[i]), partial.row(i)[c]));
                EXPECT_EQ(F.value(PointId{x})[c], want);
            }
        }
        const auto e = oracle::ratios(s, F);
        EXPECT_LE(e.lip, std::sqrt(double(dim)) * L * (1 + 1e-12));
    }
}

TEST(FarPair, WholeAnchorAllPairsQualify) {
    const auto s = generate(GenSpec{Family::EuclideanCloud, 15, {}, 2, 9});
    // Identity-like map: coordinates themselves, s = 1, D = 1.
    const auto coords = cloud_coordinates(15, 2, 9);
    PointMap id(Subset::all(15), 2, coords);
    const auto r = far_pair_colipschitz_report(s, id, Subset::all(15), 1.0, 1.0, std::sqrt(2.0), 5.0);
    EXPECT_EQ(r.qualifying_pairs, 15u * 14u / 2u);
    EXPECT_GE(r.min_ratio, 1.0 - 1e-12);
    EXPECT_TRUE(r.check.pass);
}

TEST(FarPair, RandomPlanarInstanceIdentityLikeMap) {
    const auto inst = oracle::planar_instance(20, 5, 31);
    const auto& s = inst.space;
    // phi on Y: exact planar coordinates (s = 1, D = 1); extend with L = D s.
    std::vector<double> vals;
    for (PointId y : inst.anchor) {
        vals.push_back(inst.coords[2 * y.value]);
        vals.push_back(inst.coords[2 * y.value + 1]);
    }
    PointMap phi(inst.anchor, 2, vals);
    const auto F = mcshane_extend(s, phi, 1.0);
    const double nu = std::sqrt(2.0), K = 5.0;
    const auto r = far_pair_colipschitz_report(s, F, inst.anchor, 1.0, 1.0, nu, K);
    EXPECT_TRUE(r.check.pass) << r.min_ratio << " vs " << r.check.bound;
    EXPECT_NEAR(r.check.bound, 1.0 - 2.0 / (K * nu) - 2.0 / K, 1e-15);
    // With K = 5 D nu the bound reduces to a ratio of at least 1/5.
    const auto r2 = far_pair_colipschitz_report(s, F, inst.anchor, 1.0, 1.0, nu, 5.0 * nu);
    if (r2.qualifying_pairs > 0) EXPECT_GE(r2.min_ratio, 0.2 * (1 - 1e-12));
}
