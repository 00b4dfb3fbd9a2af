#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fagnano/mass.hpp"
#include "fagnano/simplex.hpp"
#include "support/oracles.hpp"

using namespace fagnano;

namespace {

void expect_same(const PointMass& a, const PointMass& b, double tol) {
    EXPECT_LT(dist(a.location, b.location), tol);
    EXPECT_LT(std::abs(a.weight - b.weight) / b.weight, tol);
}

} // namespace

TEST(Combine, MatchesTheIntrinsicBalanceOracle) {
    oracle::Sampler rng(21);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 6);
        const PointMass p = rng.point_mass(n), q = rng.point_mass(n);
        expect_same(combine(p, q), oracle::combine_intrinsic(p, q), 1e-10);
    }
}

TEST(Combine, BalanceAndMassRelations) {
    oracle::Sampler rng(22);
    for (int i = 0; i < 300; ++i) {
        const PointMass p = rng.point_mass(3), q = rng.point_mass(3);
        const PointMass z = combine(p, q);
        const double dx = dist(p.location, z.location), dy = dist(q.location, z.location);
        EXPECT_NEAR(segment_defect(z.location, p.location, q.location), 0.0, 1e-10);
        EXPECT_NEAR(p.weight * std::sinh(dx), q.weight * std::sinh(dy), 1e-9 * z.weight);
        EXPECT_NEAR(z.weight, p.weight * std::cosh(dx) + q.weight * std::cosh(dy), 1e-10 * z.weight);
        EXPECT_GE(z.weight, p.weight + q.weight - 1e-12);
    }
}

TEST(Combine, IsCommutative) {
    oracle::Sampler rng(23);
    for (int i = 0; i < 500; ++i) {
        const PointMass p = rng.point_mass(4), q = rng.point_mass(4);
        expect_same(combine(p, q), combine(q, p), 1e-12);
    }
}

TEST(Combine, IsAssociative) {
    oracle::Sampler rng(24);
    for (int i = 0; i < 500; ++i) {
        const PointMass p = rng.point_mass(3), q = rng.point_mass(3), r = rng.point_mass(3);
        expect_same(combine(combine(p, q), r), combine(p, combine(q, r)), 1e-10);
        // Same check through the independent oracle.
        expect_same(oracle::combine_intrinsic(oracle::combine_intrinsic(p, q), r),
                    oracle::combine_intrinsic(p, oracle::combine_intrinsic(q, r)), 1e-9);
    }
}

TEST(Combine, ScalesHomogeneously) {
    oracle::Sampler rng(25);
    for (int i = 0; i < 300; ++i) {
        const PointMass p = rng.point_mass(3), q = rng.point_mass(3);
        const double k = rng.uniform(0.01, 100.0);
        const PointMass z = combine(p, q);
        const PointMass zk = combine({p.location, k * p.weight}, {q.location, k * q.weight});
        EXPECT_LT(dist(z.location, zk.location), 1e-10);
        EXPECT_NEAR(zk.weight, k * z.weight, 1e-12 * zk.weight);
    }
}

TEST(Combine, CommutesWithIsometries) {
    oracle::Sampler rng(26);
    for (int i = 0; i < 300; ++i) {
        const Hyperplane h = rng.hyperplane(3);
        const PointMass p = rng.point_mass(3), q = rng.point_mass(3);
        const PointMass z = combine(p, q);
        const PointMass zr = combine({reflect(h, p.location), p.weight}, {reflect(h, q.location), q.weight});
        expect_same(zr, {reflect(h, z.location), z.weight}, 1e-9);
    }
}

TEST(Combine, ZeroWeightIsNeutralAndCoincidentPointsAdd) {
    oracle::Sampler rng(27);
    const PointMass p = rng.point_mass(3);
    const HPoint q = rng.point(3);
    const PointMass a = combine(p, {q, 0.0});
    EXPECT_EQ(a.location, p.location);
    EXPECT_EQ(a.weight, p.weight);
    const PointMass b = combine({q, 0.0}, p);
    EXPECT_EQ(b.location, p.location);
    const PointMass c = combine({q, 2.0}, {q, 3.0});
    EXPECT_NEAR(c.weight, 5.0, 1e-14);
    EXPECT_LT(dist(c.location, q), 1e-12);
}

TEST(Combine, RejectsInvalidWeights) {
    const HPoint o = HPoint::basepoint(3);
    EXPECT_THROW(combine({o, -1.0}, {o, 1.0}), GeometryError);
    EXPECT_THROW(combine({o, std::nan("")}, {o, 1.0}), GeometryError);
    EXPECT_THROW(combine({o, 0.0}, {o, 0.0}), GeometryError);
    EXPECT_THROW(combine({o, 1.0}, {HPoint::basepoint(4), 1.0}), GeometryError);
}

TEST(CentroidFold, OrderDoesNotMatter) {
    oracle::Sampler rng(28);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PointMass> items;
        for (int i = 0; i < 7; ++i) items.push_back(rng.point_mass(4));
        const PointMass ref = centroid_fold(items);
        std::shuffle(items.begin(), items.end(), rng.engine());
        expect_same(centroid_fold(items), ref, 1e-10);
    }
}

TEST(CentroidFold, GroupingDoesNotMatter) {
    oracle::Sampler rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PointMass> items;
        for (int i = 0; i < 6; ++i) items.push_back(rng.point_mass(3));
        const std::span<const PointMass> all(items);
        const PointMass whole = centroid_fold(all);
        const PointMass split = combine(centroid_fold(all.first(2)), centroid_fold(all.subspan(2)));
        expect_same(split, whole, 1e-10);
    }
}

TEST(CentroidFold, SkipsZeroWeightsAndValidates) {
    oracle::Sampler rng(30);
    const PointMass p = rng.point_mass(3);
    const std::vector<PointMass> items{{rng.point(3), 0.0}, p, {rng.point(3), 0.0}};
    const PointMass z = centroid_fold(items);
    EXPECT_EQ(z.location, p.location);
    EXPECT_EQ(z.weight, p.weight);
    EXPECT_THROW(centroid_fold(std::vector<PointMass>{}), GeometryError);
    EXPECT_THROW(centroid_fold(std::vector<PointMass>{{rng.point(3), 0.0}}), GeometryError);
    EXPECT_THROW(centroid_fold(std::vector<PointMass>{p, {rng.point(3), -0.5}}), GeometryError);
}

TEST(CentroidFold, ScalingAllMassesScalesTheResult) {
    oracle::Sampler rng(31);
    std::vector<PointMass> items;
    for (int i = 0; i < 5; ++i) items.push_back(rng.point_mass(3));
    const PointMass z = centroid_fold(items);
    const PointMass z3 = centroid_fold(scale_masses(items, 3.0));
    EXPECT_LT(dist(z.location, z3.location), 1e-12);
    EXPECT_NEAR(z3.weight, 3.0 * z.weight, 1e-12 * z3.weight);
    EXPECT_THROW(scale_masses(items, 0.0), GeometryError);
}
