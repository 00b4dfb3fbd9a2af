#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fagnano/orbit.hpp"
#include "support/oracles.hpp"

using namespace fagnano;

TEST(Orbit, VerifiesAcrossTheGrid) {
    const Tolerances tol;
    for (int n = 2; n <= 10; ++n)
        for (double a : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            const auto s = RegularSimplex::build(n, a);
            const auto o = construct_orbit(s);
            const auto& v = o.residuals;
            ASSERT_EQ(o.size(), static_cast<std::size_t>(n) + 1);
            EXPECT_TRUE(v.all_facet_interior()) << "n=" << n << " a=" << a;
            EXPECT_LT(v.max_incidence(), 1e-10);
            EXPECT_LT(v.max_collinearity(), 1e-9);
            EXPECT_LT(v.max_centroid_location(), 1e-9);
            EXPECT_LT(v.max_centroid_mass(), 1e-9);
            EXPECT_LT(v.max_angle_defect(), 1e-8);
            EXPECT_LT(v.mass_spread, 1e-10);
            EXPECT_TRUE(v.passes(tol));
            for (const auto& c : v.bounces) EXPECT_GT(c.min_other_margin, 1e-6);
        }
}

TEST(Orbit, EachBounceLiesOnItsFacet) {
    const auto s = RegularSimplex::build(5, 1.0);
    const auto o = construct_orbit(s);
    for (long j = 0; j <= 5; ++j) {
        EXPECT_EQ(o.facet(j), static_cast<std::size_t>(j));
        EXPECT_TRUE(classify_point(s, o.point(j)).is_facet_interior(static_cast<std::size_t>(j)));
    }
}

// With equal masses on the ends of the chain, the relation degenerates to the midpoint of
// P_{j-1} and sigma_j P_{j+1}, so P_j bisects them.
TEST(Orbit, BouncePointIsTheMidpointOfTheUnfoldedNeighbors) {
    const auto s = RegularSimplex::build(4, 1.5);
    const auto o = construct_orbit(s);
    for (long j = 0; j <= 4; ++j) {
        const HPoint mirrored = s.reflect_in_facet(j, o.point(j + 1));
        EXPECT_NEAR(dist(o.point(j - 1), o.point(j)), dist(o.point(j), mirrored), 1e-10);
    }
}

TEST(Orbit, ReversedOrbitHasTheSameResiduals) {
    for (int n = 2; n <= 7; ++n) {
        const auto s = RegularSimplex::build(n, 1.0);
        const auto o = construct_orbit(s);
        const auto r = o.reversed();
        const auto v = verify_orbit(s, r);
        EXPECT_TRUE(v.passes(Tolerances{}));
        EXPECT_NEAR(v.max_collinearity(), o.residuals.max_collinearity(), 1e-10);
        EXPECT_NEAR(v.max_angle_defect(), o.residuals.max_angle_defect(), 1e-8);
        EXPECT_EQ(r.point(0), o.point(0));
        EXPECT_EQ(r.point(1), o.point(-1));
    }
}

TEST(Orbit, InvariantUnderIsometries) {
    oracle::Sampler rng(51);
    const auto s = RegularSimplex::build(4, 0.8);
    const auto o = construct_orbit(s);
    for (int i = 0; i < 10; ++i) {
        const Hyperplane h = rng.hyperplane(4);
        const auto sr = s.reflected(h);
        const auto orr = construct_orbit(sr);
        EXPECT_TRUE(orr.residuals.passes(Tolerances{}));
        for (long j = 0; j <= 4; ++j) EXPECT_LT(dist(orr.point(j), reflect(h, o.point(j))), 1e-9);
    }
}

TEST(Orbit, CyclicRelabelingShiftsTheOrbit) {
    const auto s = RegularSimplex::build(3, 1.0);
    const auto o = construct_orbit(s);
    std::vector<std::size_t> order{1, 2, 3, 0};
    const auto p = s.permuted(order);
    const auto op = construct_orbit(p);
    for (long j = 0; j <= 3; ++j) EXPECT_LT(dist(op.point(j), o.point(j + 1)), 1e-10);
}

TEST(Orbit, TriangleOrbitIsTheOrthicTriangle) {
    for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const auto s = RegularSimplex::build(2, a);
        const auto o = construct_orbit(s);
        const auto feet = orthic_points(s);
        for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(dist(feet[i], o.points[i]), 1e-9) << "a=" << a;
    }
    EXPECT_THROW(orthic_points(RegularSimplex::build(3, 1.0)), GeometryError);
}

TEST(MidpointTrajectory, FailsToBeABilliardPathBeyondTheTriangle) {
    for (int n = 2; n <= 8; ++n) {
        const auto s = RegularSimplex::build(n, 1.0);
        const auto d = midpoint_trajectory_defects(s);
        const double expected = oracle::kMidpointDefectA1[n - 2];
        for (double x : d) EXPECT_NEAR(x, expected, 1e-12) << "n=" << n;
        if (n >= 3) {
            EXPECT_GT(midpoint_trajectory_defect(s), 1e-3);
        }
    }
    EXPECT_NEAR(midpoint_trajectory_defect(RegularSimplex::build(3, 1.0)), 0.57911888829954949, 1e-12);
}

TEST(Orbit, InputValidation) {
    const auto s = RegularSimplex::build(3, 1.0);
    EXPECT_THROW(construct_orbit(s, build_sequence(4, 1.0)), GeometryError);
    EXPECT_THROW(construct_orbit(s, build_sequence(3, 1.5)), GeometryError);
    EXPECT_THROW(construct_orbit(RegularSimplex::build(1, 1.0)), GeometryError);
    auto o = construct_orbit(s);
    o.points.pop_back();
    EXPECT_THROW(verify_orbit(s, o), GeometryError);
}

TEST(Orbit, PerturbedOrbitIsRejected) {
    const auto s = RegularSimplex::build(3, 1.0);
    auto o = construct_orbit(s);
    o.points[1] = geodesic_point(TangentVec::make(o.points[1], s.facet(2).midpoint.coords()), 1e-4);
    const auto v = verify_orbit(s, o);
    EXPECT_FALSE(v.passes(Tolerances{}));
}

// Cyclic relabeling is a symmetry of the simplex carrying P_0 to P_j and W_0 to W_j.
TEST(Orbit, FacetMidpointOffsetsAreEqual) {
    const auto s = RegularSimplex::build(4, 1.0);
    const auto o = construct_orbit(s);
    const auto off = facet_midpoint_offsets(s, o);
    ASSERT_EQ(off.size(), 5u);
    for (std::size_t j = 0; j < off.size(); ++j) {
        EXPECT_TRUE(std::isfinite(off[j]));
        EXPECT_NEAR(off[j], off[0], 1e-10);
    }
}
