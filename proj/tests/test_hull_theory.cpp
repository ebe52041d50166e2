#include <ballbody/hull_theory.hpp>

#include <gtest/gtest.h>

using namespace ballbody;
using planar_detail::angle_of;
using planar_detail::to2;

namespace {

PointSet random_set(SeededRng& rng, int n, int m, double spread)
{
    PointSet A;
    for (int i = 0; i < m; ++i) A.push_back(rng.in_ball(n, spread));
    return A;
}

P2 on_arc(const ArcPolygon::MergedArc& a, double f)
{
    const double t = angle_of(a.start - a.center) + f * a.angle;
    return a.center + a.radius * P2(std::cos(t), std::sin(t));
}

// Oracle: x is non-extremal iff the unit circle tangent to the boundary at x stays in P nearby.
bool tangent_circle_stays_inside(const ArcPolygon& P, const P2& x, const P2& normal)
{
    const P2 c = x - normal;
    const double t = angle_of(x - c);
    for (double d : {-1e-3, 1e-3})
        if (!P.contains(c + P2(std::cos(t + d), std::sin(t + d)), 1e-12)) return false;
    return true;
}

}  // namespace

TEST(Extremal, Examples)
{
    EXPECT_TRUE(extremal_points_2d(ArcPolygon::disk(P2(0, 0), 1.0)).points.empty());
    EXPECT_FALSE(extremal_points_2d(ArcPolygon::disk(P2(0, 0), 1.0)).whole_boundary);
    const auto lens = intersect_unit_disks({P2(-0.5, 0), P2(0.5, 0)});
    EXPECT_EQ(extremal_points_2d(*lens).points.size(), 2u);
    EXPECT_TRUE(extremal_points_2d(*lens).arcs.empty());
    EXPECT_EQ(extremal_points_2d(reuleaux_triangle()).points.size(), 3u);
    EXPECT_TRUE(extremal_points_2d(ArcPolygon::disk(P2(0, 0), 0.5)).whole_boundary);
    const auto E = extremal_points_2d(*intersect_disks({P2(0, 0), P2(0.7, 0), P2(-0.7, 0)}, {0.5, 1.0, 1.0}));
    EXPECT_EQ(E.points.size(), 4u);
    EXPECT_EQ(E.arcs.size(), 2u);
}

TEST(Extremal, HullExtremePointsAreInputPoints)
{
    SeededRng rng(41);
    for (int t = 0; t < 200; ++t) {
        const auto A = random_set(rng, 2, 2 + t % 9, 0.8);
        if (min_enclosing_ball(A).radius >= 1.0) continue;
        const auto H = spindle_hull(to_points2(A));
        const auto E = extremal_points_2d(H);
        EXPECT_TRUE(E.arcs.empty());
        for (const auto& v : E.points) {
            bool found = false;
            for (const auto& a : A) found = found || (a[0] == v.x() && a[1] == v.y());
            EXPECT_TRUE(found);
        }
    }
}

TEST(Extremal, CertificatesAgreeWithTangentCircleOracle)
{
    SeededRng rng(42);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        std::vector<P2> centers;
        std::vector<double> radii;
        for (int i = 0; i < 4; ++i) {
            const Vector c = rng.in_ball(2, 0.4);
            centers.emplace_back(c[0], c[1]);
            radii.push_back(i % 2 ? 1.0 : rng.uniform(0.6, 1.0));
        }
        const auto P = intersect_disks(centers, radii);
        if (!P || P->is_disk()) continue;
        for (const auto& a : P->merged_arcs()) {
            for (double f : {0.13, 0.5, 0.91}) {
                const P2 x = on_arc(a, f);
                const auto cert = certify_extremality(*P, x);
                const bool oracle_non_extremal = tangent_circle_stays_inside(*P, x, (x - a.center).normalized());
                EXPECT_EQ(cert.status == Extremality::non_extremal, oracle_non_extremal);
                if (cert.status == Extremality::non_extremal) {
                    EXPECT_NEAR((cert.arc_center - x).norm(), 1.0, 1e-12);
                    for (int k = 0; k <= 20; ++k) {
                        const double a0 = angle_of(cert.arc_start - cert.arc_center);
                        const double sweep = planar_detail::wrap(angle_of(cert.arc_end - cert.arc_center) - a0);
                        const double s = a0 + sweep * k / 20.0;
                        EXPECT_TRUE(P->contains(cert.arc_center + P2(std::cos(s), std::sin(s)), 1e-9));
                    }
                }
                ++checked;
            }
            // Corners are extremal; every normal in the cone has a tangent circle that leaves P.
            const auto cert = certify_extremality(*P, a.start);
            EXPECT_EQ(cert.status, Extremality::extremal);
            EXPECT_FALSE(tangent_circle_stays_inside(*P, a.start, cert.normal));
        }
    }
    EXPECT_GT(checked, 300);
}

TEST(Extremal, InteriorPointsAreNotExtremal)
{
    const auto R = reuleaux_triangle();
    const auto c = certify_extremality(R, P2(0.05, 0.02));
    EXPECT_EQ(c.status, Extremality::non_extremal);
    EXPECT_TRUE(R.contains(c.arc_start));
    EXPECT_TRUE(R.contains(c.arc_end));
    EXPECT_THROW(certify_extremality(R, P2(2, 0)), std::invalid_argument);
}

TEST(Caratheodory, PlanarSizesAndRecheck)
{
    SeededRng rng(43);
    int interior = 0, boundary = 0;
    for (int t = 0; t < 200; ++t) {
        const auto A = random_set(rng, 2, 3 + t % 8, 0.8);
        if (min_enclosing_ball(A).radius >= 1.0) continue;
        const auto H = spindle_hull(to_points2(A));
        // Interior probe and a boundary probe.
        const Vector x = min_enclosing_ball(A).center + rng.in_ball(2, 0.5);
        const auto arcs = H.merged_arcs();
        const P2 b = on_arc(arcs[t % arcs.size()], 0.37);
        for (const Vector& q : {x, planar_detail::from2(b)}) {
            const auto r = caratheodory_decompose(q, A);
            if (!r.inside) {
                EXPECT_LT(H.margin(to2(q)), 0.0);
                for (const auto& a : A) EXPECT_LE((a - r.separation_center).norm(), 1.0 + 1e-9);
                EXPECT_GT((q - r.separation_center).norm(), 1.0);
                continue;
            }
            EXPECT_LE(r.subset.size(), r.on_boundary ? 2u : 3u);
            EXPECT_GE(r.recheck_margin, -1e-9);
            (r.on_boundary ? boundary : interior)++;
        }
    }
    EXPECT_GT(interior, 50);
    EXPECT_GT(boundary, 100);
}

TEST(Caratheodory, ThreeDimensional)
{
    SeededRng rng(44);
    int inside = 0;
    for (int t = 0; t < 40; ++t) {
        const auto A = random_set(rng, 3, 6, 0.7);
        if (min_enclosing_ball(A).radius >= 1.0) continue;
        const Vector x = min_enclosing_ball(A).center + rng.in_ball(3, 0.4);
        const auto r = caratheodory_decompose(x, A);
        if (!r.inside) {
            EXPECT_LT(CHull(A).margin(x), 0.0);
            continue;
        }
        EXPECT_LE(r.subset.size(), 4u);
        EXPECT_GE(r.recheck_margin, -1e-9);
        ++inside;
    }
    EXPECT_GT(inside, 10);
    // A point of A decomposes as itself.
    const auto A = random_set(rng, 3, 5, 0.6);
    EXPECT_EQ(caratheodory_decompose(A[2], A).subset.size(), 1u);
}

TEST(IterativeHull, SquareCornersPlanar)
{
    const PointSet A{vec({-0.4, -0.4}), vec({0.4, -0.4}), vec({0.4, 0.4}), vec({-0.4, 0.4})};
    const auto rep = iterative_c_hull(A, 2);
    ASSERT_EQ(rep.hausdorff.size(), 2u);
    EXPECT_FALSE(rep.threshold_met(1));
    EXPECT_TRUE(rep.threshold_met(2));
    // One round leaves gaps between the edge lenses and the diagonal lenses.
    EXPECT_GT(rep.hausdorff[0], 0.01);
    EXPECT_LE(rep.hausdorff[1], 1e-3);
    for (double m : rep.max_outside) EXPECT_LE(m, 1e-9);
}

TEST(IterativeHull, RandomPointsInThreeDimensions)
{
    SeededRng rng(45);
    const auto A = random_set(rng, 3, 5, 0.6);
    IterativeHullOptions opt;
    opt.boundary_probes = 128;
    opt.interior_probes = 64;
    const auto rep = iterative_c_hull(A, 2, opt);
    EXPECT_TRUE(rep.threshold_met(2));
    EXPECT_LE(rep.hausdorff[1], 1e-3);
    for (double m : rep.max_outside) EXPECT_LE(m, 1e-9);
}
