#include <ballbody/body.hpp>
#include <ballbody/planar.hpp>

#include <gtest/gtest.h>

using namespace ballbody;

namespace {

std::vector<P2> random_points(SeededRng& rng, int m, double spread)
{
    std::vector<P2> A;
    for (int i = 0; i < m; ++i) {
        const Vector v = rng.in_ball(2, spread);
        A.emplace_back(v[0], v[1]);
    }
    return A;
}

double width(const ArcPolygon& P, const P2& u) { return P.support_value(u) + P.support_value(-u); }

}  // namespace

TEST(IntersectDisks, TwoDiskLens)
{
    const auto L = intersect_unit_disks({P2(-0.5, 0), P2(0.5, 0)});
    ASSERT_TRUE(L);
    EXPECT_EQ(L->corners().size(), 2u);
    EXPECT_NEAR(L->area(), 2 * kPi / 3 - std::sqrt(3.0) / 2, 1e-12);
    EXPECT_NEAR(L->perimeter(), 4 * kPi / 3, 1e-12);
    EXPECT_TRUE(L->contains(P2(0, 0)));
    EXPECT_TRUE(L->contains(P2(0, std::sqrt(0.75))));
    EXPECT_FALSE(L->contains(P2(0.51, 0)));
}

TEST(IntersectDisks, DegenerateCases)
{
    const auto D = intersect_unit_disks({P2(0.2, 0.1)});
    ASSERT_TRUE(D);
    EXPECT_TRUE(D->is_disk());
    EXPECT_NEAR(D->area(), kPi, 1e-15);
    EXPECT_FALSE(intersect_unit_disks({P2(-1.2, 0), P2(1.2, 0)}));
    const auto T = intersect_unit_disks({P2(-1, 0), P2(1, 0)});
    ASSERT_TRUE(T);
    EXPECT_TRUE(T->is_point());
    EXPECT_LE(T->disk_center().norm(), 1e-9);
    // A small disk inside a large one.
    const auto S = intersect_disks({P2(0, 0), P2(0.1, 0)}, {1.0, 0.3});
    ASSERT_TRUE(S);
    EXPECT_TRUE(S->is_disk());
    EXPECT_NEAR(S->disk_radius(), 0.3, 1e-15);
    EXPECT_THROW(intersect_disks({P2(0, 0)}, {1.5}), std::invalid_argument);
}

TEST(IntersectDisks, SubUnitCircleWithTwoBoundaryPieces)
{
    // The radius-1/2 circle meets the boundary in a top and a bottom arc.
    const auto P = intersect_disks({P2(0, 0), P2(0.7, 0), P2(-0.7, 0)}, {0.5, 1.0, 1.0});
    ASSERT_TRUE(P);
    EXPECT_EQ(P->corners().size(), 4u);
    SeededRng rng(40);
    int hits = 0;
    const int N = 400000;
    for (int i = 0; i < N; ++i) {
        const Vector x = rng.in_ball(2, 0.5);
        hits += P->contains(P2(x[0], x[1]), 0.0);
    }
    const double mc = kPi * 0.25 * hits / N;
    EXPECT_NEAR(P->area(), mc, 4 * kPi * 0.25 * std::sqrt(0.25 / N));
}

TEST(IntersectDisks, MembershipMatchesBallIntersection)
{
    SeededRng rng(41);
    for (int t = 0; t < 200; ++t) {
        std::vector<P2> c;
        std::vector<double> r;
        std::vector<ClosedBall> balls;
        for (int i = 0; i < 2 + t % 6; ++i) {
            const Vector v = rng.in_ball(2, 0.6);
            c.emplace_back(v[0], v[1]);
            r.push_back(rng.uniform(0.5, 1.0));
            balls.emplace_back(v, r.back());
        }
        const auto P = intersect_disks(c, r);
        const BallIntersectionBody B(balls);
        ASSERT_EQ(P.has_value(), !B.empty());
        if (!P) continue;
        for (int k = 0; k < 200; ++k) {
            const Vector x = rng.in_ball(2, 1.2);
            if (std::abs(B.margin(x)) < 1e-9) continue;
            EXPECT_EQ(P->contains(P2(x[0], x[1]), 0.0), B.contains(x, 0.0));
        }
        for (int k = 0; k < 32; ++k) {
            const Vector u = rng.unit_vector(2);
            EXPECT_NEAR(P->support_value(P2(u[0], u[1])), B.support_value(u), 1e-9);
        }
    }
}

TEST(SpindleHull, ReuleauxTriangle)
{
    const auto R = reuleaux_triangle();
    EXPECT_EQ(R.corners().size(), 3u);
    EXPECT_NEAR(R.area(), (kPi - std::sqrt(3.0)) / 2, 1e-12);
    EXPECT_NEAR(R.perimeter(), kPi, 1e-12);
    for (int k = 0; k < 360; ++k) {
        const P2 u(std::cos(k * kPi / 180), std::sin(k * kPi / 180));
        EXPECT_NEAR(width(R, u), 1.0, 1e-12);
    }
    EXPECT_LE(hausdorff_planar(R, c_dual_planar(R)), 1e-12);
    EXPECT_NEAR(mahler_2d(R), 2 * std::sqrt((kPi - std::sqrt(3.0)) / 2), 1e-12);
}

TEST(SpindleHull, DegenerateInputs)
{
    const auto p = spindle_hull({P2(0.3, 0.4)});
    EXPECT_TRUE(p.is_point());
    EXPECT_EQ(p.area(), 0.0);
    const auto disk = spindle_hull({P2(-1, 0), P2(1, 0)});
    EXPECT_TRUE(disk.is_disk());
    EXPECT_NEAR(disk.disk_radius(), 1.0, 1e-9);
    EXPECT_THROW(spindle_hull({P2(-1.1, 0), P2(1.1, 0)}), GeometryError);
    const auto L = spindle_hull({P2(-0.5, 0), P2(0.5, 0)});
    EXPECT_NEAR(L.area(), planar_lens_area(planar_lens_angle(1.0)), 1e-12);
    EXPECT_NEAR(mahler_2d(ArcPolygon::disk(P2(0, 0), 1.0)), std::sqrt(kPi), 1e-15);
}

TEST(SpindleHull, DualityProperties)
{
    SeededRng rng(42);
    for (int t = 0; t < 300; ++t) {
        const auto A = random_points(rng, 2 + t % 9, 0.9);
        const auto H = spindle_hull(A);
        for (const auto& a : A) EXPECT_TRUE(H.contains(a, 1e-9));
        EXPECT_TRUE(H.all_unit());
        const auto D = c_dual_planar(H);
        EXPECT_LE(hausdorff_planar(c_dual_planar(D), H, 512), 1e-9);
        for (int k = 0; k < 64; ++k) {
            const P2 u(std::cos(k * kPi / 32), std::sin(k * kPi / 32));
            EXPECT_NEAR(D.support_value(u), 1.0 - H.support_value(-u), 1e-9);
        }
        // Agrees with the generic c-hull membership.
        PointSet As;
        for (const auto& a : A) As.push_back(vec({a.x(), a.y()}));
        const CHull C(As);
        for (int k = 0; k < 50; ++k) {
            const Vector x = rng.in_ball(2, 1.2);
            if (std::abs(C.margin(x)) < 1e-8) continue;
            EXPECT_EQ(H.contains(P2(x[0], x[1]), 0.0), C.contains(x, 0.0));
        }
    }
}

TEST(SpindleHull, RejectsNonConvexArcs)
{
    const double h = std::sqrt(0.75);
    EXPECT_NO_THROW(ArcPolygon({P2(-0.5, 0), P2(0.5, 0)}, {P2(0, h), P2(0, -h)}, {1.0, 1.0}));
    // Swapping the centers gives two major arcs that cross at the vertices.
    EXPECT_THROW(ArcPolygon({P2(-0.5, 0), P2(0.5, 0)}, {P2(0, -h), P2(0, h)}, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(ArcPolygon({P2(-0.5, 0), P2(0.5, 0)}, {P2(0, 0.5), P2(0, -h)}, {1.0, 1.0}), std::invalid_argument);
}

TEST(QuadrantBody, ConstantWidth)
{
    const auto N = quadrant_constant_width_body();
    for (int k = 0; k < 720; ++k) {
        const P2 u(std::cos(k * kPi / 360), std::sin(k * kPi / 360));
        EXPECT_NEAR(width(N, u), 1.0, 1e-12);
    }
    EXPECT_NEAR(N.perimeter(), kPi, 1e-12);
    EXPECT_TRUE(N.contains(P2(0, 0)));
}

TEST(Steiner2d, DiskIsFixed)
{
    const auto S = steiner_2d(ArcPolygon::disk(P2(0.3, -0.2), 1.0), P2(0, 1), 128);
    EXPECT_NEAR(S.area, kPi, 1e-10);
    for (const auto& f : S.fibers) {
        EXPECT_NEAR(f.curvature, 1.0, 1e-9);
        EXPECT_NEAR(f.half, std::sqrt(1 - (f.x - 0.3) * (f.x - 0.3)), 1e-12);
    }
    EXPECT_THROW(steiner_2d(ArcPolygon::disk(P2(0, 0), 1.0), P2(0, 1), 32), std::invalid_argument);
}

TEST(Steiner2d, PreservesAreaAndCurvatureBound)
{
    SeededRng rng(43);
    for (int t = 0; t < 100; ++t) {
        const auto H = spindle_hull(random_points(rng, 3 + t % 6, 0.9));
        if (H.area() < 1e-6) continue;
        const Vector u = rng.unit_vector(2);
        const auto S = steiner_2d(H, P2(u[0], u[1]), 256);
        EXPECT_NEAR(S.area, H.area(), 1e-9 * std::max(1.0, H.area()));
        EXPECT_NEAR(S.riemann_area, H.area(), 2e-2 * H.area());
        EXPECT_GE(S.min_curvature, 1.0 - 1e-6);
    }
}

TEST(Steiner2d, SecondDifferencesAgreeWithAnalyticCurvature)
{
    const auto S = steiner_2d(spindle_hull({P2(0, 0), P2(0.8, 0.1), P2(0.3, 0.7)}), P2(0, 1), 4096);
    const double h = S.fibers[1].x - S.fibers[0].x;
    for (std::size_t k = 200; k + 200 < S.fibers.size(); k += 97) {
        const auto &a = S.fibers[k - 1], &b = S.fibers[k], &c = S.fibers[k + 1];
        const double d2 = (a.half - 2 * b.half + c.half) / (h * h);
        if (std::abs(d2 - b.d2h) > 1e-2 * std::abs(b.d2h)) continue;  // a vertex sits inside this stencil
        EXPECT_NEAR(d2, b.d2h, 1e-3 * std::abs(b.d2h));
    }
}

TEST(ShadowSystem, TranslatedPairIsConstant)
{
    const std::vector<P2> A{P2(-0.3, 0.2), P2(0.4, 0.5)};
    const P2 v(0, 1);
    const double alpha = -(A[0] + A[1]).dot(v);
    std::vector<double> ts;
    for (int k = 0; k <= 20; ++k) ts.push_back(0.1 * k);
    const auto rows = shadow_system_2d(A, {alpha, alpha}, v, ts);
    for (const auto& r : rows) EXPECT_NEAR(r.area, rows.front().area, 1e-12);
    // At t = 1 the pair is symmetric about the horizontal axis.
    EXPECT_NEAR(A[0].y() + alpha + A[1].y() + alpha, -(A[0] + A[1]).y(), 1e-15);
}

TEST(ShadowSystem, SeparatingPairMatchesLensArea)
{
    const std::vector<P2> A{P2(0, 0), P2(0.2, 0)};
    std::vector<double> ts;
    for (int k = 0; k <= 20; ++k) ts.push_back(0.1 * k);
    const auto rows = shadow_system_2d(A, {0.0, 1.0}, P2(1, 0), ts);
    for (const auto& r : rows) {
        const double D = 0.2 + r.t;
        if (D > 2.0) {
            EXPECT_TRUE(std::isinf(r.area));
            continue;
        }
        EXPECT_NEAR(r.area, 4 * one_lens_profile(2, D / 2).value, 1e-9);
        EXPECT_NEAR(r.dual_area, 4 * one_lens_profile(2, std::sqrt(1 - D * D / 4)).value, 1e-9);
    }
    EXPECT_TRUE(std::isinf(rows.back().area));
}

TEST(Svg, UnitDiskAndLens)
{
    const auto disk = svg::render(ArcPolygon::disk(P2(0, 0), 1.0));
    EXPECT_NE(disk.find("<circle cx=\"210.000\" cy=\"210.000\" r=\"200.000\""), std::string::npos);
    EXPECT_NE(disk.find("width=\"420.000\""), std::string::npos);
    const auto lens = svg::render(*intersect_unit_disks({P2(-0.5, 0), P2(0.5, 0)}));
    std::size_t arcs = 0;
    for (std::size_t p = lens.find(" A "); p != std::string::npos; p = lens.find(" A ", p + 1)) ++arcs;
    EXPECT_EQ(arcs, 2u);
    EXPECT_NE(lens.find("0 0 1"), std::string::npos);
}
