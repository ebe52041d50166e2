#include <ballbody/body.hpp>

#include <gtest/gtest.h>

using namespace ballbody;

namespace {

PointSet random_set(SeededRng& rng, int n, int m, double spread)
{
    PointSet A;
    for (int i = 0; i < m; ++i) A.push_back(rng.in_ball(n, spread));
    return A;
}

BallIntersectionBody lens(int n, double d)
{
    return BallIntersectionBody({{unit(n, 0) * d, 1.0}, {-unit(n, 0) * d, 1.0}});
}

// Dense boundary enumeration of a planar intersection of unit disks: max <x,u> over
// boundary points of each circle that satisfy all constraints.
double planar_support_oracle(const std::vector<ClosedBall>& balls, const Vector& u)
{
    double best = -1e300;
    for (const auto& b : balls)
        for (int k = 0; k < 200000; ++k) {
            const double a = 2 * kPi * k / 200000;
            const Vector x = b.center + b.radius * vec({std::cos(a), std::sin(a)});
            bool ok = true;
            for (const auto& c : balls) ok = ok && (x - c.center).norm() <= c.radius + 1e-12;
            if (ok) best = std::max(best, x.dot(u));
        }
    return best;
}

}  // namespace

TEST(CDualOfPoints, Examples)
{
    const auto K0 = c_dual_of_points({vec({0, 0})});
    EXPECT_FALSE(K0.empty());
    EXPECT_NEAR(K0.support_value(vec({0, 1})), 1.0, 1e-15);

    const auto P = c_dual_of_points({vec({-1, 0}), vec({1, 0})});
    EXPECT_FALSE(P.empty());
    for (int i = 0; i < 8; ++i) {
        const Vector u = vec({std::cos(i * 0.7), std::sin(i * 0.7)});
        EXPECT_NEAR(P.support_value(u), 0.0, 1e-7);
    }
    EXPECT_NEAR(P.outball().radius, 0.0, 1e-7);

    // Equilateral triangle with circumradius 1.2.
    PointSet T;
    for (int i = 0; i < 3; ++i) T.push_back(1.2 * vec({std::cos(2 * kPi * i / 3), std::sin(2 * kPi * i / 3)}));
    const auto E = c_dual_of_points(T);
    EXPECT_TRUE(E.empty());
    EXPECT_THROW(E.support_value(vec({1, 0})), EmptyBodyError);
}

TEST(SupportValue, LensClosedForms)
{
    for (int n = 2; n <= 4; ++n) {
        const auto K = lens(n, 0.6);
        EXPECT_NEAR(K.support_value(unit(n, 1)), 0.8, 1e-12);
        EXPECT_NEAR(K.support_value(unit(n, 0)), 0.4, 1e-12);
        EXPECT_NEAR(K.support_value(-unit(n, 0)), 0.4, 1e-12);
    }
    EXPECT_NEAR(BallIntersectionBody({{vec({0, 0, 0}), 1.0}}).support_value(unit(3, 2)), 1.0, 1e-15);
}

TEST(SupportValue, DenseBoundaryOracle)
{
    SeededRng rng(31);
    for (int t = 0; t < 5; ++t) {
        const auto A = random_set(rng, 2, 4, 0.5);
        const auto K = c_dual_of_points(A);
        for (int k = 0; k < 4; ++k) {
            const Vector u = rng.unit_vector(2);
            // The sampled oracle can only undershoot, by at most its angular resolution.
            const double h = K.support_value(u), o = planar_support_oracle(K.balls(), u);
            EXPECT_LE(o, h + 1e-12);
            EXPECT_LE(h - o, 5e-5);
        }
    }
}

TEST(SupportValue, ProjectedGradientAgreesAndResidualCertified)
{
    SeededRng rng(32);
    for (int n = 2; n <= 3; ++n)
        for (int t = 0; t < 6; ++t) {
            const auto K = c_dual_of_points(random_set(rng, n, 5, 0.5));
            const Vector u = rng.unit_vector(n);
            const auto a = K.support(u);
            const auto b = K.support_projected_gradient(u);
            EXPECT_LE(a.kkt_residual, 1e-9);
            EXPECT_NEAR(a.value, b.value, 1e-6);
        }
}

TEST(SupportValue, MonotoneUnderAddingBalls)
{
    SeededRng rng(33);
    for (int t = 0; t < 50; ++t) {
        auto A = random_set(rng, 3, 4, 0.5);
        const auto K = c_dual_of_points(A);
        A.push_back(rng.in_ball(3, 0.5));
        const auto K2 = c_dual_of_points(A);
        const Vector u = rng.unit_vector(3);
        EXPECT_LE(K2.support_value(u), K.support_value(u) + 1e-12);
    }
}

TEST(SupportValue, RejectsNonUnitDirection) { EXPECT_THROW(lens(2, 0.5).support_value(vec({2, 0})), std::invalid_argument); }

TEST(SampleSupport, Examples)
{
    auto g = make_grid(2, 360);
    const auto B = sample_support(BallIntersectionBody({{vec({0, 0}), 1.0}}), g);
    EXPECT_LE((B.values().array() - 1.0).abs().maxCoeff(), 1e-15);
    const Vector c = vec({0.3, -0.2});
    const auto Bc = sample_support(BallIntersectionBody({{c, 1.0}}), g);
    for (int i = 0; i < g->size(); ++i) EXPECT_NEAR(Bc.value(i), c.dot((*g)[i]) + 1, 1e-14);
    const auto L = sample_support(lens(2, 0.6), g);
    Eigen::Index arg;
    EXPECT_NEAR(L.values().maxCoeff(&arg), 0.8, 1e-12);
    EXPECT_NEAR(std::abs((*g)[static_cast<int>(arg)][1]), 1.0, 1e-12);
    EXPECT_GE(L.lipschitz_bound(), L.values().cwiseAbs().maxCoeff());
}

TEST(CDual, Examples)
{
    auto g = make_grid(3, 1024);
    const auto unit_ball = ball_support(g, Vector::Zero(3), 1.0);
    EXPECT_LE(c_dual(unit_ball).values().cwiseAbs().maxCoeff(), 1e-15);
    const auto half = ball_support(g, Vector::Zero(3), 0.5);
    EXPECT_LE((c_dual(half).values().array() - 0.5).abs().maxCoeff(), 1e-15);
    const Vector c = vec({0.1, 0.2, -0.3});
    const auto Bc = ball_support(g, c, 0.3);
    const auto D = c_dual(Bc);
    for (int i = 0; i < g->size(); ++i) EXPECT_NEAR(D.value(i), c.dot((*g)[i]) + 0.7, 1e-14);
    EXPECT_LE((c_dual(c_dual(Bc)).values() - Bc.values()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(D.provenance(), Provenance::dual_formula);
}

TEST(CDual, RejectsAsymmetricGrid)
{
    auto g = make_grid(2, 9);
    EXPECT_THROW(c_dual(ball_support(g, Vector::Zero(2), 1.0)), std::invalid_argument);
}

TEST(MinkowskiCombine, Examples)
{
    auto g = make_grid(2, 360);
    const auto K = sample_support(lens(2, 0.4), g);
    const auto T = ball_support(g, vec({0.2, 0.1}), 0.5);
    EXPECT_EQ(minkowski_combine(K, T, 0.0).values(), K.values());
    EXPECT_LE((minkowski_combine(K, K, 0.37).values() - K.values()).cwiseAbs().maxCoeff(), 1e-15);
    const Vector c = vec({0.4, -0.2});
    const auto S = minkowski_combine(ball_support(g, Vector::Zero(2), 0.5), ball_support(g, c, 0.5), 0.5);
    EXPECT_LE((S.values() - ball_support(g, c / 2, 0.5).values()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(minkowski_combine(K, T, 1.5), std::invalid_argument);
    EXPECT_THROW(minkowski_combine(K, ball_support(make_grid(2, 180), c, 0.5), 0.5), std::invalid_argument);
}

TEST(MinkowskiCombine, DualLinearityExactOnGrid)
{
    SeededRng rng(41);
    auto g = make_grid(3, 512);
    for (int t = 0; t < 5; ++t) {
        const auto K = sample_support(c_dual_of_points(random_set(rng, 3, 5, 0.5)), g);
        const auto T = sample_support(c_dual_of_points(random_set(rng, 3, 5, 0.5)), g);
        const double lam = rng.uniform();
        const auto lhs = c_dual(minkowski_combine(K, T, lam));
        const auto rhs = minkowski_combine(c_dual(K), c_dual(T), lam);
        EXPECT_LE((lhs.values() - rhs.values()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Project, Examples)
{
    auto g = make_grid(3, 512);
    Matrix E(3, 2);
    E << 1, 0, 0, 1, 0, 0;
    const auto P = project(ball_support(g, Vector::Zero(3), 1.0), E);
    EXPECT_LE((P.values().array() - 1.0).abs().maxCoeff(), 1e-15);
    const Vector c = vec({0.2, -0.1, 0.5});
    const auto Pc = project(ball_support(g, c, 1.0), E);
    for (int i = 0; i < Pc.size(); ++i) EXPECT_NEAR(Pc.value(i), Pc.grid()[i].dot(vec({0.2, -0.1})) + 1, 1e-14);
    Matrix e1(3, 1);
    e1 << 1, 0, 0;
    const auto seg = project(sample_support(lens(3, 0.3), g), e1);
    EXPECT_NEAR(seg.value(0), 0.7, 1e-12);
    EXPECT_NEAR(seg.value(1), 0.7, 1e-12);
    Matrix bad(3, 1);
    bad << 2, 0, 0;
    EXPECT_THROW(project(P, bad), std::invalid_argument);
}

TEST(Project, CommutesWithDuality)
{
    SeededRng rng(42);
    auto g = make_grid(3, 512);
    Matrix E = orthogonal_complement(rng.unit_vector(3));
    for (int t = 0; t < 4; ++t) {
        const auto K = sample_support(c_dual_of_points(random_set(rng, 3, 5, 0.5)), g);
        const auto a = project(c_dual(K), E);
        const auto b = c_dual(project(K, E));
        EXPECT_LE((a.values() - b.values()).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(Section, Examples)
{
    const BallIntersectionBody B({{Vector::Zero(3), 1.0}});
    const auto S0 = section(B, unit(3, 0), 0.0);
    EXPECT_EQ(S0.dim(), 2);
    EXPECT_NEAR(S0.support_value(vec({0, 1})), 1.0, 1e-14);
    const auto S1 = section(B, unit(3, 0), 1.0);
    EXPECT_NEAR(S1.balls()[0].radius, 0.0, 1e-15);
    EXPECT_NEAR(S1.support_value(vec({1, 0})), 0.0, 1e-12);
    const auto S6 = section(B, unit(3, 0), 0.6);
    EXPECT_NEAR(S6.balls()[0].radius, 0.8, 1e-15);
    EXPECT_THROW(section(B, unit(3, 0), 1.2), EmptyBodyError);
}

TEST(Section, AgreesWithMembership)
{
    SeededRng rng(43);
    for (int t = 0; t < 20; ++t) {
        const auto K = c_dual_of_points(random_set(rng, 3, 4, 0.5));
        const Vector nu = rng.unit_vector(3);
        const double off = rng.uniform(-0.2, 0.2);
        Matrix B;
        const auto S = section(K, nu, off, &B);
        for (int k = 0; k < 200; ++k) {
            const Vector y = rng.in_ball(2, 1.0);
            const Vector x = B * y + off * nu;
            EXPECT_EQ(S.contains(y, 1e-12), K.contains(x, 1e-12));
        }
    }
}

TEST(Hausdorff, Examples)
{
    auto g = make_grid(2, 360);
    const auto B1 = ball_support(g, Vector::Zero(2), 1.0);
    EXPECT_EQ(hausdorff(B1, B1).value(), 0.0);
    EXPECT_NEAR(hausdorff(B1, ball_support(g, Vector::Zero(2), 0.5)).value(), 0.5, 1e-15);
    const Vector c = vec({0.3, 0.4});
    EXPECT_NEAR(hausdorff(B1, ball_support(g, c, 1.0)).value(), 0.5, 1e-3);
    EXPECT_LE(hausdorff(B1, ball_support(g, c, 1.0)).value(), 0.5);
    EXPECT_GE(hausdorff(B1, ball_support(g, c, 1.0)).error_bound, 0.5);
}

TEST(Hausdorff, DualityIsAnIsometry)
{
    SeededRng rng(44);
    auto g = make_grid(3, 512);
    for (int t = 0; t < 5; ++t) {
        const auto K = sample_support(c_dual_of_points(random_set(rng, 3, 5, 0.5)), g);
        const auto L = sample_support(c_dual_of_points(random_set(rng, 3, 5, 0.5)), g);
        EXPECT_EQ(hausdorff(K, L).value(), hausdorff(c_dual(K), c_dual(L)).value());
    }
}

TEST(Contains, ChullExamples)
{
    SeededRng rng(45);
    const auto A = random_set(rng, 3, 6, 0.5);
    const CHull H(A);
    for (const auto& a : A) EXPECT_EQ(H.classify(a), Membership::inside);
    const PointSet pair{vec({0, 0}), vec({1, 0})};
    EXPECT_EQ(CHull(pair).classify(vec({0.5, 0})), Membership::inside);
    EXPECT_EQ(CHull(pair).classify(vec({3.0, 2.0})), Membership::outside);
}

TEST(Contains, ChullExactVsGridBand)
{
    SeededRng rng(46);
    auto g = make_grid(3, 2048);
    for (int t = 0; t < 5; ++t) {
        const auto A = random_set(rng, 3, 5, 0.5);
        const CHull H(A);
        const auto hull_support = c_dual(sample_support(H.dual(), g));
        for (int k = 0; k < 200; ++k) {
            const Vector x = rng.in_ball(3, 0.8);
            const auto exact = H.classify(x);
            const auto grid = classify_by_grid(hull_support, x);
            if (grid == Membership::outside) EXPECT_NE(exact, Membership::inside);
            if (grid == Membership::inside) EXPECT_NE(exact, Membership::outside);
        }
    }
}

TEST(Contains, BallIntersectionBand)
{
    const auto K = lens(2, 0.6);
    EXPECT_EQ(K.classify(vec({0, 0})), Membership::inside);
    EXPECT_EQ(K.classify(vec({0, 0.8})), Membership::boundary_band);
    EXPECT_EQ(K.classify(vec({0, 0.81})), Membership::outside);
}

TEST(Contains, OrderReversalAndQuasiInvolution)
{
    SeededRng rng(47);
    for (int t = 0; t < 30; ++t) {
        auto A = random_set(rng, 3, 4, 0.5);
        auto B = A;
        B.push_back(rng.in_ball(3, 0.5));
        const auto KA = c_dual_of_points(A), KB = c_dual_of_points(B);
        for (int k = 0; k < 200; ++k) {
            const Vector x = rng.in_ball(3, 1.0);
            if (KB.contains(x)) EXPECT_TRUE(KA.contains(x));
        }
        const CHull H(B);
        for (const auto& a : B) EXPECT_EQ(H.classify(a), Membership::inside);
    }
}

TEST(Diameter, Examples)
{
    auto g = make_grid(3, 1024);
    EXPECT_NEAR(diameter(ball_support(g, vec({0.1, 0, 0}), 0.3)).value, 0.6, 1e-14);
    EXPECT_NEAR(diameter(sample_support(lens(3, 0.6), g)).value, 1.6, 1e-9);
    EXPECT_LE(diameter(sample_support(lens(3, 0.6), g), false).value, 1.6 + 1e-12);
    EXPECT_GE(diameter(sample_support(lens(3, 0.6), g), false).upper_bound, 1.6);
}

TEST(MeanWidth, PairingIdentity)
{
    SeededRng rng(48);
    auto g = make_grid(3, 1024);
    EXPECT_NEAR(mean_width(ball_support(g, Vector::Zero(3), 0.3)), 0.3, 1e-13);
    for (int t = 0; t < 5; ++t) {
        const auto K = sample_support(c_dual_of_points(random_set(rng, 3, 5, 0.5)), g);
        EXPECT_NEAR(mean_width(K) + mean_width(c_dual(K)), 1.0, 1e-14);
    }
}

TEST(Outball, InPlusOut)
{
    SeededRng rng(49);
    auto g = make_grid(2, 360);
    for (int t = 0; t < 20; ++t) {
        const auto A = random_set(rng, 2, 5, 0.5);
        const auto K = c_dual_of_points(A);
        // Outrad(A) + Inrad(A^c) = 1 with concentric balls.
        const auto meb = min_enclosing_ball(A);
        EXPECT_NEAR(K.inradius(), 1 - meb.radius, 1e-12);
        EXPECT_LE((K.deep_point() - meb.center).norm(), 1e-9);
        // Out-ball of K from exact enumeration vs from sampled boundary points plus oracle.
        const auto S = sample_support(K, g);
        EXPECT_NEAR(outball(S).radius, K.outball().radius, 1e-9);
    }
}

TEST(McVolume, Examples)
{
    SeededRng rng(50);
    const auto v2 = mc_volume([](const Vector& x) { return x.norm() <= 1.0; }, {vec({0, 0}), 1.0}, 1000000, rng);
    EXPECT_NEAR(v2.estimate, kPi, 3 * v2.stderr_ + 1e-12);
    const auto v3 = mc_volume([](const Vector& x) { return x.norm() <= 0.5; }, {Vector::Zero(3), 0.6}, 200000, rng);
    EXPECT_NEAR(v3.estimate, kPi / 6, 3 * v3.stderr_);
    const CHull H({vec({0, 0}), vec({std::sqrt(2.0), 0})});
    const auto vl = mc_volume([&](const Vector& x) { return H.contains(x); }, H.bounding_ball(), 200000, rng);
    EXPECT_NEAR(vl.estimate, kPi / 2 - 1, 3 * vl.stderr_);
    const auto none = mc_volume([](const Vector&) { return false; }, {vec({0, 0}), 1.0}, 100, rng);
    EXPECT_TRUE(none.degenerate);
}

TEST(McVolume, DeterministicGivenSeed)
{
    SeededRng a(9), b(9);
    auto in = [](const Vector& x) { return x.norm() <= 0.7; };
    EXPECT_EQ(mc_volume(in, {vec({0, 0, 0}), 1.0}, 10000, a).hits, mc_volume(in, {vec({0, 0, 0}), 1.0}, 10000, b).hits);
}

TEST(HalfDualSum, Examples)
{
    const BallIntersectionBody B0({{vec({0, 0}), 1.0}});
    EXPECT_TRUE(half_dual_sum_membership(B0, B0, vec({0, 0})).first);
    const Vector p = vec({0.3, -0.4});
    const BallIntersectionBody Bp({{p, 1.0}});
    EXPECT_TRUE(half_dual_sum_membership(Bp, Bp, p).first);
    const BallIntersectionBody B3({{vec({3, 0}), 1.0}});
    const auto [in, w] = half_dual_sum_membership(B0, B3, vec({1.5, 0}));
    EXPECT_TRUE(in);
    EXPECT_NEAR(w.max_defect, 1.0, 1e-9);
    EXPECT_FALSE(half_dual_sum_membership(B0, B3, vec({0, 0})).first);
}

TEST(HalfDualSum, AgreesWithGridDescription)
{
    SeededRng rng(51);
    auto g = make_grid(2, 720);
    for (int t = 0; t < 10; ++t) {
        const auto K = c_dual_of_points(random_set(rng, 2, 3, 0.4));
        const auto T = c_dual_of_points(random_set(rng, 2, 3, 0.4));
        const auto half = minkowski_combine(c_dual(sample_support(K, g)), c_dual(sample_support(T, g)), 0.5);
        for (int k = 0; k < 40; ++k) {
            const Vector x = rng.in_ball(2, 0.6);
            const auto [in, w] = half_dual_sum_membership(K, T, x);
            const double gap = (g->matrix() * x - half.values()).maxCoeff();
            if (gap > 1e-9) EXPECT_FALSE(in);
            if (gap < -1e-3) EXPECT_TRUE(in);
            // Witness: x + z in K^c and x - z in T^c.
            if (in) {
                EXPECT_LE(K.farthest(x + w.z).value, 1.0 + 1e-9);
                EXPECT_LE(T.farthest(x - w.z).value, 1.0 + 1e-9);
            }
        }
    }
}

TEST(Continuity, EtaModulus)
{
    // (A + dB)^c subset A^c subset (A + dB)^c + eta(d) B, by support comparison.
    SeededRng rng(52);
    auto g = make_grid(2, 720);
    for (double d : {0.01, 0.05})
        for (int t = 0; t < 10; ++t) {
            const auto A = random_set(rng, 2, 5, 0.4);
            std::vector<ClosedBall> shrunk;
            for (const auto& a : A) shrunk.emplace_back(a, 1.0 - d);
            const auto inner = sample_support(BallIntersectionBody(shrunk), g);
            const auto K = sample_support(c_dual_of_points(A), g);
            const double eta = std::sqrt(2 * d - d * d);
            for (int i = 0; i < g->size(); ++i) {
                EXPECT_LE(inner.value(i), K.value(i) + 1e-12);
                EXPECT_LE(K.value(i), inner.value(i) + eta + 1e-12);
            }
        }
}
