#include <ballbody/core.hpp>

#include <gtest/gtest.h>

using namespace ballbody;

TEST(Reflect, Examples)
{
    EXPECT_TRUE(reflect(vec({1, 0}), vec({0, 1})).isApprox(vec({1, 0})));
    EXPECT_TRUE(reflect(vec({0, 1}), vec({0, 1})).isApprox(vec({0, -1})));
    EXPECT_TRUE(reflect(vec({3, 4}), vec({1, 0})).isApprox(vec({-3, 4})));
}

TEST(Reflect, RejectsNonUnitNormal) { EXPECT_THROW(reflect(vec({1, 0}), vec({0, 2})), std::invalid_argument); }

TEST(Reflect, InvolutionAndIsometry)
{
    SeededRng rng(1);
    for (int n = 2; n <= 5; ++n)
        for (int t = 0; t < 200; ++t) {
            const Vector u = rng.unit_vector(n), x = rng.normal_vector(n), y = rng.normal_vector(n);
            EXPECT_LE((reflect(reflect(x, u), u) - x).norm(), 1e-12);
            EXPECT_NEAR((reflect(x, u) - reflect(y, u)).norm(), (x - y).norm(), 1e-12);
        }
}

TEST(RigidMotion, Examples)
{
    const PointSet A{vec({0, 0}), vec({1, 0})};
    const auto id = apply_motion(RigidMotion::identity(2), A);
    EXPECT_TRUE(id[1].isApprox(A[1]));
    const auto rot = apply_motion(RigidMotion::planar_rotation(kPi / 2), {vec({1, 0})});
    EXPECT_LE((rot[0] - vec({0, 1})).norm(), 1e-15);
    const auto tr = apply_motion(RigidMotion::translation(vec({1, 1})), A);
    EXPECT_TRUE(tr[0].isApprox(vec({1, 1})));
    EXPECT_TRUE(tr[1].isApprox(vec({2, 1})));
}

TEST(RigidMotion, RejectsNonOrthogonal)
{
    Matrix U = Matrix::Identity(2, 2);
    U(0, 1) = 1e-6;
    EXPECT_THROW(RigidMotion(U, Vector::Zero(2)), std::invalid_argument);
    EXPECT_THROW(RigidMotion::identity(2)(vec({1, 2, 3})), std::invalid_argument);
}

TEST(RigidMotion, PreservesDistances)
{
    SeededRng rng(2);
    for (int n = 2; n <= 4; ++n) {
        const Matrix U = Eigen::HouseholderQR<Matrix>(Matrix::NullaryExpr(n, n, [&] { return rng.normal(); }))
                             .householderQ() *
                         Matrix::Identity(n, n);
        const RigidMotion g(U, rng.normal_vector(n));
        PointSet A;
        for (int i = 0; i < 20; ++i) A.push_back(rng.normal_vector(n));
        const auto B = apply_motion(g, A);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) EXPECT_NEAR((B[i] - B[j]).norm(), (A[i] - A[j]).norm(), 1e-12);
    }
}

TEST(FibonacciGrid, CircleExamples)
{
    const auto g4 = fibonacci_grid(2, 4);
    EXPECT_EQ(g4.size(), 4);
    EXPECT_LE((g4[0] - vec({1, 0})).norm(), 1e-15);
    EXPECT_LE((g4[1] - vec({0, 1})).norm(), 1e-15);
    EXPECT_LE((g4[2] - vec({-1, 0})).norm(), 1e-15);
    EXPECT_LE((g4[3] - vec({0, -1})).norm(), 1e-15);
    EXPECT_DOUBLE_EQ(g4.mesh(), kPi / 4);
    EXPECT_DOUBLE_EQ(fibonacci_grid(2, 360).mesh(), kPi / 360);
    EXPECT_TRUE(fibonacci_grid(2, 360).symmetric());
}

TEST(FibonacciGrid, SphereNormsAndSymmetry)
{
    for (int m : {1000, 1024, 998}) {
        const auto g = fibonacci_grid(3, m);
        EXPECT_EQ(g.size(), m);
        for (int i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i].norm(), 1.0, 1e-12);
        EXPECT_TRUE(g.symmetric());
        EXPECT_LT(g.mesh(), 0.15);
    }
    const auto g4 = fibonacci_grid(4, 1600);
    EXPECT_TRUE(g4.symmetric());
    EXPECT_LT(g4.mesh(), 0.6);
}

TEST(FibonacciGrid, AxisAlignedReflectionClosure)
{
    const auto g = fibonacci_grid(3, 1024);
    const Vector e = unit(3, 2);
    for (int i = 0; i < g.size(); ++i) EXPECT_GE(g.find(reflect(g[i], e)), 0);
}

TEST(FibonacciGrid, MeshBoundsRandomProbes)
{
    const auto g = fibonacci_grid(3, 2000);
    SeededRng rng(77);
    for (int t = 0; t < 5000; ++t) {
        const Vector u = rng.unit_vector(3);
        const double c = std::clamp((g.matrix() * u).maxCoeff(), -1.0, 1.0);
        EXPECT_LE(std::acos(c), g.mesh());
    }
}

TEST(FibonacciGrid, RejectsTooFew)
{
    EXPECT_THROW(fibonacci_grid(3, 5), std::invalid_argument);
    EXPECT_THROW(fibonacci_grid(1, 10), std::invalid_argument);
    EXPECT_THROW(fibonacci_grid(3, 101), std::invalid_argument);
}

TEST(SeededRng, Reproducible)
{
    SeededRng a(42, 3), b(42, 3), c(42, 4);
    bool differs = false;
    for (int i = 0; i < 10000; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs = differs || x != c.next_u64();
    }
    EXPECT_TRUE(differs);
}

TEST(SeededRng, GoldenPrefix)
{
    // Frozen first outputs; they must not change across platforms or refactors.
    SeededRng r(0, 0);
    EXPECT_EQ(r.next_u64(), 4768932952251265552ULL);
    EXPECT_EQ(r.next_u64(), 16168679545894742312ULL);
    EXPECT_EQ(r.next_u64(), 6487188721686299062ULL);
    EXPECT_EQ(SeededRng(1, 2).uniform(), 0.086938064728463549);
    SeededRng u(7);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) mean += u.uniform();
    EXPECT_NEAR(mean / 100000, 0.5, 0.005);
}

TEST(SeededRng, BallSamplesAreUniform)
{
    SeededRng rng(5);
    int inner = 0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        const Vector x = rng.in_ball(3);
        ASSERT_LE(x.norm(), 1.0);
        inner += x.norm() <= 0.5;
    }
    EXPECT_NEAR(static_cast<double>(inner) / N, 0.125, 0.003);
}

TEST(Tolerance, Validation)
{
    ToleranceProfile t;
    EXPECT_NO_THROW(t.validate());
    t.quad_tol = 0;
    EXPECT_THROW(t.validate(), std::invalid_argument);
}

TEST(UnitBallVolume, Table)
{
    EXPECT_DOUBLE_EQ(unit_ball_volume(1), 2.0);
    EXPECT_DOUBLE_EQ(unit_ball_volume(2), kPi);
    EXPECT_DOUBLE_EQ(unit_ball_volume(3), 4 * kPi / 3);
    EXPECT_NEAR(unit_ball_volume(4), kPi * kPi / 2, 1e-14);
}
