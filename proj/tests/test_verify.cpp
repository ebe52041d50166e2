#include <ballbody/verify.hpp>

#include <gtest/gtest.h>

using namespace ballbody;

TEST(Registry, TagsAreUniqueAndUnknownTagThrows)
{
    const auto tags = suite_tags();
    EXPECT_GE(tags.size(), 40u);
    std::set<std::string> uniq(tags.begin(), tags.end());
    EXPECT_EQ(uniq.size(), tags.size());
    for (const char* t : {"mahler-plane", "r3-counterexample", "KP-gromov", "santalo-thereal"}) EXPECT_TRUE(uniq.count(t)) << t;
    EXPECT_THROW(run_suite("no-such-suite"), std::invalid_argument);
    EXPECT_THROW(run_suites({"jung", "no-such-suite"}), std::invalid_argument);
}

TEST(Registry, Deterministic)
{
    SuiteConfig cfg;
    cfg.seed = 7;
    cfg.scale = 0.2;
    for (const char* tag : {"mahler-plane", "santalo", "skewed-lens", "KP-gromov"}) {
        const auto a = run_suite(tag, cfg), b = run_suite(tag, cfg);
        EXPECT_EQ(a.instances, b.instances) << tag;
        EXPECT_EQ(a.worst_margin, b.worst_margin) << tag;
    }
}

TEST(Registry, ParallelMatchesSerialAndKeepsOrder)
{
    SuiteConfig cfg;
    cfg.scale = 0.2;
    const std::vector<std::string> tags{"jung", "mahler-plane", "extremal-subset"};
    const auto par = run_suites(tags, cfg);
    ASSERT_EQ(par.size(), tags.size());
    for (std::size_t i = 0; i < tags.size(); ++i) {
        EXPECT_EQ(par[i].tag, tags[i]);
        EXPECT_EQ(par[i].worst_margin, run_suite(tags[i], cfg).worst_margin);
    }
}

TEST(Registry, ToleranceOverride)
{
    SuiteConfig cfg;
    cfg.scale = 0.2;
    cfg.tolerance = 1e-3;
    EXPECT_EQ(run_suite("jung", cfg).tolerance, 1e-3);
}

TEST(Tally, WorstMargin)
{
    Tally t(0.1);
    t.add(0.5);
    t.at_most(1.0, 0.95);
    EXPECT_NEAR(t.report("x", {}).worst_margin, -0.05, 1e-15);
    EXPECT_TRUE(t.report("x", {}).pass);
    t.add(std::nan(""));
    EXPECT_FALSE(t.report("x", {}).pass);
}

TEST(SkewedLens, TrivialShift)
{
    const Vector u0 = vec({-0.5, 0}), u1 = vec({0.5, 0});
    const auto r = skewed_lens_intersection(u0, u1, vec({0, 0}));
    EXPECT_TRUE(r.intersect);
    EXPECT_LE(r.witness.norm(), 1e-9);
}

TEST(SkewedLens, ExampleWitness)
{
    const Vector u0 = vec({-0.5, 0}), u1 = vec({0.5, 0}), z = vec({0, 0.3});
    const auto r = skewed_lens_intersection(u0, u1, z);
    ASSERT_TRUE(r.intersect);
    // Planar oracle: exact lens hulls.
    using planar_detail::to2;
    const auto L1 = spindle_hull({to2(u1 + z), to2(u0 - z)});
    const auto L2 = spindle_hull({to2(-u1 + z), to2(-u0 - z)});
    EXPECT_GE(L1.margin(to2(r.witness)), -1e-9);
    EXPECT_GE(L2.margin(to2(r.witness)), -1e-9);
}

TEST(SkewedLens, RandomTriples)
{
    SeededRng rng(61);
    int valid = 0;
    for (int n = 2; n <= 3; ++n)
        for (int k = 0; k < 1000;) {
            const Vector u0 = rng.in_ball(n, 0.9), u1 = rng.in_ball(n, 0.9), z = rng.in_ball(n, 0.6);
            if (!one_lens_angle_contains(Vector::Zero(n), u0, u1, 0.0)) continue;
            ++k;
            const auto r = skewed_lens_intersection(u0, u1, z);
            EXPECT_TRUE(r.intersect);
            EXPECT_LE(r.defect_first, 1e-9);
            EXPECT_LE(r.defect_second, 1e-9);
            ++valid;
        }
    EXPECT_EQ(valid, 2000);
}

TEST(SkewedLens, RejectsBadInput)
{
    EXPECT_THROW(skewed_lens_intersection(vec({0.5, 0}), vec({0.9, 0}), vec({0, 0})), std::invalid_argument);
}

TEST(KneserPoulsen, ContractionsGrowDualVolume)
{
    SeededRng rng(62);
    const auto r = kp_contraction_experiment(2, 3, 100, rng);
    EXPECT_FALSE(r.report_only);
    EXPECT_GE(r.worst_margin, 0.0);
    const auto r3 = kp_contraction_experiment(3, 4, 10, rng, 20000);
    EXPECT_GE(r3.worst_margin, 0.0);
    EXPECT_TRUE(kp_contraction_experiment(2, 5, 5, rng).report_only);
}

TEST(KneserPoulsen, PointAndIdentity)
{
    const PointSet X{vec({0.1, 0.2}), vec({0.1, 0.2}), vec({0.1, 0.2})};
    EXPECT_NEAR(verify_detail::dual_volume_2d(X), kPi, 1e-12);
    // Exact dual area of two points at distance D equals the lens area with half-angle acos(D/2).
    const PointSet Y{vec({-0.3, 0}), vec({0.3, 0})};
    const double th = 2 * std::acos(0.3);
    EXPECT_NEAR(verify_detail::dual_volume_2d(Y), th - std::sin(th), 1e-12);
}
