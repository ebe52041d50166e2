#include <ballbody/io.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace ballbody;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "ballbody_cli_test";

std::string path(const std::string& name) { return (kDir / name).string(); }

int run(const std::string& args)
{
    fs::create_directories(kDir);
    const std::string cmd = std::string(BALLBODY_CLI) + " " + args + " >" + path("stdout.txt") + " 2>" + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& file)
{
    std::ifstream f(file, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

void write(const std::string& file, const std::string& text)
{
    fs::create_directories(kDir);
    std::ofstream(file) << text;
}

void write(const std::string& file, const Json& j) { write(file, j.dump(2)); }

int count(const std::string& s, const std::string& needle)
{
    int c = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
    return c;
}

}  // namespace

TEST(Cli, HullOfTwoPointsIsTheLens)
{
    Json j = to_json(BodyFile::point_cloud({vec({0, 0}), vec({std::sqrt(2.0), 0})}));
    j["points"][1][0] = std::sqrt(2.0);
    write(path("pair.json"), j);
    ASSERT_EQ(run("hull --in " + path("pair.json") + " --out " + path("hull.json")), 0);
    const Json h = Json::parse(slurp(path("hull.json")));
    EXPECT_NEAR(h["area"].get<double>(), kPi / 2 - 1, 1e-11);
    EXPECT_EQ(h["kind"], "ball_intersection");
    // The lens is self-dual up to congruence.
    ASSERT_EQ(run("dual --in " + path("hull.json")), 0);
    EXPECT_NEAR(Json::parse(slurp(path("stdout.txt")))["area"].get<double>(), kPi / 2 - 1, 1e-11);
}

TEST(Cli, RoundTripWithinTolerance)
{
    SeededRng rng(71);
    for (int n = 2; n <= 3; ++n) {
        const auto g = make_grid(n, n == 2 ? 720 : 1024);
        for (int t = 0; t < 10; ++t) {
            std::vector<ClosedBall> balls;
            PointSet pts;
            for (int i = 0; i < 5; ++i) {
                balls.emplace_back(rng.in_ball(n, 0.4), 1.0);
                pts.push_back(rng.in_ball(n, 0.5));
            }
            const BodyFile bi = BodyFile::ball_intersection(balls);
            const BodyFile pc = BodyFile::point_cloud(pts);
            const BodyFile ss = BodyFile::support_samples(bi.sampled(g));
            for (const BodyFile* B : {&bi, &pc, &ss}) {
                const BodyFile back = body_from_json(Json::parse(to_json(*B).dump()));
                EXPECT_EQ(back.kind(), B->kind());
                EXPECT_LE(hausdorff(B->sampled(g), back.sampled(g)).grid_max, 1e-12) << B->kind();
            }
            // Bodies emitted by the CLI re-parse to the same body.
            write(path("rt.json"), to_json(pc));
            ASSERT_EQ(run("hull --grid " + std::to_string(g->size()) + " --in " + path("rt.json") + " --out " + path("rt_hull.json")), 0);
            const BodyFile H = body_from_json(Json::parse(slurp(path("rt_hull.json"))));
            EXPECT_LE(hausdorff(H.sampled(g), pc.sampled(g)).grid_max, 1e-11);
        }
    }
}

TEST(Cli, CustomDirectionsRoundTrip)
{
    Matrix M(4, 2);
    M << 1, 0, 0, 1, -1, 0, 0, -1;
    const auto g = std::make_shared<const DirectionGrid>(M, kPi / 4);
    const SupportSampledBody K(g, vec({0.5, 0.25, 0.5, 0.25}), Provenance::imported);
    const BodyFile back = body_from_json(Json::parse(to_json(BodyFile::support_samples(K)).dump()));
    EXPECT_EQ(back.samples()->values(), K.values());
    EXPECT_EQ(back.samples()->grid().matrix(), M);
}

TEST(Cli, ArcPolygonRoundTrip)
{
    const auto g = make_grid(2, 720);
    const ArcPolygon Q = quadrant_constant_width_body();
    const BodyFile B = BodyFile::from_arc_polygon(Q);
    EXPECT_EQ(B.kind(), "arc_polygon");
    const BodyFile back = body_from_json(Json::parse(to_json(B).dump()));
    EXPECT_LE(hausdorff(B.sampled(g), back.sampled(g)).grid_max, 1e-12);
    EXPECT_NEAR(back.arc_polygon().area(), Q.area(), 1e-12);
    EXPECT_EQ(BodyFile::from_arc_polygon(reuleaux_triangle()).kind(), "ball_intersection");
    EXPECT_THROW(body_from_json(Json::parse(R"({"dim": 3, "kind": "arc_polygon", "disk_center": [0, 0], "disk_radius": 1})")),
                 std::invalid_argument);
}

TEST(Cli, Deterministic)
{
    write(path("ball3.json"), to_json(BodyFile::ball_intersection({{vec({0, 0, 0}), 1.0}, {vec({0.6, 0, 0}), 1.0}, {vec({0, 0.5, 0.1}), 1.0}})));
    const std::string args = "volume --samples 5000 --seed 3 --grid 256 --in " + path("ball3.json");
    ASSERT_EQ(run(args + " --out " + path("v1.json")), 0);
    ASSERT_EQ(run(args + " --out " + path("v2.json")), 0);
    EXPECT_EQ(slurp(path("v1.json")), slurp(path("v2.json")));
    ASSERT_EQ(run("verify --suite jung,mahler-plane --seed 2 --out " + path("r1.jsonl")), 0);
    ASSERT_EQ(run("verify --suite jung,mahler-plane --seed 2 --out " + path("r2.jsonl")), 0);
    EXPECT_EQ(slurp(path("r1.jsonl")), slurp(path("r2.jsonl")));
    const std::string report = slurp(path("r1.jsonl"));
    EXPECT_EQ(count(report, "\n"), 2);
    EXPECT_EQ(Json::parse(report.substr(0, report.find('\n')))["tag"], "jung");
}

TEST(Cli, CounterexampleJson)
{
    ASSERT_EQ(run("counterexample --out " + path("ce.json")), 0);
    const std::string text = slurp(path("ce.json"));
    EXPECT_NE(text.find("6.313"), std::string::npos);
    EXPECT_NE(text.find("5.9545"), std::string::npos);
    const Json j = Json::parse(text);
    EXPECT_LT(j["kappa_h"].get<double>(), 1.0);
    EXPECT_TRUE(j["certified_not_in_S3"].get<bool>());
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("hull --in " + path("does_not_exist.json")), 1);
    write(path("bad.json"), std::string("{\"dim\": 2, \"kind\": \"point_cloud\""));
    EXPECT_EQ(run("hull --in " + path("bad.json")), 1);
    write(path("badkind.json"), std::string("{\"dim\": 2, \"kind\": \"polygon\", \"points\": [[0, 0]]}"));
    EXPECT_EQ(run("hull --in " + path("badkind.json")), 1);
    write(path("far.json"), to_json(BodyFile::point_cloud({vec({0, 0}), vec({3, 0})})));
    EXPECT_EQ(run("hull --in " + path("far.json")), 1);
    EXPECT_NE(slurp(path("stderr.txt")).find("whole plane"), std::string::npos);
    EXPECT_EQ(run("hull --in " + path("far.json") + " --dim 3"), 1);
    EXPECT_EQ(run("verify --suite no-such-suite"), 1);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("minkowski --lambda 2 --in " + path("ball3.json") + " --in " + path("ball3.json")), 1);
    EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, SteinerSweepCsv)
{
    write(path("tri.json"), to_json(BodyFile::point_cloud({vec({0, 0.2}), vec({0.5, -0.1}), vec({-0.3, 0.3})})));
    ASSERT_EQ(run("steiner --direction 0,1 --t-steps 10 --in " + path("tri.json")), 0);
    const std::string csv = slurp(path("stdout.txt"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,area,dual_area");
    EXPECT_EQ(count(csv, "\n"), 12);
}

TEST(Cli, RenderSvg)
{
    write(path("reuleaux.json"), to_json(BodyFile::from_arc_polygon(reuleaux_triangle())));
    ASSERT_EQ(run("render --in " + path("reuleaux.json") + " --out " + path("reuleaux.svg")), 0);
    const std::string r = slurp(path("reuleaux.svg"));
    EXPECT_EQ(count(r, " A 200.000 200.000 "), 3);

    write(path("quadrant.json"), to_json(BodyFile::from_arc_polygon(quadrant_constant_width_body())));
    ASSERT_EQ(run("render --in " + path("quadrant.json") + " --out " + path("quadrant.svg")), 0);
    const std::string q = slurp(path("quadrant.svg"));
    EXPECT_EQ(count(q, " A "), 4);
    // Two unit arcs, one of radius 1/sqrt 2 and one of radius 1 - 1/sqrt 2.
    EXPECT_EQ(count(q, " A 200.000 200.000 "), 2);
    EXPECT_EQ(count(q, " A 141.421 141.421 "), 1);
    EXPECT_EQ(count(q, " A 58.579 58.579 "), 1);

    write(path("disk.json"), to_json(BodyFile::ball_intersection({{vec({0, 0}), 1.0}})));
    ASSERT_EQ(run("render --in " + path("disk.json") + " --out " + path("disk.svg")), 0);
    const std::string d = slurp(path("disk.svg"));
    EXPECT_EQ(count(d, "<circle"), 1);
    EXPECT_EQ(count(d, " A "), 0);

    // Byte-identical on repeat; 3-D bodies are rejected.
    ASSERT_EQ(run("render --in " + path("reuleaux.json") + " --out " + path("reuleaux2.svg")), 0);
    EXPECT_EQ(slurp(path("reuleaux2.svg")), r);
    EXPECT_EQ(run("render --in " + path("ball3.json") + " --out " + path("x.svg")), 1);
}
