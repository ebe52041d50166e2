#include <ballbody/io.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace ballbody;

namespace {

struct Options {
    std::vector<std::string> in;
    std::string out;
    int dim = 0;
    int grid = 0;
    std::size_t samples = 20000;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::string suite = "all";
    std::string direction;
    double lambda = 0.5;
    double t_min = 0.0, t_max = 1.0;
    int t_steps = 0;
};

class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt12(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json read_json_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open " + path);
    try {
        return Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

BodyFile load_body(const Options& o, std::size_t i = 0)
{
    if (o.in.size() <= i) throw ValidationError("missing --in");
    BodyFile B = body_from_json(read_json_file(o.in[i]));
    if (o.dim && B.dim() != o.dim) throw ValidationError(o.in[i] + ": dimension " + std::to_string(B.dim()) + " does not match --dim");
    return B;
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + o.out);
    f << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

std::shared_ptr<const DirectionGrid> grid_for(const Options& o, int n)
{
    return make_grid(n, o.grid ? o.grid : (n == 2 ? 720 : 2048));
}

Vector parse_direction(const Options& o, int n)
{
    if (o.direction.empty()) return unit(n, n - 1);
    std::vector<double> c;
    std::stringstream ss(o.direction);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            c.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ValidationError("--direction: bad number \"" + tok + "\"");
        }
    }
    if (static_cast<int>(c.size()) != n) throw ValidationError("--direction: expected " + std::to_string(n) + " components");
    Vector u = Eigen::Map<Vector>(c.data(), n);
    if (!(u.norm() > 0)) throw ValidationError("--direction: zero vector");
    return u.normalized();
}

std::function<bool(const Vector&)> membership(const BodyFile& B, const Options& o)
{
    if (const auto* b = B.balls()) {
        auto K = std::make_shared<BallIntersectionBody>(b->balls);
        return [K](const Vector& x) { return K->contains(x, 0.0); };
    }
    if (const auto* p = B.cloud()) {
        auto H = std::make_shared<CHull>(p->points);
        return [H](const Vector& x) { return H->contains(x, 0.0); };
    }
    auto K = std::make_shared<SupportSampledBody>(B.sampled(grid_for(o, B.dim())));
    return [K](const Vector& x) { return classify_by_grid(*K, x) != Membership::outside; };
}

ClosedBall bound_of(const BodyFile& B, const Options& o)
{
    if (const auto* b = B.balls()) return bounding_ball(BallIntersectionBody(b->balls));
    if (const auto* p = B.cloud()) return CHull(p->points).bounding_ball();
    const auto ob = outball(B.sampled(grid_for(o, B.dim())));
    return {ob.center, ob.radius + 1e-9};
}

// The c-dual, exact where the representation allows it.
BodyFile dual_of(const BodyFile& B, const Options& o)
{
    if (B.dim() == 2 && !B.samples()) return BodyFile::from_arc_polygon(c_dual_planar(B.arc_polygon()));
    if (const auto* p = B.cloud()) {
        std::vector<ClosedBall> balls;
        for (const auto& a : p->points) balls.emplace_back(a, 1.0);
        return BodyFile::ball_intersection(std::move(balls));
    }
    if (const auto* b = B.balls()) {
        bool unit_radii = true;
        for (const auto& ball : b->balls) unit_radii = unit_radii && ball.radius == 1.0;
        if (unit_radii) {
            PointSet A;
            for (const auto& ball : b->balls) A.push_back(ball.center);
            return BodyFile::point_cloud(std::move(A));
        }
    }
    return BodyFile::support_samples(c_dual(B.sampled(grid_for(o, B.dim()))));
}

Json volume_json(const BodyFile& B, const Options& o, SeededRng& rng)
{
    Json j;
    if (B.dim() == 2 && !B.samples()) {
        j["exact"] = true;
        j["value"] = round12(B.arc_polygon().area());
        return j;
    }
    const auto v = mc_volume(membership(B, o), bound_of(B, o), o.samples, rng);
    j["exact"] = false;
    j["value"] = round12(v.estimate);
    j["stderr"] = round12(v.stderr_);
    j["samples"] = v.samples;
    return j;
}

struct Radii {
    double out, in;
};

Radii radii_of(const BodyFile& B, const Options& o)
{
    if (const auto* b = B.balls()) {
        const BallIntersectionBody K(b->balls);
        return {K.outball().radius, K.inradius()};
    }
    if (const auto* p = B.cloud()) {
        // conv_c(A) and A^c are dual: Outrad + Inrad = 1 both ways.
        const auto D = BallIntersectionBody::c_dual_of_points(p->points);
        return {1.0 - D.inradius(), 1.0 - D.outball().radius};
    }
    const auto K = B.sampled(grid_for(o, B.dim()));
    return {outball(K).radius, inball(K).radius};
}

int cmd_hull(const Options& o)
{
    const BodyFile B = load_body(o);
    Json j;
    if (B.dim() == 2 && !B.samples()) {
        const ArcPolygon P = B.arc_polygon();
        j = to_json(BodyFile::from_arc_polygon(P));
        j["area"] = round12(P.area());
        j["perimeter"] = round12(P.perimeter());
        Json ext = Json::array();
        for (const auto& v : extremal_points_2d(P).points) ext.push_back(json_p2(v));
        j["extremal_points"] = ext;
    } else {
        const auto K = B.sampled(grid_for(o, B.dim()));
        j = to_json(BodyFile::support_samples(K));
        j["mean_width"] = round12(mean_width(K));
    }
    emit(o, j);
    return 0;
}

int cmd_dual(const Options& o)
{
    const BodyFile D = dual_of(load_body(o), o);
    Json j = to_json(D);
    if (D.dim() == 2 && !D.samples()) j["area"] = round12(D.arc_polygon().area());
    emit(o, j);
    return 0;
}

int cmd_volume(const Options& o)
{
    const BodyFile B = load_body(o);
    SeededRng rng(o.seed);
    Json j;
    j["dim"] = B.dim();
    j["volume"] = volume_json(B, o, rng);
    j["dual_volume"] = volume_json(dual_of(B, o), o, rng);
    emit(o, j);
    return 0;
}

int cmd_radii(const Options& o)
{
    const BodyFile B = load_body(o);
    const Radii r = radii_of(B, o);
    Json j;
    j["dim"] = B.dim();
    j["outradius"] = round12(r.out);
    j["inradius"] = round12(r.in);
    j["dual_outradius"] = round12(1.0 - r.in);
    j["dual_inradius"] = round12(1.0 - r.out);
    emit(o, j);
    return 0;
}

int cmd_diameter(const Options& o)
{
    const BodyFile B = load_body(o);
    const auto K = B.sampled(grid_for(o, B.dim()));
    const auto d = diameter(K), dc = diameter(c_dual(K));
    Json j;
    j["dim"] = B.dim();
    j["diameter"] = round12(d.value);
    j["diameter_upper_bound"] = round12(d.upper_bound);
    j["direction"] = json_vector(d.direction);
    j["dual_diameter"] = round12(dc.value);
    j["dual_diameter_upper_bound"] = round12(dc.upper_bound);
    emit(o, j);
    return 0;
}

int cmd_steiner(const Options& o)
{
    const BodyFile B = load_body(o);
    const int n = B.dim();
    const Vector u = parse_direction(o, n);
    if (o.t_steps > 0) {
        // Shadow system x_i + t s_i u; speeds default to -2<x_i, u> (t = 1 reflects the set).
        const auto* p = B.cloud();
        if (n != 2 || !p) throw ValidationError("steiner sweep needs a planar point_cloud");
        if (!(o.t_max > o.t_min)) throw ValidationError("--t-max must exceed --t-min");
        const Json raw = read_json_file(o.in[0]);
        std::vector<double> speeds;
        if (raw.contains("speeds")) {
            if (!raw["speeds"].is_array() || raw["speeds"].size() != p->points.size())
                throw ValidationError("speeds must have one entry per point");
            for (const auto& s : raw["speeds"]) speeds.push_back(s.get<double>());
        } else {
            for (const auto& x : p->points) speeds.push_back(-2.0 * x.dot(u));
        }
        std::vector<double> ts;
        for (int k = 0; k <= o.t_steps; ++k) ts.push_back(o.t_min + (o.t_max - o.t_min) * k / o.t_steps);
        std::ostringstream os;
        os << "t,area,dual_area\n";
        for (const auto& row : shadow_system_2d(to_points2(p->points), speeds, P2(u[0], u[1]), ts))
            os << fmt12(row.t) << "," << fmt12(row.area) << "," << fmt12(row.dual_area) << "\n";
        emit(o, os.str());
        return 0;
    }
    Json j;
    j["dim"] = n;
    j["direction"] = json_vector(u);
    if (n == 2 && !B.samples()) {
        const ArcPolygon P = B.arc_polygon();
        const P2 d(u[0], u[1]);
        const auto S = steiner_2d(P, d, o.grid ? o.grid : 256);
        const auto A = verify_detail::steiner_symmetral_areas(P, d);
        j["area"] = round12(P.area());
        j["dual_area"] = round12(c_dual_planar(P).area());
        j["symmetral_area"] = round12(A.area);
        j["symmetral_dual_area"] = round12(A.dual_area);
        j["symmetral_min_curvature"] = round12(S.min_curvature);
        j["symmetral_in_class"] = S.min_curvature >= 1.0 - o.tol.value_or(1e-9);
        Json pts = Json::array();
        for (const auto& q : S.boundary()) pts.push_back(json_p2(q));
        j["symmetral_boundary"] = pts;
    } else {
        const auto S = steiner_symmetral_nd(membership(B, o), bound_of(B, o), u, o.grid ? o.grid : 24);
        j["symmetral_volume"] = round12(S.volume());
    }
    emit(o, j);
    return 0;
}

int cmd_minkowski(const Options& o)
{
    if (o.in.size() != 2) throw ValidationError("minkowski needs two --in bodies");
    const BodyFile A = load_body(o, 0), B = load_body(o, 1);
    if (A.dim() != B.dim()) throw ValidationError("minkowski: dimensions differ");
    if (!(o.lambda >= 0.0 && o.lambda <= 1.0)) throw ValidationError("--lambda must lie in [0, 1]");
    const auto g = A.samples() ? A.samples()->grid_ptr() : B.samples() ? B.samples()->grid_ptr() : grid_for(o, A.dim());
    const auto M = minkowski_combine(A.sampled(g), B.sampled(g), o.lambda);
    Json j = to_json(BodyFile::support_samples(M));
    j["lambda"] = o.lambda;
    emit(o, j);
    return 0;
}

int cmd_lens(const Options& o)
{
    int n = o.dim;
    double d = o.lambda;
    if (!o.in.empty()) {
        const BodyFile B = load_body(o);
        const auto* p = B.cloud();
        if (!p || p->points.size() != 2) throw ValidationError("lens needs a point_cloud with two points");
        n = B.dim();
        d = 0.5 * (p->points[0] - p->points[1]).norm();
    }
    if (n < 2) throw ValidationError("lens needs --dim >= 2 or an --in pair");
    if (!(d >= 0.0 && d <= 1.0)) throw ValidationError("lens half-distance must lie in [0, 1]");
    const double dd = std::sqrt(1.0 - d * d);
    Json j;
    j["dim"] = n;
    j["half_distance"] = round12(d);
    j["volume"] = round12(klens_volume(n, 1, d).value);
    j["dual_volume"] = round12(klens_volume(n, n - 1, dd).value);
    j["outradius"] = round12(d);
    j["inradius"] = round12(1.0 - dd);
    j["dual_outradius"] = round12(dd);
    j["dual_inradius"] = round12(1.0 - d);
    emit(o, j);
    return 0;
}

int cmd_verify(const Options& o)
{
    std::vector<std::string> tags;
    if (o.suite == "all") {
        tags = suite_tags();
    } else {
        std::stringstream ss(o.suite);
        std::string t;
        while (std::getline(ss, t, ',')) tags.push_back(t);
        const auto known = suite_tags();
        for (const auto& t2 : tags)
            if (std::find(known.begin(), known.end(), t2) == known.end()) throw ValidationError("unknown suite: " + t2);
    }
    SuiteConfig cfg;
    cfg.seed = o.seed;
    cfg.tolerance = o.tol;
    const auto reports = run_suites(tags, cfg);
    std::ostringstream jsonl;
    bool ok = true;
    std::printf("%-26s %-7s %10s %14s %10s\n", "suite", "result", "instances", "worst_margin", "tolerance");
    for (const auto& r : reports) {
        jsonl << to_json(r).dump() << "\n";
        const char* verdict = r.report_only ? "REPORT" : r.pass ? "PASS" : "FAIL";
        std::printf("%-26s %-7s %10zu %14.6g %10.3g\n", r.tag.c_str(), verdict, r.instances, r.worst_margin, r.tolerance);
        ok = ok && (r.pass || r.report_only);
    }
    if (!o.out.empty()) emit(o, jsonl.str());
    return ok ? 0 : 3;
}

int cmd_counterexample(const Options& o)
{
    emit(o, to_json(r3_counterexample()));
    return 0;
}

std::vector<P2> support_polygon(const SupportSampledBody& K)
{
    // Vertices of the polygon cut out by the sampled support lines, in angular order.
    std::vector<std::pair<double, int>> order;
    for (int i = 0; i < K.size(); ++i) order.emplace_back(std::atan2(K.grid()[i][1], K.grid()[i][0]), i);
    std::sort(order.begin(), order.end());
    std::vector<P2> pts;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int i = order[k].second, j = order[(k + 1) % order.size()].second;
        Eigen::Matrix2d M;
        M << K.grid()[i][0], K.grid()[i][1], K.grid()[j][0], K.grid()[j][1];
        pts.push_back(M.partialPivLu().solve(Eigen::Vector2d(K.value(i), K.value(j))));
    }
    return pts;
}

int cmd_render(const Options& o)
{
    const BodyFile B = load_body(o);
    if (B.dim() != 2) throw ValidationError("render needs a planar body");
    if (o.out.empty()) throw ValidationError("render needs --out");
    const std::string text = B.samples() ? svg::render_polyline(support_polygon(*B.samples())) : svg::render(B.arc_polygon());
    emit(o, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ball-bodies and c-duality"};
    app.require_subcommand(1);
    Options o;
    using Cmd = std::function<int(const Options&)>;
    std::vector<std::pair<CLI::App*, Cmd>> cmds;

    auto common = [&](CLI::App* s, bool takes_in = true) {
        if (takes_in) s->add_option("--in", o.in, "input body JSON")->check(CLI::ExistingFile);
        s->add_option("--out", o.out, "output file (stdout if omitted)");
        s->add_option("--dim", o.dim, "expected dimension")->check(CLI::Range(1, 64));
        s->add_option("--grid", o.grid, "direction grid size")->check(CLI::Range(4, 1 << 20));
        s->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 32));
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--tol", o.tol, "tolerance override")->check(CLI::NonNegativeNumber);
    };

    auto add = [&](const char* name, const char* help, Cmd fn) {
        CLI::App* s = app.add_subcommand(name, help);
        cmds.emplace_back(s, std::move(fn));
        return s;
    };

    common(add("hull", "c-hull of a body or point set", cmd_hull));
    common(add("dual", "c-dual", cmd_dual));
    common(add("volume", "volume of a body and its dual", cmd_volume));
    common(add("radii", "in- and out-radius of a body and its dual", cmd_radii));
    common(add("diameter", "diameter of a body and its dual", cmd_diameter));
    auto* st = add("steiner", "Steiner symmetral, or a shadow-system sweep as CSV", cmd_steiner);
    common(st);
    st->add_option("--direction", o.direction, "comma-separated direction");
    st->add_option("--t-min", o.t_min, "sweep start");
    st->add_option("--t-max", o.t_max, "sweep end");
    st->add_option("--t-steps", o.t_steps, "sweep steps (0: symmetral)")->check(CLI::Range(0, 1000000));
    auto* mk = add("minkowski", "Minkowski combination (1 - lambda) K + lambda T", cmd_minkowski);
    common(mk);
    mk->add_option("--lambda", o.lambda, "weight of the second body");
    auto* ln = add("lens", "1-lens of two points or of half-distance --lambda", cmd_lens);
    common(ln);
    ln->add_option("--lambda", o.lambda, "half-distance when no --in is given");
    auto* vf = add("verify", "run verification suites", cmd_verify);
    common(vf, false);
    vf->add_option("--suite", o.suite, "suite tag, comma list, or all");
    common(add("counterexample", "planar-fiber Steiner counterexample in R^3", cmd_counterexample), false);
    common(add("render", "SVG of a planar body", cmd_render));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        for (auto& [sub, fn] : cmds)
            if (sub->parsed()) return fn(o);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
