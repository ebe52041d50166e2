#pragma once

#include "verify.hpp"

#include <json.hpp>

#include <variant>

namespace ballbody {

using Json = nlohmann::ordered_json;

// Derived numbers leave the program with 12 significant digits; body payloads keep full precision.
inline double round12(double v)
{
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline Json json_vector(const Vector& v, bool exact = false)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(exact ? v[i] : round12(v[i]));
    return a;
}

inline Json json_p2(const P2& p) { return Json::array({round12(p.x()), round12(p.y())}); }

namespace io_detail {

inline Vector read_vector(const Json& j, int n, const char* what)
{
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw std::invalid_argument(std::string(what) + ": expected an array of " + std::to_string(n) + " numbers");
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_number()) throw std::invalid_argument(std::string(what) + ": non-numeric coordinate");
        v[i] = j[i].get<double>();
    }
    if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
    return v;
}

inline const Json& field(const Json& j, const char* key)
{
    if (!j.contains(key)) throw std::invalid_argument(std::string("body JSON: missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace io_detail

// Body file: {"dim": n, "kind": ..., payload}.
//   ball_intersection: "centers": [[...]], "radii": [...]
//   point_cloud:       "points": [[...]]  (stands for the set A; as a body it means conv_c(A))
//   support_samples:   "grid_size": m or "directions": [[...]], "values": [...], optional "provenance"
//   arc_polygon:       "vertices", "centers", "radii" (planar, arc i runs from vertex i to i+1),
//                      or "disk_center", "disk_radius"
struct BallIntersectionSpec {
    std::vector<ClosedBall> balls;
};
struct PointCloudSpec {
    PointSet points;
};

class BodyFile {
public:
    using Payload = std::variant<BallIntersectionSpec, PointCloudSpec, SupportSampledBody, ArcPolygon>;

    BodyFile(int dim, Payload payload) : dim_(dim), payload_(std::move(payload)) {}

    int dim() const { return dim_; }
    const Payload& payload() const { return payload_; }
    std::string kind() const
    {
        switch (payload_.index()) {
        case 0: return "ball_intersection";
        case 1: return "point_cloud";
        case 2: return "support_samples";
        default: return "arc_polygon";
        }
    }
    const BallIntersectionSpec* balls() const { return std::get_if<BallIntersectionSpec>(&payload_); }
    const PointCloudSpec* cloud() const { return std::get_if<PointCloudSpec>(&payload_); }
    const SupportSampledBody* samples() const { return std::get_if<SupportSampledBody>(&payload_); }
    const ArcPolygon* arcs() const { return std::get_if<ArcPolygon>(&payload_); }

    static BodyFile ball_intersection(std::vector<ClosedBall> balls)
    {
        require(!balls.empty(), "ball_intersection: no balls");
        const int n = balls[0].dim();
        return BodyFile(n, BallIntersectionSpec{std::move(balls)});
    }
    static BodyFile point_cloud(PointSet pts)
    {
        require(!pts.empty(), "point_cloud: no points");
        const int n = static_cast<int>(pts[0].size());
        return BodyFile(n, PointCloudSpec{std::move(pts)});
    }
    static BodyFile support_samples(SupportSampledBody K)
    {
        const int n = K.dim();
        return BodyFile(n, std::move(K));
    }
    // Unit-radius arc polygons are the intersection of their arc disks; others keep their arcs.
    static BodyFile from_arc_polygon(const ArcPolygon& P)
    {
        if (P.is_disk()) return ball_intersection({{planar_detail::from2(P.disk_center()), P.disk_radius()}});
        std::vector<ClosedBall> balls;
        for (const auto& a : P.merged_arcs()) {
            if (a.radius != 1.0) return BodyFile(2, P);
            balls.emplace_back(planar_detail::from2(a.center), 1.0);
        }
        return ball_intersection(std::move(balls));
    }

    // Exact planar representation; support samples have none.
    ArcPolygon arc_polygon() const
    {
        require(dim_ == 2, "arc_polygon: body is not planar");
        if (const auto* b = balls()) {
            std::vector<P2> c;
            std::vector<double> r;
            for (const auto& ball : b->balls) {
                c.push_back(planar_detail::to2(ball.center));
                r.push_back(ball.radius);
            }
            const auto P = intersect_disks(c, r);
            if (!P) throw EmptyBodyError("ball intersection is empty");
            return *P;
        }
        if (const auto* p = cloud()) return spindle_hull(to_points2(p->points));
        if (const auto* a = arcs()) return *a;
        throw std::invalid_argument("support samples have no exact planar form");
    }

    // The body as support samples on grid g (or its own grid).
    SupportSampledBody sampled(std::shared_ptr<const DirectionGrid> g) const
    {
        if (const auto* s = samples()) {
            require(!g || g->size() == s->size(), "support samples: grid size differs from the file");
            return *s;
        }
        if (dim_ == 2) return verify_detail::planar_samples(arc_polygon(), g);
        if (const auto* b = balls()) return sample_support(BallIntersectionBody(b->balls), g);
        // conv_c(A) = (A^c)^c
        return c_dual(sample_support(BallIntersectionBody::c_dual_of_points(cloud()->points), g));
    }

private:
    int dim_;
    Payload payload_;
};

inline Json to_json(const BodyFile& B)
{
    Json j;
    j["dim"] = B.dim();
    j["kind"] = B.kind();
    if (const auto* b = B.balls()) {
        Json c = Json::array(), r = Json::array();
        for (const auto& ball : b->balls) {
            c.push_back(json_vector(ball.center, true));
            r.push_back(ball.radius);
        }
        j["centers"] = c;
        j["radii"] = r;
    } else if (const auto* p = B.cloud()) {
        Json a = Json::array();
        for (const auto& x : p->points) a.push_back(json_vector(x, true));
        j["points"] = a;
    } else if (const auto* P = B.arcs()) {
        auto pt = [](const P2& q) { return Json::array({q.x(), q.y()}); };
        if (P->is_disk()) {
            j["disk_center"] = pt(P->disk_center());
            j["disk_radius"] = P->disk_radius();
        } else {
            Json v = Json::array(), c = Json::array();
            for (const auto& q : P->vertices()) v.push_back(pt(q));
            for (const auto& q : P->centers()) c.push_back(pt(q));
            j["vertices"] = v;
            j["centers"] = c;
            j["radii"] = P->radii();
        }
    } else {
        const auto& K = *B.samples();
        // Standard grids are stored by size and rebuilt bit-for-bit.
        const auto std_grid = make_grid(K.dim(), K.size());
        if (std_grid->matrix() == K.grid().matrix()) {
            j["grid_size"] = K.size();
        } else {
            Json d = Json::array();
            for (int i = 0; i < K.size(); ++i) d.push_back(json_vector(K.grid()[i], true));
            j["directions"] = d;
        }
        j["values"] = json_vector(K.values(), true);
        j["provenance"] = to_string(K.provenance());
    }
    return j;
}

inline BodyFile body_from_json(const Json& j)
{
    using namespace io_detail;
    if (!j.is_object()) throw std::invalid_argument("body JSON: expected an object");
    const Json& dj = field(j, "dim");
    if (!dj.is_number_integer() || dj.get<int>() < 1) throw std::invalid_argument("body JSON: dim must be a positive integer");
    const int n = dj.get<int>();
    const Json& kj = field(j, "kind");
    if (!kj.is_string()) throw std::invalid_argument("body JSON: kind must be a string");
    const std::string kind = kj.get<std::string>();
    if (kind == "ball_intersection") {
        const Json &c = field(j, "centers"), &r = field(j, "radii");
        if (!c.is_array() || !r.is_array() || c.size() != r.size() || c.empty())
            throw std::invalid_argument("body JSON: centers and radii must be non-empty arrays of equal length");
        std::vector<ClosedBall> balls;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!r[i].is_number() || !(r[i].get<double>() >= 0.0)) throw std::invalid_argument("body JSON: radius must be >= 0");
            balls.emplace_back(read_vector(c[i], n, "centers"), r[i].get<double>());
        }
        return BodyFile::ball_intersection(std::move(balls));
    }
    if (kind == "point_cloud") {
        const Json& p = field(j, "points");
        if (!p.is_array() || p.empty()) throw std::invalid_argument("body JSON: points must be a non-empty array");
        PointSet A;
        for (const auto& x : p) A.push_back(read_vector(x, n, "points"));
        return BodyFile::point_cloud(std::move(A));
    }
    if (kind == "support_samples") {
        std::shared_ptr<const DirectionGrid> g;
        if (j.contains("grid_size")) {
            if (!j["grid_size"].is_number_integer() || j["grid_size"].get<int>() < 2)
                throw std::invalid_argument("body JSON: grid_size must be an integer >= 2");
            g = make_grid(n, j["grid_size"].get<int>());
        } else {
            const Json& d = field(j, "directions");
            if (!d.is_array() || d.empty()) throw std::invalid_argument("body JSON: directions must be a non-empty array");
            Matrix M(d.size(), n);
            double mesh = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                const Vector u = read_vector(d[i], n, "directions");
                if (u.norm() == 0.0) throw std::invalid_argument("body JSON: zero direction");
                M.row(i) = u.normalized().transpose();
            }
            // Covering radius estimated from nearest neighbours.
            for (Eigen::Index i = 0; i < M.rows(); ++i) {
                double best = kPi;
                for (Eigen::Index k = 0; k < M.rows(); ++k)
                    if (k != i) best = std::min(best, std::acos(std::clamp(M.row(i).dot(M.row(k)), -1.0, 1.0)));
                mesh = std::max(mesh, best);
            }
            g = std::make_shared<const DirectionGrid>(M, mesh);
        }
        const Json& v = field(j, "values");
        if (!v.is_array() || static_cast<int>(v.size()) != g->size())
            throw std::invalid_argument("body JSON: values must have one entry per direction");
        Vector h(g->size());
        for (int i = 0; i < g->size(); ++i) {
            if (!v[i].is_number()) throw std::invalid_argument("body JSON: non-numeric support value");
            h[i] = v[i].get<double>();
        }
        const Provenance prov = j.contains("provenance") ? provenance_from_string(j["provenance"].get<std::string>()) : Provenance::imported;
        return BodyFile::support_samples(SupportSampledBody(g, h, prov));
    }
    if (kind == "arc_polygon") {
        if (n != 2) throw std::invalid_argument("body JSON: arc_polygon needs dim 2");
        if (j.contains("disk_center")) {
            const Json& r = field(j, "disk_radius");
            if (!r.is_number() || !(r.get<double>() >= 0.0)) throw std::invalid_argument("body JSON: disk_radius must be >= 0");
            return BodyFile(2, ArcPolygon::disk(planar_detail::to2(read_vector(j["disk_center"], 2, "disk_center")), r.get<double>()));
        }
        const Json &v = field(j, "vertices"), &c = field(j, "centers"), &r = field(j, "radii");
        if (!v.is_array() || !c.is_array() || !r.is_array() || v.size() != c.size() || v.size() != r.size())
            throw std::invalid_argument("body JSON: vertices, centers and radii must have equal length");
        std::vector<P2> vv, cc;
        std::vector<double> rr;
        for (std::size_t i = 0; i < v.size(); ++i) {
            vv.push_back(planar_detail::to2(read_vector(v[i], 2, "vertices")));
            cc.push_back(planar_detail::to2(read_vector(c[i], 2, "centers")));
            if (!r[i].is_number()) throw std::invalid_argument("body JSON: non-numeric radius");
            rr.push_back(r[i].get<double>());
        }
        return BodyFile(2, ArcPolygon(vv, cc, rr));
    }
    throw std::invalid_argument("body JSON: unknown kind \"" + kind + "\"");
}

inline Json to_json(const VerificationReport& r)
{
    Json j;
    j["tag"] = r.tag;
    j["pass"] = r.pass;
    j["report_only"] = r.report_only;
    j["instances"] = r.instances;
    j["worst_margin"] = round12(r.worst_margin);
    j["tolerance"] = round12(r.tolerance);
    j["seed"] = r.seed;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json to_json(const CounterexampleReport& r)
{
    Json j;
    j["parameters"] = {{"x0", r.x0}, {"y0", r.y0}, {"z0", r.z0}, {"x", r.x}, {"y", r.y}};
    j["values"] = {{"f_u", round12(r.f_u)}, {"minus_f_d", round12(r.minus_f_d)}, {"g_u", round12(r.g_u)}, {"minus_g_d", round12(r.minus_g_d)}};
    j["gradients"] = {{"f_u", json_p2(r.grad_f_u)}, {"g_d", json_p2(r.grad_g_d)}, {"h", json_p2(r.grad_h)}};
    j["psi"] = {{"h", round12(r.psi_h)}, {"f_u", round12(r.psi_f_u)}, {"g_d", round12(r.psi_g_d)}, {"mean", round12(r.psi_mean)}};
    j["reference"] = {{"grad_f_u", Json::array({-1.2995, -0.8996})}, {"grad_g_d", Json::array({-0.6997, -5.0948})},
                    {"psi_at_0.9996_2.9972", 6.313}, {"psi_f_u", 4.251}, {"psi_g_d", 7.658}, {"psi_mean", 5.9545}};
    j["psi_at_reference_gradient"] = round12(detail::psi(P2(0.9996, 2.9972)));
    j["kappa_h"] = round12(r.kappa_h);
    j["kappa_h_hessian"] = round12(r.kappa_h_hessian);
    j["fiber_nonempty"] = r.fiber_nonempty;
    j["scan"] = {{"min_curvature", round12(r.scan_min_curvature)}, {"point", json_p2(r.scan_point)},
                 {"top_is_f_u", r.scan_top_is_f_u}, {"bottom_is_minus_g_d", r.scan_bottom_is_minus_g_d}};
    j["certified_not_in_S3"] = r.kappa_h < 1.0 || r.scan_min_curvature < 1.0;
    return j;
}

}  // namespace ballbody
