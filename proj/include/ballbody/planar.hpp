#pragma once

#include "core.hpp"
#include "lens.hpp"
#include "meb.hpp"

#include <iomanip>
#include <optional>
#include <sstream>

namespace ballbody {

using P2 = Eigen::Vector2d;

namespace planar_detail {

inline double angle_of(const P2& v) { return std::atan2(v.y(), v.x()); }

// Angle in [0, 2pi).
inline double wrap(double a)
{
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0) a += 2.0 * kPi;
    return a;
}

inline double cross(const P2& a, const P2& b) { return a.x() * b.y() - a.y() * b.x(); }
inline P2 perp(const P2& a) { return {-a.y(), a.x()}; }
inline P2 to2(const Vector& v)
{
    require(v.size() == 2, "planar: expected a 2-D point");
    return {v[0], v[1]};
}
inline Vector from2(const P2& p) { return vec({p.x(), p.y()}); }

}  // namespace planar_detail

// Convex planar region bounded by circular arcs. Arc i runs counterclockwise from
// vertex i to vertex i+1 around centers[i] with radius radii[i]. With no vertices
// the region is the disk (disk_center, disk_radius); radius 0 is a single point.
class ArcPolygon {
public:
    static ArcPolygon disk(const P2& c, double r)
    {
        require(r >= 0.0, "ArcPolygon::disk: negative radius");
        ArcPolygon P;
        P.disk_center_ = c;
        P.disk_radius_ = r;
        return P;
    }
    static ArcPolygon point(const P2& p) { return disk(p, 0.0); }

    ArcPolygon(std::vector<P2> vertices, std::vector<P2> centers, std::vector<double> radii)
        : vertices_(std::move(vertices)), centers_(std::move(centers)), radii_(std::move(radii))
    {
        require(vertices_.size() >= 2, "ArcPolygon: need at least two vertices");
        require(centers_.size() == vertices_.size() && radii_.size() == vertices_.size(),
                "ArcPolygon: one center and radius per arc");
        split_long_arcs();
        canonicalize();
        validate();
    }

    bool is_disk() const { return vertices_.empty(); }
    bool is_point() const { return is_disk() && disk_radius_ == 0.0; }
    const P2& disk_center() const { return disk_center_; }
    double disk_radius() const { return disk_radius_; }

    std::size_t size() const { return vertices_.size(); }
    const std::vector<P2>& vertices() const { return vertices_; }
    const std::vector<P2>& centers() const { return centers_; }
    const std::vector<double>& radii() const { return radii_; }
    const P2& vertex(std::size_t i) const { return vertices_[i % size()]; }

    // Angle subtended by arc i.
    double arc_angle(std::size_t i) const
    {
        const P2& c = centers_[i];
        const double a0 = planar_detail::angle_of(vertex(i) - c), a1 = planar_detail::angle_of(vertex(i + 1) - c);
        return planar_detail::wrap(a1 - a0);
    }

    bool all_unit() const
    {
        if (is_disk()) return disk_radius_ == 1.0;
        return std::all_of(radii_.begin(), radii_.end(), [](double r) { return std::abs(r - 1.0) <= 1e-12; });
    }

    // A vertex is a corner unless both adjacent arcs lie on the same circle.
    bool is_corner(std::size_t i) const
    {
        const std::size_t prev = (i + size() - 1) % size();
        return (centers_[prev] - centers_[i]).norm() > 1e-9 || std::abs(radii_[prev] - radii_[i]) > 1e-12;
    }

    std::vector<std::size_t> corners() const
    {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i < size(); ++i)
            if (is_corner(i)) c.push_back(i);
        return c;
    }

    // One arc per circle piece: consecutive arcs on the same circle are merged.
    struct MergedArc {
        P2 start, end, center;
        double radius, angle;
    };
    std::vector<MergedArc> merged_arcs() const
    {
        std::vector<MergedArc> out;
        const auto cs = corners();
        if (cs.empty()) return out;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const std::size_t i = cs[k], j = cs[(k + 1) % cs.size()];
            double ang = 0.0;
            std::size_t t = i;
            do {
                ang += arc_angle(t);
                t = (t + 1) % size();
            } while (t != j);
            if (cs.size() == 1) ang = 2.0 * kPi;
            out.push_back({vertices_[i], vertices_[j], centers_[i], radii_[i], ang});
        }
        return out;
    }

    double area() const
    {
        if (is_disk()) return kPi * disk_radius_ * disk_radius_;
        double a = 0.0;
        for (std::size_t i = 0; i < size(); ++i) {
            a += 0.5 * planar_detail::cross(vertex(i), vertex(i + 1));
            const double th = arc_angle(i), r = radii_[i];
            a += 0.5 * r * r * (th - std::sin(th));
        }
        return a;
    }

    double perimeter() const
    {
        if (is_disk()) return 2.0 * kPi * disk_radius_;
        double p = 0.0;
        for (std::size_t i = 0; i < size(); ++i) p += radii_[i] * arc_angle(i);
        return p;
    }

    // Exact support function and a point attaining it.
    std::pair<double, P2> support(const P2& u) const
    {
        if (is_disk()) return {disk_center_.dot(u) + disk_radius_ * u.norm(), disk_center_ + disk_radius_ * u.normalized()};
        double best = -std::numeric_limits<double>::infinity();
        P2 arg;
        for (std::size_t i = 0; i < size(); ++i) {
            const double v = vertex(i).dot(u);
            if (v > best) {
                best = v;
                arg = vertex(i);
            }
            const P2& c = centers_[i];
            const double a0 = planar_detail::angle_of(vertex(i) - c);
            const double au = planar_detail::wrap(planar_detail::angle_of(u) - a0);
            if (au <= arc_angle(i)) {
                const double val = c.dot(u) + radii_[i] * u.norm();
                if (val > best) {
                    best = val;
                    arg = c + radii_[i] * u.normalized();
                }
            }
        }
        return {best, arg};
    }
    double support_value(const P2& u) const { return support(u).first; }

    // Sign-correct membership margin: positive inside, negative outside.
    double margin(const P2& x) const
    {
        if (is_disk()) return disk_radius_ - (x - disk_center_).norm();
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < size(); ++i) {
            const P2 a = vertex(i), b = vertex(i + 1);
            const double len = (b - a).norm();
            const double left = len > 0 ? planar_detail::cross(b - a, x - a) / len : 0.0;
            const double in_disk = radii_[i] - (x - centers_[i]).norm();
            m = std::min(m, std::max(left, in_disk));
        }
        return m;
    }
    bool contains(const P2& x, double eps = 1e-12) const { return margin(x) >= -eps; }

    // Boundary sample with outward unit normals.
    std::vector<std::pair<P2, P2>> boundary_samples(int per_arc) const
    {
        std::vector<std::pair<P2, P2>> out;
        if (is_disk()) {
            for (int k = 0; k < per_arc; ++k) {
                const double a = 2.0 * kPi * k / per_arc;
                const P2 u(std::cos(a), std::sin(a));
                out.emplace_back(disk_center_ + disk_radius_ * u, u);
            }
            return out;
        }
        for (std::size_t i = 0; i < size(); ++i) {
            const P2& c = centers_[i];
            const double a0 = planar_detail::angle_of(vertex(i) - c), th = arc_angle(i);
            for (int k = 0; k < per_arc; ++k) {
                const double a = a0 + th * k / per_arc;
                const P2 u(std::cos(a), std::sin(a));
                out.emplace_back(c + radii_[i] * u, u);
            }
        }
        return out;
    }

    P2 centroid_of_vertices() const
    {
        if (is_disk()) return disk_center_;
        P2 s = P2::Zero();
        for (const auto& v : vertices_) s += v;
        return s / static_cast<double>(size());
    }

private:
    ArcPolygon() = default;

    void split_long_arcs()
    {
        std::vector<P2> v, c;
        std::vector<double> r;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            const P2& ci = centers_[i];
            const P2& vi = vertices_[i];
            const P2& vj = vertices_[(i + 1) % vertices_.size()];
            const double a0 = planar_detail::angle_of(vi - ci);
            double th = planar_detail::wrap(planar_detail::angle_of(vj - ci) - a0);
            if (th == 0.0 && vertices_.size() == 1) th = 2.0 * kPi;
            const int pieces = std::max(1, static_cast<int>(std::ceil(th / (kPi - 1e-3))));
            for (int k = 0; k < pieces; ++k) {
                const double a = a0 + th * k / pieces;
                v.push_back(k == 0 ? vi : P2(ci + radii_[i] * P2(std::cos(a), std::sin(a))));
                c.push_back(ci);
                r.push_back(radii_[i]);
            }
        }
        vertices_ = std::move(v);
        centers_ = std::move(c);
        radii_ = std::move(r);
    }

    // Start from the lexicographically smallest vertex.
    void canonicalize()
    {
        std::size_t s = 0;
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            const P2 &a = vertices_[i], &b = vertices_[s];
            if (a.x() < b.x() - 1e-12 || (std::abs(a.x() - b.x()) <= 1e-12 && a.y() < b.y())) s = i;
        }
        std::rotate(vertices_.begin(), vertices_.begin() + s, vertices_.end());
        std::rotate(centers_.begin(), centers_.begin() + s, centers_.end());
        std::rotate(radii_.begin(), radii_.begin() + s, radii_.end());
    }

    void validate() const
    {
        for (std::size_t i = 0; i < size(); ++i) {
            require(radii_[i] > 0.0 && radii_[i] <= 1.0 + 1e-12, "ArcPolygon: arc radius must lie in (0, 1]");
            require(std::abs((vertex(i) - centers_[i]).norm() - radii_[i]) <= 1e-9 &&
                        std::abs((vertex(i + 1) - centers_[i]).norm() - radii_[i]) <= 1e-9,
                    "ArcPolygon: vertex not on its arc circle");
            // Exterior angle at vertex i+1 must be nonnegative.
            const std::size_t j = (i + 1) % size();
            const P2 t_in = planar_detail::perp(vertex(j) - centers_[i]) / radii_[i];
            const P2 t_out = planar_detail::perp(vertex(j) - centers_[j]) / radii_[j];
            require(planar_detail::cross(t_in, t_out) >= -1e-9 || t_in.dot(t_out) > 1.0 - 1e-9, "ArcPolygon: not convex");
        }
    }

    std::vector<P2> vertices_, centers_;
    std::vector<double> radii_;
    P2 disk_center_ = P2::Zero();
    double disk_radius_ = 0.0;
};

// Intersection of closed disks; std::nullopt when empty.
inline std::optional<ArcPolygon> intersect_disks(const std::vector<P2>& centers, const std::vector<double>& radii,
                                                 double tol = 1e-10)
{
    using namespace planar_detail;
    require(!centers.empty() && centers.size() == radii.size(), "intersect_disks: one radius per center");
    for (double r : radii) require(r >= 0.0 && r <= 1.0 + 1e-15, "intersect_disks: radius must lie in [0, 1]");

    std::vector<ClosedBall> balls;
    for (std::size_t i = 0; i < centers.size(); ++i) balls.emplace_back(from2(centers[i]), radii[i]);
    const auto mm = ball_intersection_minimax(balls);
    if (mm.value > tol) return std::nullopt;
    const P2 deep = to2(mm.point);
    if (mm.value > -1e-9) return ArcPolygon::point(deep);

    // Drop duplicate disks.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        bool dup = false;
        for (auto j : keep) dup = dup || ((centers[i] - centers[j]).norm() <= 1e-12 && std::abs(radii[i] - radii[j]) <= 1e-12);
        if (!dup) keep.push_back(i);
    }

    struct Piece {
        std::size_t disk;
        double a0, a1;  // counterclockwise from a0 to a1, a1 - a0 in (0, 2pi]
    };
    std::vector<Piece> pieces;
    for (auto i : keep) {
        const P2& ci = centers[i];
        const double ri = radii[i];
        // Kept set on circle i as a list of arcs [a0, a1].
        std::vector<std::pair<double, double>> kept{{0.0, 2.0 * kPi}};
        bool full = true;
        for (auto j : keep) {
            if (j == i || kept.empty()) continue;
            const double d = (centers[j] - ci).norm(), rj = radii[j];
            if (d + ri <= rj + 1e-14) continue;  // circle i inside disk j
            if (d + rj <= ri + 1e-14 || d >= ri + rj) {
                kept.clear();
                break;
            }
            full = false;
            const double phi = angle_of(centers[j] - ci);
            const double alpha = std::acos(std::clamp((ri * ri + d * d - rj * rj) / (2.0 * ri * d), -1.0, 1.0));
            const double s = wrap(phi - alpha), len = 2.0 * alpha;
            std::vector<std::pair<double, double>> next;
            for (auto [a0, a1] : kept) {
                // Intersect [a0, a1] with [s, s + len] and [s - 2pi, s - 2pi + len] and [s + 2pi, ...].
                for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
                    const double b0 = std::max(a0, s + shift), b1 = std::min(a1, s + shift + len);
                    if (b1 - b0 > 1e-13) next.emplace_back(b0, b1);
                }
            }
            kept = std::move(next);
        }
        if (full && !kept.empty()) return ArcPolygon::disk(ci, ri);
        for (auto [a0, a1] : kept) pieces.push_back({i, a0, a1});
    }
    // Merge pieces of the same circle that meet across angle 0.
    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t p = 0; p < pieces.size() && !merged; ++p)
            for (std::size_t q = 0; q < pieces.size() && !merged; ++q) {
                if (p == q || pieces[p].disk != pieces[q].disk) continue;
                if (std::abs(pieces[p].a1 - 2.0 * kPi - pieces[q].a0) <= 1e-12) {
                    pieces[p].a1 = pieces[q].a1 + 2.0 * kPi;
                    pieces.erase(pieces.begin() + static_cast<long>(q));
                    merged = true;
                }
            }
    }
    if (pieces.empty()) return ArcPolygon::point(deep);

    auto point_at = [&](std::size_t disk, double a) { return P2(centers[disk] + radii[disk] * P2(std::cos(a), std::sin(a))); };
    // Order pieces by the angle of their midpoints seen from an interior point.
    std::sort(pieces.begin(), pieces.end(), [&](const Piece& x, const Piece& y) {
        return wrap(angle_of(point_at(x.disk, 0.5 * (x.a0 + x.a1)) - deep)) <
               wrap(angle_of(point_at(y.disk, 0.5 * (y.a0 + y.a1)) - deep));
    });
    std::vector<P2> v, c;
    std::vector<double> r;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& pc = pieces[k];
        const auto& nx = pieces[(k + 1) % pieces.size()];
        const P2 end = point_at(pc.disk, pc.a1), next_start = point_at(nx.disk, nx.a0);
        if ((end - next_start).norm() > 1e-7) throw GeometryError("intersect_disks: boundary arcs do not close up");
        v.push_back(point_at(pc.disk, pc.a0));
        c.push_back(centers[pc.disk]);
        r.push_back(radii[pc.disk]);
    }
    if (v.size() == 1) return ArcPolygon::disk(c[0], r[0]);
    // Weld: snap each vertex so it lies on both adjacent circles.
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::size_t prev = (k + v.size() - 1) % v.size();
        const P2 a = c[prev], b = c[k];
        const double ra = r[prev], rb = r[k];
        const double d = (b - a).norm();
        if (d < 1e-12) continue;
        const double x = (d * d + ra * ra - rb * rb) / (2.0 * d);
        const double h2 = ra * ra - x * x;
        if (h2 < 0) continue;
        const P2 e = (b - a) / d, base = a + x * e;
        const P2 cand1 = base + std::sqrt(h2) * perp(e), cand2 = base - std::sqrt(h2) * perp(e);
        v[k] = (cand1 - v[k]).norm() < (cand2 - v[k]).norm() ? cand1 : cand2;
    }
    return ArcPolygon(v, c, r);
}

inline std::optional<ArcPolygon> intersect_unit_disks(const std::vector<P2>& centers)
{
    return intersect_disks(centers, std::vector<double>(centers.size(), 1.0));
}

// Dual of a body with unit arcs: arc centers and vertices swap roles.
inline ArcPolygon c_dual_planar(const ArcPolygon& P)
{
    if (P.is_disk()) {
        require(P.disk_radius() <= 1.0, "c_dual_planar: disk radius exceeds 1");
        return ArcPolygon::disk(P.disk_center(), 1.0 - P.disk_radius());
    }
    if (!P.all_unit()) throw std::invalid_argument("c_dual_planar: sub-unit arc radius; use grid duality");
    const auto arcs = P.merged_arcs();
    const std::size_t m = arcs.size();
    if (m == 1) return ArcPolygon::point(arcs[0].center);
    std::vector<P2> v, c;
    for (std::size_t i = 0; i < m; ++i) {
        v.push_back(arcs[i].center);
        c.push_back(arcs[(i + 1) % m].start);
    }
    return ArcPolygon(v, c, std::vector<double>(m, 1.0));
}

inline std::vector<P2> to_points2(const PointSet& A)
{
    std::vector<P2> out;
    for (const auto& a : A) out.push_back(planar_detail::to2(a));
    return out;
}

// conv_c(A) = (A^c)^c computed exactly.
inline ArcPolygon spindle_hull(const std::vector<P2>& A)
{
    require(!A.empty(), "spindle_hull: empty point set");
    PointSet pts;
    for (const auto& a : A) pts.push_back(planar_detail::from2(a));
    const auto meb = min_enclosing_ball(pts);
    if (meb.radius > 1.0 + 1e-12) throw GeometryError("spindle_hull: out-radius exceeds 1, the c-hull is the whole plane");
    if (meb.radius <= 1e-15) return ArcPolygon::point(A.front());
    const auto dual = intersect_unit_disks(A);
    if (!dual) throw GeometryError("spindle_hull: empty dual");
    return c_dual_planar(*dual);
}

inline double hausdorff_planar(const ArcPolygon& P, const ArcPolygon& Q, int directions = 4096)
{
    double d = 0.0;
    for (int k = 0; k < directions; ++k) {
        const double a = 2.0 * kPi * k / directions;
        const P2 u(std::cos(a), std::sin(a));
        d = std::max(d, std::abs(P.support_value(u) - Q.support_value(u)));
    }
    return d;
}

inline double mahler_2d(const ArcPolygon& P) { return std::sqrt(P.area()) + std::sqrt(c_dual_planar(P).area()); }

inline ArcPolygon reuleaux_triangle()
{
    const double s = 1.0 / std::sqrt(3.0);
    return spindle_hull({P2(s, 0.0), P2(-0.5 * s, 0.5), P2(-0.5 * s, -0.5)});
}

// Constant-width body built from the quarter disks (R+)^2 n B(0, R) and (R-)^2 n B(0, r)
// with R = 1 - 1/sqrt(2) and r = 1/sqrt(2).
inline ArcPolygon quadrant_constant_width_body()
{
    const double r = 1.0 / std::sqrt(2.0), R = 1.0 - r;
    return ArcPolygon({P2(R, 0), P2(0, R), P2(-r, 0), P2(0, -r)}, {P2(0, 0), P2(0, -r), P2(0, 0), P2(-r, 0)},
                      {R, 1.0, r, 1.0});
}

// Fiber description of a Steiner symmetral in direction u.
struct SteinerFiber {
    double x;       // coordinate along u-perp
    double top;     // f(x)
    double bottom;  // g(x)
    double half;    // h(x) = (f - g)/2
    double dh, d2h;
    double curvature;  // -h'' / (1 + h'^2)^{3/2}
};

struct SampledPlanarBody {
    P2 u, u_perp;
    double x_min = 0.0, x_max = 0.0;
    std::vector<SteinerFiber> fibers;
    double area = 0.0;            // integral of (f - g)
    double riemann_area = 0.0;    // midpoint sum over the fiber table
    double min_curvature = 0.0;

    std::vector<P2> boundary() const
    {
        std::vector<P2> pts;
        for (const auto& f : fibers) pts.push_back(f.x * u_perp + f.half * u);
        for (auto it = fibers.rbegin(); it != fibers.rend(); ++it) pts.push_back(it->x * u_perp - it->half * u);
        return pts;
    }
};

namespace planar_detail {

struct Branch {
    double y, dy, d2y;
};

// Top or bottom of P over abscissa x in the frame (u_perp, u).
inline std::optional<Branch> fiber_end(const ArcPolygon& P, const P2& u, const P2& up, double x, bool top)
{
    std::optional<Branch> best;
    auto consider = [&](double cx, double cy, double rho, double a0, double th) {
        const double dx = x - cx;
        const double s2 = rho * rho - dx * dx;
        if (s2 < 0) return;
        const double s = std::sqrt(s2);
        for (double sign : {1.0, -1.0}) {
            const double y = cy + sign * s;
            // Is this point within the arc? Angle in the rotated frame.
            const double ang = wrap(std::atan2(sign * s, dx) - a0);
            if (ang > th + 1e-12 && th < 2.0 * kPi - 1e-12) continue;
            if (s < 1e-300) continue;
            const Branch b{y, -sign * dx / s, -sign * rho * rho / (s2 * s)};
            if (!best || (top ? b.y > best->y : b.y < best->y)) best = b;
        }
    };
    if (P.is_disk()) {
        const P2& c = P.disk_center();
        consider(c.dot(up), c.dot(u), P.disk_radius(), 0.0, 2.0 * kPi);
        return best;
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
        const P2& c = P.centers()[i];
        const P2 v0 = P.vertex(i) - c;
        const double a0 = std::atan2(v0.dot(u), v0.dot(up));
        consider(c.dot(up), c.dot(u), P.radii()[i], a0, P.arc_angle(i));
    }
    return best;
}

}  // namespace planar_detail

// Steiner symmetral S_u(P) about the line u-perp through the origin, sampled on
// `fibers` uniformly spaced fibers (cell midpoints), with exact fiber ends and
// analytic derivatives of the half-length h.
inline SampledPlanarBody steiner_2d(const ArcPolygon& P, const P2& direction, int fibers = 256)
{
    using namespace planar_detail;
    require(fibers >= 64, "steiner_2d: need at least 64 fibers");
    require(std::abs(direction.norm() - 1.0) <= 1e-9, "steiner_2d: direction is not a unit vector");
    require(P.area() > 0.0, "steiner_2d: body has empty interior");
    SampledPlanarBody S;
    S.u = direction;
    S.u_perp = P2(direction.y(), -direction.x());
    S.x_max = P.support_value(S.u_perp);
    S.x_min = -P.support_value(-S.u_perp);
    const double w = S.x_max - S.x_min;

    auto eval = [&](double x) -> std::optional<SteinerFiber> {
        const auto f = fiber_end(P, S.u, S.u_perp, x, true), g = fiber_end(P, S.u, S.u_perp, x, false);
        if (!f || !g) return std::nullopt;
        SteinerFiber fb{x, f->y, g->y, 0.5 * (f->y - g->y), 0.5 * (f->dy - g->dy), 0.5 * (f->d2y - g->d2y), 0.0};
        fb.curvature = -fb.d2h / std::pow(1.0 + fb.dh * fb.dh, 1.5);
        return fb;
    };

    S.min_curvature = std::numeric_limits<double>::infinity();
    for (int k = 0; k < fibers; ++k) {
        const double x = S.x_min + w * (k + 0.5) / fibers;
        const auto fb = eval(x);
        if (!fb) throw GeometryError("steiner_2d: a fiber misses the body");
        S.fibers.push_back(*fb);
        S.riemann_area += 2.0 * fb->half * w / fibers;
        S.min_curvature = std::min(S.min_curvature, fb->curvature);
    }

    // Area by quadrature between consecutive vertex abscissae; the substitution
    // x = a + (b - a)(1 - cos t)/2 removes square-root behavior at the ends.
    std::vector<double> breaks{S.x_min, S.x_max};
    if (!P.is_disk())
        for (const auto& v : P.vertices()) breaks.push_back(v.dot(S.u_perp));
    std::sort(breaks.begin(), breaks.end());
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double a = std::max(breaks[k], S.x_min), b = std::min(breaks[k + 1], S.x_max);
        if (b - a < 1e-14) continue;
        auto f = [&](double t) {
            const double x = a + 0.5 * (b - a) * (1.0 - std::cos(t));
            const auto fb = eval(std::clamp(x, S.x_min, S.x_max));
            return fb ? 2.0 * fb->half * 0.5 * (b - a) * std::sin(t) : 0.0;
        };
        S.area += adaptive_simpson(f, 0.0, kPi, 1e-13).value;
    }
    return S;
}

struct ShadowRow {
    double t;
    double area;       // +inf when the moved set has out-radius above 1
    double dual_area;  // 0 in that case
};

// F(t) = area(conv_c{p_i + t alpha_i v}) over a t-grid.
inline std::vector<ShadowRow> shadow_system_2d(const std::vector<P2>& points, const std::vector<double>& velocities,
                                               const P2& v, const std::vector<double>& ts)
{
    require(points.size() == velocities.size() && !points.empty(), "shadow_system_2d: one velocity per point");
    std::vector<ShadowRow> rows;
    for (double t : ts) {
        std::vector<P2> moved;
        PointSet pts;
        for (std::size_t i = 0; i < points.size(); ++i) {
            moved.push_back(points[i] + t * velocities[i] * v);
            pts.push_back(planar_detail::from2(moved.back()));
        }
        if (min_enclosing_ball(pts).radius > 1.0) {
            rows.push_back({t, std::numeric_limits<double>::infinity(), 0.0});
            continue;
        }
        const auto hull = spindle_hull(moved);
        rows.push_back({t, hull.area(), c_dual_planar(hull).area()});
    }
    return rows;
}

// SVG output: 200 px per unit, 10 px margin, y axis pointing up in body coordinates.
namespace svg {

struct Frame {
    double minx, maxy, width, height;
    static constexpr double scale = 200.0;
    static constexpr double margin = 10.0;
    double X(double x) const { return margin + scale * (x - minx); }
    double Y(double y) const { return margin + scale * (maxy - y); }
};

inline std::string num(double v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    std::string s = os.str();
    if (s == "-0.000") s = "0.000";
    return s;
}

inline std::string header(const Frame& f)
{
    std::ostringstream os;
    const double W = 2 * Frame::margin + Frame::scale * f.width, H = 2 * Frame::margin + Frame::scale * f.height;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H) << "\" viewBox=\"0 0 "
       << num(W) << " " << num(H) << "\">\n";
    return os.str();
}

inline Frame frame_for(const ArcPolygon& P)
{
    const double maxx = P.support_value(P2(1, 0)), minx = -P.support_value(P2(-1, 0));
    const double maxy = P.support_value(P2(0, 1)), miny = -P.support_value(P2(0, -1));
    return {minx, maxy, maxx - minx, maxy - miny};
}

inline std::string render(const ArcPolygon& P)
{
    const Frame f = frame_for(P);
    std::ostringstream os;
    os << header(f);
    const char* style = "fill=\"none\" stroke=\"black\" stroke-width=\"1\"";
    if (P.is_disk()) {
        const double r = P.is_point() ? 2.0 : Frame::scale * P.disk_radius();
        os << "  <circle cx=\"" << num(f.X(P.disk_center().x())) << "\" cy=\"" << num(f.Y(P.disk_center().y()))
           << "\" r=\"" << num(r) << "\" " << style << "/>\n";
    } else {
        const auto arcs = P.merged_arcs();
        os << "  <path d=\"M " << num(f.X(arcs[0].start.x())) << " " << num(f.Y(arcs[0].start.y()));
        for (const auto& a : arcs) {
            // Counterclockwise in body coordinates is clockwise on screen: sweep flag 1.
            const double rr = Frame::scale * a.radius;
            os << " A " << num(rr) << " " << num(rr) << " 0 " << (a.angle > kPi ? 1 : 0) << " 1 " << num(f.X(a.end.x()))
               << " " << num(f.Y(a.end.y()));
        }
        os << " Z\" " << style << "/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

inline std::string render_polyline(const std::vector<P2>& pts)
{
    require(!pts.empty(), "render_polyline: no points");
    double minx = pts[0].x(), maxx = minx, miny = pts[0].y(), maxy = miny;
    for (const auto& p : pts) {
        minx = std::min(minx, p.x());
        maxx = std::max(maxx, p.x());
        miny = std::min(miny, p.y());
        maxy = std::max(maxy, p.y());
    }
    const Frame f{minx, maxy, maxx - minx, maxy - miny};
    std::ostringstream os;
    os << header(f) << "  <path d=\"M " << num(f.X(pts[0].x())) << " " << num(f.Y(pts[0].y()));
    for (std::size_t i = 1; i < pts.size(); ++i) os << " L " << num(f.X(pts[i].x())) << " " << num(f.Y(pts[i].y()));
    os << " Z\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n</svg>\n";
    return os.str();
}

}  // namespace svg

}  // namespace ballbody
