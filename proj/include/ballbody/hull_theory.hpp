#pragma once

#include "body.hpp"
#include "lens.hpp"
#include "planar.hpp"

#include <queue>

namespace ballbody {

// ---------------------------------------------------------------------------
// c-extremal points

enum class Extremality { extremal, non_extremal };

inline const char* to_string(Extremality e) { return e == Extremality::extremal ? "extremal" : "non-extremal"; }

struct ExtremalityCertificate {
    P2 point;
    Extremality status = Extremality::extremal;
    // Non-extremal: an open unit arc through the point, inside the body.
    P2 arc_center = P2::Zero(), arc_start = P2::Zero(), arc_end = P2::Zero();
    // Extremal: outer normal spanning an extremal ray of the normal cone.
    P2 normal = P2::Zero();
};

struct ExtremalSet {
    std::vector<P2> points;            // isolated extremal points (corners)
    std::vector<std::size_t> arcs;     // merged-arc indices with radius < 1: every point is extremal
    bool whole_boundary = false;       // disk of radius < 1, or a single point
};

inline ExtremalSet extremal_points_2d(const ArcPolygon& P)
{
    ExtremalSet E;
    if (P.is_disk()) {
        if (P.disk_radius() < 1.0) {
            E.whole_boundary = true;
            if (P.is_point()) E.points.push_back(P.disk_center());
        }
        return E;
    }
    const auto arcs = P.merged_arcs();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        E.points.push_back(arcs[i].start);
        if (arcs[i].radius < 1.0 - 1e-12) E.arcs.push_back(i);
    }
    return E;
}

// Certificate for a point of P. Interior points are non-extremal.
inline ExtremalityCertificate certify_extremality(const ArcPolygon& P, const P2& x, double eps = 1e-9)
{
    using namespace planar_detail;
    require(P.contains(x, eps), "certify_extremality: point is not in the body");
    ExtremalityCertificate c;
    c.point = x;
    auto interior_arc = [&](const P2& q) {
        // A short unit arc through q curving around q - e2, small enough to stay inside.
        const double r = std::max(P.margin(q), 0.0);
        const double a = std::min(0.5, r);
        c.status = Extremality::non_extremal;
        c.arc_center = q - P2(0, 1);
        c.arc_start = c.arc_center + P2(-std::sin(a), std::cos(a));
        c.arc_end = c.arc_center + P2(std::sin(a), std::cos(a));
    };
    if (P.is_disk()) {
        if (P.disk_radius() >= 1.0 && P.margin(x) <= eps) {
            // On the unit circle: any short arc around x.
            const P2 n = (x - P.disk_center()).normalized();
            c.status = Extremality::non_extremal;
            c.arc_center = P.disk_center();
            c.arc_start = c.arc_center + P2(n.x() * std::cos(0.1) - n.y() * std::sin(0.1), n.x() * std::sin(0.1) + n.y() * std::cos(0.1));
            c.arc_end = c.arc_center + P2(n.x() * std::cos(0.1) + n.y() * std::sin(0.1), -n.x() * std::sin(0.1) + n.y() * std::cos(0.1));
            return c;
        }
        if (P.margin(x) > eps) {
            interior_arc(x);
            return c;
        }
        c.status = Extremality::extremal;
        c.normal = P.is_point() ? P2(1, 0) : P2((x - P.disk_center()).normalized());
        return c;
    }
    if (P.margin(x) > eps) {
        interior_arc(x);
        return c;
    }
    const auto arcs = P.merged_arcs();
    for (const auto& a : arcs) {
        if ((x - a.start).norm() <= eps) {
            c.status = Extremality::extremal;
            c.normal = (x - a.center).normalized();
            return c;
        }
    }
    for (const auto& a : arcs) {
        if (std::abs((x - a.center).norm() - a.radius) > eps) continue;
        const double a0 = angle_of(a.start - a.center);
        const double ax = wrap(angle_of(x - a.center) - a0);
        if (ax > a.angle) continue;
        if (a.radius < 1.0 - 1e-12) {
            c.status = Extremality::extremal;
            c.normal = (x - a.center).normalized();
        } else {
            c.status = Extremality::non_extremal;
            c.arc_center = a.center;
            c.arc_start = a.start;
            c.arc_end = a.end;
        }
        return c;
    }
    throw GeometryError("certify_extremality: boundary point not located on any arc");
}

// ---------------------------------------------------------------------------
// Caratheodory-type decompositions

struct CaratheodoryResult {
    bool inside = false;
    PointSet subset;
    std::vector<std::size_t> indices;
    bool on_boundary = false;
    double recheck_margin = 0.0;  // margin of x in conv_c(subset)
    Vector separation_center;     // when outside: B(center, 1) contains A but not x
};

namespace detail {

inline std::size_t index_of(const PointSet& A, const Vector& p, double tol = 1e-12)
{
    for (std::size_t i = 0; i < A.size(); ++i)
        if ((A[i] - p).norm() <= tol) return i;
    throw GeometryError("caratheodory: vertex not found among the input points");
}

inline void finish(CaratheodoryResult& r, const PointSet& A, const Vector& x)
{
    std::sort(r.indices.begin(), r.indices.end());
    r.indices.erase(std::unique(r.indices.begin(), r.indices.end()), r.indices.end());
    r.subset.clear();
    for (auto i : r.indices) r.subset.push_back(A[i]);
    r.recheck_margin = CHull(r.subset).margin(x);
}

// The boundary point e of the planar hull H decomposed into at most two vertices.
inline std::vector<P2> planar_boundary_vertices(const ArcPolygon& H, const P2& e, double tol)
{
    using namespace planar_detail;
    const auto arcs = H.merged_arcs();
    for (const auto& a : arcs)
        if ((e - a.start).norm() <= tol) return {a.start};
    double best = std::numeric_limits<double>::infinity();
    std::vector<P2> out;
    for (const auto& a : arcs) {
        const double a0 = angle_of(a.start - a.center);
        const double ax = wrap(angle_of(e - a.center) - a0);
        if (ax > a.angle + 1e-9) continue;
        const double off = std::abs((e - a.center).norm() - a.radius);
        if (off < best) {
            best = off;
            out = {a.start, a.end};
        }
    }
    if (out.empty()) throw GeometryError("caratheodory: exit point not on the hull boundary");
    return out;
}

}  // namespace detail

// Planar construction: extend the unit circle from an extremal vertex through x to
// the boundary, then split the exit point into the two vertices of its arc.
inline CaratheodoryResult caratheodory_decompose_2d(const Vector& x, const PointSet& A, double tol = 1e-9)
{
    using namespace planar_detail;
    require(!A.empty() && A[0].size() == 2, "caratheodory_decompose_2d: need planar points");
    require_dim(x, 2, "caratheodory_decompose_2d");
    CaratheodoryResult r;
    const CHull C(A);
    if (C.margin(x) < -tol) {
        r.separation_center = C.dual().farthest(x).point;
        return r;
    }
    r.inside = true;
    for (std::size_t i = 0; i < A.size(); ++i)
        if ((A[i] - x).norm() <= 1e-15) {
            r.indices = {i};
            detail::finish(r, A, x);
            return r;
        }
    const auto H = spindle_hull(to_points2(A));
    const P2 xp = to2(x);
    if (H.is_disk()) {
        // Two antipodal points: x lies on a unit arc between them.
        std::vector<std::size_t> far;
        for (std::size_t i = 0; i < A.size(); ++i)
            if (std::abs((to2(A[i]) - H.disk_center()).norm() - H.disk_radius()) <= 1e-9) far.push_back(i);
        r.indices = far;
        detail::finish(r, A, x);
        return r;
    }
    if (H.margin(xp) <= tol) {
        r.on_boundary = true;
        for (const auto& v : detail::planar_boundary_vertices(H, xp, tol)) r.indices.push_back(detail::index_of(A, from2(v)));
        detail::finish(r, A, x);
        return r;
    }
    // Interior point: start from a corner.
    const P2 v = H.merged_arcs().front().start;
    const double D = (xp - v).norm();
    const P2 mid = 0.5 * (v + xp), e = (xp - v) / D;
    const P2 center = mid + std::sqrt(std::max(0.0, 1.0 - 0.25 * D * D)) * perp(e);
    const double tv = angle_of(v - center), tx = angle_of(xp - center);
    // Direction of travel from v toward x along the short arc.
    const double sweep = std::remainder(tx - tv, 2.0 * kPi);
    const double dir = sweep >= 0 ? 1.0 : -1.0;
    auto at = [&](double s) { return P2(center + P2(std::cos(tx + dir * s), std::sin(tx + dir * s))); };
    double lo = 0.0, hi = 0.0;
    const double step = 1e-3;
    for (double s = step; s <= kPi; s += step) {
        if (H.margin(at(s)) < 0) {
            hi = s;
            break;
        }
        lo = s;
    }
    if (hi == 0.0) throw GeometryError("caratheodory_decompose_2d: arc never leaves the hull");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double m = 0.5 * (lo + hi);
        (H.margin(at(m)) >= 0 ? lo : hi) = m;
    }
    const P2 exit = at(lo);
    r.indices.push_back(detail::index_of(A, from2(v)));
    for (const auto& w : detail::planar_boundary_vertices(H, exit, 1e-9)) r.indices.push_back(detail::index_of(A, from2(w)));
    detail::finish(r, A, x);
    return r;
}

// General dimension: search subsets of the boundary points of A by increasing size.
inline CaratheodoryResult caratheodory_decompose(const Vector& x, const PointSet& A, double tol = 1e-9,
                                                 std::size_t subset_budget = 200000)
{
    require(!A.empty(), "caratheodory_decompose: empty point set");
    const int n = static_cast<int>(A[0].size());
    require_dim(x, n, "caratheodory_decompose");
    if (n == 2) return caratheodory_decompose_2d(x, A, tol);
    CaratheodoryResult r;
    const CHull C(A);
    if (C.point_meb().radius >= 1.0) throw GeometryError("caratheodory_decompose: out-radius must be below 1");
    if (C.margin(x) < -tol) {
        r.separation_center = C.dual().farthest(x).point;
        return r;
    }
    r.inside = true;
    r.on_boundary = C.margin(x) <= tol;
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < A.size(); ++i)
        if (C.margin(A[i]) <= 1e-9) cand.push_back(i);
    const int kmax = r.on_boundary ? n : n + 1;
    std::size_t tried = 0;
    for (int k = 1; k <= kmax; ++k) {
        std::vector<int> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        if (k > static_cast<int>(cand.size())) break;
        for (;;) {
            if (++tried > subset_budget) throw ConvergenceError("caratheodory_decompose: subset budget exhausted", 0.0);
            PointSet S;
            for (int p : pick) S.push_back(A[cand[p]]);
            if (min_enclosing_ball(S).radius < 1.0 && CHull(S).margin(x) >= -tol) {
                for (int p : pick) r.indices.push_back(cand[p]);
                detail::finish(r, A, x);
                return r;
            }
            int j = k - 1;
            while (j >= 0 && pick[j] == static_cast<int>(cand.size()) - k + j) --j;
            if (j < 0) break;
            ++pick[j];
            for (int t = j + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    throw GeometryError("caratheodory_decompose: no subset of size <= n+1 contains the point");
}

// ---------------------------------------------------------------------------
// Iterative c-hull A_{j+1} = union of conv_c{x, y} over x, y in A_j

// A point on the boundary of conv_c{a, b}: meridian angle phi, arc parameter t in [-1, 1].
struct LensSample {
    Vector point;
    int a = -1, b = -1;  // indices into the previous round's samples
    double phi = 0.0, t = 0.0;
};

struct IterativeHullOptions {
    int meridians = 12;      // per lens in n >= 3 (two arcs in the plane)
    int arc_steps = 16;      // samples along each meridian arc
    int boundary_probes = 256;
    int interior_probes = 256;
    int refine_pairs = 4;    // best pairs kept per probe
    int max_check_pairs = 2000;
    std::uint64_t seed = 0;
};

struct IterativeHullReport {
    int n = 0;
    std::vector<double> hausdorff;      // round j -> max over probes of dist(probe, A_j)
    std::vector<double> max_outside;    // round j -> max over samples of -margin in conv_c(A)
    std::vector<std::size_t> samples;   // round j -> samples carried into round j + 1
    bool threshold_met(int j) const { return (1 << j) > n; }
};

namespace detail {

inline Vector lens_point(const Vector& a, const Vector& b, const Matrix& W, double phi, double t)
{
    const Vector m = 0.5 * (a + b);
    const double D = (b - a).norm();
    if (D == 0.0) return a;
    const double d = 0.5 * D, c = std::sqrt(std::max(0.0, 1.0 - d * d));
    const Vector e = (b - a) / D;
    Vector w = std::cos(phi) * W.col(0);
    if (W.cols() > 1) w += std::sin(phi) * W.col(1);
    w.normalize();
    const double alpha = t * std::asin(std::min(1.0, d));
    return m - c * w + std::sin(alpha) * e + std::cos(alpha) * w;
}

// Two orthonormal directions perpendicular to b - a (one in the plane).
inline Matrix meridian_frame(const Vector& a, const Vector& b)
{
    const int n = static_cast<int>(a.size());
    Vector e = b - a;
    if (e.norm() == 0.0) e = unit(n, 0);
    const Matrix Q = orthogonal_complement(e.normalized());
    return Q.leftCols(std::min<int>(2, static_cast<int>(Q.cols())));
}

inline std::vector<LensSample> sample_lenses(const PointSet& S, const IterativeHullOptions& opt)
{
    std::vector<LensSample> out;
    const int n = S.empty() ? 0 : static_cast<int>(S[0].size());
    for (std::size_t i = 0; i < S.size(); ++i) {
        out.push_back({S[i], static_cast<int>(i), static_cast<int>(i), 0.0, 1.0});
        for (std::size_t j = i + 1; j < S.size(); ++j) {
            if ((S[i] - S[j]).norm() < 1e-14) continue;
            const Matrix W = meridian_frame(S[i], S[j]);
            const int mer = n == 2 ? 2 : opt.meridians;
            for (int k = 0; k < mer; ++k) {
                const double phi = 2.0 * kPi * k / mer;
                for (int s = 1; s < opt.arc_steps; ++s) {
                    const double t = -1.0 + 2.0 * s / opt.arc_steps;
                    out.push_back({lens_point(S[i], S[j], W, phi, t), static_cast<int>(i), static_cast<int>(j), phi, t});
                }
            }
        }
    }
    return out;
}

}  // namespace detail

inline IterativeHullReport iterative_c_hull(const PointSet& A, int rounds, const IterativeHullOptions& opt = {})
{
    require(!A.empty(), "iterative_c_hull: empty point set");
    require(rounds >= 1, "iterative_c_hull: need at least one round");
    const int n = static_cast<int>(A[0].size());
    const CHull C(A);
    if (C.point_meb().radius >= 1.0) throw GeometryError("iterative_c_hull: out-radius must be below 1");
    IterativeHullReport rep;
    rep.n = n;

    // Probes: boundary support points of conv_c(A) and interior points.
    SeededRng rng(opt.seed, 11);
    PointSet probes;
    const auto grid = make_grid(n, std::max(8, opt.boundary_probes - opt.boundary_probes % 2));
    for (int i = 0; i < grid->size(); ++i) {
        const Vector u = (*grid)[i];
        probes.push_back(C.dual().support(-u).point + u);
    }
    const auto& meb = C.point_meb();
    for (int k = 0, tries = 0; k < opt.interior_probes && tries < 100 * opt.interior_probes; ++tries) {
        const Vector y = meb.center + rng.in_ball(n, meb.radius);
        if (C.contains(y)) {
            probes.push_back(y);
            ++k;
        }
    }

    PointSet prev = A;  // samples of A_{j-1}
    for (int j = 1; j <= rounds; ++j) {
        // Distance of each probe to A_j = union of lenses over pairs of prev.
        std::vector<Vector> mids;
        std::vector<double> halves;
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t a = 0; a < prev.size(); ++a)
            for (std::size_t b = a; b < prev.size(); ++b) {
                mids.push_back(0.5 * (prev[a] + prev[b]));
                halves.push_back(0.5 * (prev[a] - prev[b]).norm());
                pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
        double worst = 0.0;
        for (const auto& y : probes) {
            // Keep the best few pairs; the lens lies in B(m, d) so |y - m| - d bounds the distance below.
            using Entry = std::pair<double, std::size_t>;
            std::priority_queue<Entry> best;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                const double lb = (y - mids[p]).norm() - halves[p];
                if (static_cast<int>(best.size()) == opt.refine_pairs && lb >= best.top().first) continue;
                const double d = lens_distance(y, prev[pairs[p].first], prev[pairs[p].second]);
                if (static_cast<int>(best.size()) < opt.refine_pairs)
                    best.emplace(d, p);
                else if (d < best.top().first) {
                    best.pop();
                    best.emplace(d, p);
                }
                if (d == 0.0) break;
            }
            double dist = std::numeric_limits<double>::infinity();
            while (!best.empty()) {
                dist = std::min(dist, best.top().first);
                best.pop();
            }
            worst = std::max(worst, dist);
        }
        rep.hausdorff.push_back(worst);

        // Containment of A_j, checked on the lenses of up to max_check_pairs random pairs.
        const std::size_t total = pairs.size();
        const std::size_t take = std::min<std::size_t>(total, static_cast<std::size_t>(opt.max_check_pairs));
        double outside = 0.0;
        for (std::size_t k = 0; k < take; ++k) {
            const auto& pq = pairs[take == total ? k : static_cast<std::size_t>(rng.uniform(0.0, 1.0) * total) % total];
            const auto lens = detail::sample_lenses({prev[pq.first], prev[pq.second]}, opt);
            for (const auto& s : lens) outside = std::max(outside, -C.margin(s.point));
        }
        rep.max_outside.push_back(outside);
        if (j < rounds) {
            const auto samples = detail::sample_lenses(prev, opt);
            prev.clear();
            for (const auto& s : samples) prev.push_back(s.point);
        }
        rep.samples.push_back(prev.size());
    }
    return rep;
}

}  // namespace ballbody
