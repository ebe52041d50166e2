#pragma once

#include "body.hpp"
#include "planar.hpp"

#include <Eigen/Eigenvalues>

namespace ballbody {

// ---------------------------------------------------------------------------
// Constant width

inline double width_deviation(const SupportSampledBody& K)
{
    require(K.grid().symmetric(), "width_deviation: grid is not symmetric");
    double dev = 0.0;
    for (int i = 0; i < K.size(); ++i) dev = std::max(dev, std::abs(K.width(i) - 1.0));
    return dev;
}

struct ConstantWidthBody {
    SupportSampledBody body;
    double deviation = 0.0;

    static ConstantWidthBody certify(SupportSampledBody K, double tol = 1e-9)
    {
        const double dev = width_deviation(K);
        if (dev > tol) throw GeometryError("ConstantWidthBody: width deviates from 1 by " + std::to_string(dev));
        return {std::move(K), dev};
    }
};

// (K + K^c)/2.
inline ConstantWidthBody constant_width_average(const SupportSampledBody& K)
{
    return ConstantWidthBody::certify(minkowski_combine(K, c_dual(K), 0.5));
}

// ---------------------------------------------------------------------------
// Minkowski symmetral M_u K = (K + R_u K)/2

inline SupportSampledBody minkowski_symmetral(const SupportSampledBody& K, const Vector& u, double* max_angle_error = nullptr)
{
    require_dim(u, K.dim(), "minkowski_symmetral");
    require(std::abs(u.norm() - 1.0) <= 1e-9, "minkowski_symmetral: u is not a unit vector");
    const auto& g = K.grid();
    Vector values(g.size());
    Matrix pts;
    if (K.has_points()) pts.resize(g.size(), g.dim());
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const Vector w = reflect(g[i], u);
        int j = g.find(w);
        SupportPoint s;
        if (j >= 0) {
            s = {K.value(j), K.has_points() ? K.point(j) : Vector()};
        } else if (K.has_oracle()) {
            s = K.oracle()(w);
        } else {
            j = g.nearest(w);
            worst = std::max(worst, std::acos(std::clamp(g[j].dot(w), -1.0, 1.0)));
            s = {K.value(j), K.has_points() ? K.point(j) : Vector()};
        }
        values[i] = 0.5 * (K.value(i) + s.value);
        if (K.has_points()) {
            if (s.point.size())
                pts.row(i) = 0.5 * (K.point(i) + reflect(s.point, u)).transpose();
            else
                pts.resize(0, 0);
        }
    }
    if (max_angle_error) *max_angle_error = worst;
    SupportOracle oracle;
    if (K.has_oracle())
        oracle = [inner = K.oracle(), u](const Vector& w) {
            const auto a = inner(w), b = inner(reflect(w, u));
            Vector p;
            if (a.point.size() && b.point.size()) p = 0.5 * (a.point + reflect(b.point, u));
            return SupportPoint{0.5 * (a.value + b.value), p};
        };
    return {K.grid_ptr(), std::move(values), Provenance::combined, std::move(oracle), std::move(pts)};
}

// ---------------------------------------------------------------------------
// Steiner symmetral from a membership predicate

struct SteinerFiberNd {
    Vector x;  // coordinates in the u-perp basis
    double a = 0.0, b = 0.0;
    double half = 0.0;
    bool hit = false;
};

struct SteinerSymmetralNd {
    Vector u;
    Matrix basis;  // n x (n-1), orthonormal basis of u-perp
    Vector origin; // projection of the bounding-ball center onto u-perp
    double spacing = 0.0;
    std::vector<SteinerFiberNd> fibers;
    int empty_fibers = 0;

    Vector point(const Vector& x, double y) const { return origin + basis * x + y * u; }

    double volume() const
    {
        double v = 0.0;
        for (const auto& f : fibers) v += 2.0 * f.half;
        return v * std::pow(spacing, static_cast<double>(basis.cols()));
    }

    // Membership through the fiber whose cell contains the projection of p.
    bool contains(const Vector& p) const
    {
        const Vector rel = p - origin;
        const Vector x = basis.transpose() * rel;
        const double y = rel.dot(u);
        const SteinerFiberNd* best = nullptr;
        double bd = std::numeric_limits<double>::infinity();
        for (const auto& f : fibers) {
            const double d = (f.x - x).cwiseAbs().maxCoeff();
            if (d < bd) {
                bd = d;
                best = &f;
            }
        }
        return best && bd <= 0.5 * spacing + 1e-15 && best->hit && std::abs(y) <= best->half;
    }
};

inline SteinerSymmetralNd steiner_symmetral_nd(const std::function<bool(const Vector&)>& member, const ClosedBall& bound,
                                               const Vector& u, int per_axis, double bisect_tol = 1e-12)
{
    const int n = bound.dim();
    require(n >= 2, "steiner_symmetral_nd: need n >= 2");
    require_dim(u, n, "steiner_symmetral_nd");
    require(std::abs(u.norm() - 1.0) <= 1e-9, "steiner_symmetral_nd: u is not a unit vector");
    require(per_axis >= 2, "steiner_symmetral_nd: need at least two fibers per axis");
    SteinerSymmetralNd S;
    S.u = u;
    S.basis = orthogonal_complement(u);
    const double R = bound.radius;
    S.origin = bound.center - bound.center.dot(u) * u;
    const double c_u = bound.center.dot(u);
    S.spacing = 2.0 * R / per_axis;

    const int m = n - 1;
    std::vector<int> idx(m, 0);
    for (;;) {
        Vector x(m);
        for (int j = 0; j < m; ++j) x[j] = -R + S.spacing * (idx[j] + 0.5);
        if (x.norm() < R) {
            const double T = std::sqrt(R * R - x.squaredNorm());
            const Vector base = bound.center + S.basis * x;
            auto at = [&](double t) { return Vector(base + t * u); };
            SteinerFiberNd f;
            f.x = x;
            double tin = 0.0;
            const int probes = 257;
            for (int k = 0; k < probes && !f.hit; ++k) {
                // Probe from the middle outward.
                const int off = (k + 1) / 2 * (k % 2 ? 1 : -1);
                const double t = T * off / (probes / 2 + 1);
                if (member(at(t))) {
                    f.hit = true;
                    tin = t;
                }
            }
            if (f.hit) {
                double lo = -T, hi = tin;
                while (hi - lo > bisect_tol) {
                    const double mid = 0.5 * (lo + hi);
                    (member(at(mid)) ? hi : lo) = mid;
                }
                f.a = hi + c_u;
                lo = tin;
                hi = T;
                while (hi - lo > bisect_tol) {
                    const double mid = 0.5 * (lo + hi);
                    (member(at(mid)) ? lo : hi) = mid;
                }
                f.b = lo + c_u;
                f.half = 0.5 * (f.b - f.a);
            } else {
                ++S.empty_fibers;
            }
            S.fibers.push_back(f);
        }
        int j = 0;
        while (j < m && ++idx[j] == per_axis) idx[j++] = 0;
        if (j == m) break;
    }
    return S;
}

// ---------------------------------------------------------------------------
// Basin of a constant width body

struct BasinCheck {
    double average_deviation = 0.0;  // max |(h_T + h_{T^c})/2 - h_K|
    double odd_deviation = 0.0;      // max |(h_T - h_K)(u) - (h_T - h_K)(-u)|
    bool averages_to_target = false;
    bool even_difference = false;
    bool in_basin() const { return averages_to_target && even_difference; }
    bool consistent() const { return averages_to_target == even_difference; }
};

inline BasinCheck basin_parity_check(const ConstantWidthBody& K, const SupportSampledBody& T, double tol = 1e-9)
{
    const auto& g = K.body.grid();
    require(g.symmetric(), "basin_parity_check: grid is not symmetric");
    require(T.grid_ptr() == K.body.grid_ptr() || T.grid().matrix() == g.matrix(), "basin_parity_check: grid mismatch");
    BasinCheck r;
    for (int i = 0; i < g.size(); ++i) {
        const int j = g.antipode(i);
        const double avg = 0.5 * (T.value(i) + 1.0 - T.value(j));
        r.average_deviation = std::max(r.average_deviation, std::abs(avg - K.body.value(i)));
        const double di = T.value(i) - K.body.value(i), dj = T.value(j) - K.body.value(j);
        r.odd_deviation = std::max(r.odd_deviation, std::abs(di - dj));
    }
    r.averages_to_target = r.average_deviation <= tol;
    r.even_difference = r.odd_deviation <= 2.0 * tol;
    return r;
}

// ---------------------------------------------------------------------------
// Ball inside K^c u -K

struct SchrammReport {
    double R = 0.0;
    double rho = 0.0;            // sqrt(5/4 - R^2) - 1/2
    double min_max_ab = 0.0;     // min over the grid of max(a(u), b(u))
    int argmin = -1;
    bool holds = false;
    double witness_violation = 0.0;  // how far a(u)u leaves K^c, b(u)u leaves -K (support test)
};

inline SchrammReport schramm_ball_check(const SupportSampledBody& K, double R, double tol = 1e-9, bool check_witnesses = true)
{
    const auto& g = K.grid();
    require(g.symmetric(), "schramm_ball_check: grid is not symmetric");
    require(R > 0.0 && R < 1.0, "schramm_ball_check: R must lie in (0, 1)");
    for (int i = 0; i < g.size(); ++i) {
        require(K.value(i) <= R + tol, "schramm_ball_check: K is not inside B(0, R)");
        require(1.0 - K.value(g.antipode(i)) <= R + tol, "schramm_ball_check: K^c is not inside B(0, R)");
    }
    auto gfun = [R](double t) { return std::sqrt(1.0 - R * R + t * t) - t; };
    SchrammReport rep;
    rep.R = R;
    rep.rho = std::sqrt(1.25 - R * R) - 0.5;
    rep.min_max_ab = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.size(); ++i) {
        const int j = g.antipode(i);
        const double hKminus = K.value(j), hKc = 1.0 - K.value(j);
        const double a = gfun(hKminus), b = gfun(hKc);
        const double m = std::max(a, b);
        if (m < rep.min_max_ab) {
            rep.min_max_ab = m;
            rep.argmin = i;
        }
        if (check_witnesses) {
            // a u in K^c: <a u, v> <= 1 - h_K(-v); b u in -K: <b u, v> <= h_K(-v).
            for (int k = 0; k < g.size(); ++k) {
                const double uv = g.matrix().row(i).dot(g.matrix().row(k));
                const double hK_negv = K.value(g.antipode(k));
                rep.witness_violation = std::max(rep.witness_violation, a * uv - (1.0 - hK_negv));
                rep.witness_violation = std::max(rep.witness_violation, b * uv - hK_negv);
            }
        }
    }
    rep.holds = rep.min_max_ab >= rep.rho - tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Curvature pairing

struct CurvaturePairing {
    Vector r;          // principal radii of K at u, ascending
    Vector s;          // principal radii of K^c at -u, descending
    Vector pair_sums;  // r_i + s_i
    double hessian_residual = 0.0;  // |H_K(u) + H_{K^c}(-u) - I| on u-perp
    double fd_step = 0.0;
    bool smooth = true;
};

using SupportFunction = std::function<double(const Vector&)>;

namespace detail {

// Hessian of the 1-homogeneous extension of h at the unit vector u, restricted to u-perp.
inline Matrix fd_hessian_perp(const SupportFunction& h, const Vector& u, const Matrix& Q, double step)
{
    auto H = [&](const Vector& w) {
        const double nw = w.norm();
        return nw * h(w / nw);
    };
    const int m = static_cast<int>(Q.cols());
    Matrix M(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            const Vector a = step * Q.col(i), b = step * Q.col(j);
            M(i, j) = M(j, i) = (H(u + a + b) - H(u + a - b) - H(u - a + b) + H(u - a - b)) / (4.0 * step * step);
        }
    return M;
}

}  // namespace detail

inline CurvaturePairing curvature_pairing(const SupportFunction& hK, const SupportFunction& hKc, const Vector& u,
                                          double fd_step = 1e-4)
{
    require(std::abs(u.norm() - 1.0) <= 1e-9, "curvature_pairing: u is not a unit vector");
    require(fd_step > 0.0, "curvature_pairing: step must be positive");
    const Matrix Q = orthogonal_complement(u);
    const Matrix A = detail::fd_hessian_perp(hK, u, Q, fd_step);
    const Matrix B = detail::fd_hessian_perp(hKc, -u, Q, fd_step);
    CurvaturePairing rep;
    rep.fd_step = fd_step;
    rep.hessian_residual = (A + B - Matrix::Identity(A.rows(), A.cols())).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Matrix> ea(A), eb(B);
    rep.r = ea.eigenvalues();  // ascending
    rep.s = eb.eigenvalues().reverse();
    rep.pair_sums = rep.r + rep.s;
    const double blowup = 0.1 / fd_step;
    rep.smooth = rep.r.cwiseAbs().maxCoeff() < blowup && rep.s.cwiseAbs().maxCoeff() < blowup;
    return rep;
}

// Uses h_{K^c}(w) = 1 - h_K(-w) for the dual.
inline CurvaturePairing curvature_pairing(const SupportSampledBody& K, const Vector& u, double fd_step = 1e-4)
{
    require(K.has_oracle(), "curvature_pairing: body needs a support oracle");
    SupportFunction hK = [&K](const Vector& w) { return K.evaluate(w); };
    SupportFunction hKc = [&K](const Vector& w) { return 1.0 - K.evaluate(-w); };
    return curvature_pairing(hK, hKc, u, fd_step);
}

// Smooth planar body h(t) = a0 + <c, u(t)> + sum_k (a_k cos kt + b_k sin kt), k >= 2.
struct FourierBody2d {
    double a0 = 0.5;
    P2 center = P2::Zero();
    std::vector<double> a, b;  // a[j], b[j] belong to frequency j + 2

    double h(double t) const { return a0 + center.x() * std::cos(t) + center.y() * std::sin(t) + sum(t, 0); }
    double d2h(double t) const { return -center.x() * std::cos(t) - center.y() * std::sin(t) + sum(t, 2); }
    double dh(double t) const { return -center.x() * std::sin(t) + center.y() * std::cos(t) + sum(t, 1); }
    // Radius of curvature at the boundary point with normal angle t.
    double radius_of_curvature(double t) const { return h(t) + d2h(t); }

    SupportPoint support(const Vector& w) const
    {
        const double nw = w.norm();
        const double t = std::atan2(w[1], w[0]);
        const Vector uu = vec({std::cos(t), std::sin(t)}), up = vec({-std::sin(t), std::cos(t)});
        return {nw * h(t), h(t) * uu + dh(t) * up};
    }

    SupportOracle oracle() const
    {
        return [self = *this](const Vector& w) { return self.support(w); };
    }

    // Random body with radii of curvature in [a0 - excursion, a0 + excursion].
    static FourierBody2d random(SeededRng& rng, int modes = 4, double excursion = 0.3)
    {
        FourierBody2d F;
        F.a0 = rng.uniform(0.4, 0.6);
        F.center = P2(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2));
        std::vector<double> raw(2 * modes);
        double weight = 0.0;
        for (int j = 0; j < modes; ++j) {
            const int k = j + 2;
            raw[2 * j] = rng.uniform(-1, 1);
            raw[2 * j + 1] = rng.uniform(-1, 1);
            weight += (k * k - 1) * (std::abs(raw[2 * j]) + std::abs(raw[2 * j + 1]));
        }
        const double scale = excursion / weight;
        for (int j = 0; j < modes; ++j) {
            F.a.push_back(raw[2 * j] * scale);
            F.b.push_back(raw[2 * j + 1] * scale);
        }
        return F;
    }

private:
    double sum(double t, int derivative) const
    {
        double s = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double k = static_cast<double>(j + 2);
            const double c = std::cos(k * t), sn = std::sin(k * t);
            switch (derivative) {
            case 0: s += a[j] * c + b[j] * sn; break;
            case 1: s += k * (-a[j] * sn + b[j] * c); break;
            default: s += -k * k * (a[j] * c + b[j] * sn); break;
            }
        }
        return s;
    }
};

// ---------------------------------------------------------------------------
// The ellipse x^2/b + y^2/b^2 <= 1 and its dual

inline SupportPoint ellipse_support(double b, const Vector& w)
{
    const double A2 = b, B2 = b * b;
    const double h = std::sqrt(A2 * w[0] * w[0] + B2 * w[1] * w[1]);
    return {h, vec({A2 * w[0] / h, B2 * w[1] / h})};
}

struct EllipseDualProfile {
    double b = 0.0;
    std::vector<P2> points;       // boundary of E^c, x - n_E(x) over the normal-angle grid
    double pole = 0.0;            // v(0) = -(1 - b)
    double exponent = 0.0;        // fitted
    double coefficient = 0.0;     // fitted
    double predicted_coefficient = 0.0;  // (3/4)(2b/(1-b))^{1/3}
    double reference_coefficient = 0.0;    // (3/2)(b/(2(1-b)))^{1/3}
    int fit_points = 0;
};

// Least-squares fit of log(y) = log(c) + p log(x).
inline std::pair<double, double> fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys)
{
    require(xs.size() == ys.size() && xs.size() >= 2, "fit_power_law: need at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        require(xs[i] > 0 && ys[i] > 0, "fit_power_law: samples must be positive");
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double p = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double logc = (sy - p * sx) / m;
    return {p, std::exp(logc)};
}

// Profile of E^c near its south pole. Points whose normal angle lies within
// fit_window of pi/2 (excluding the pole) enter the power-law fit.
inline EllipseDualProfile ellipse_dual_profile(double b, const std::vector<double>& normal_angles, double fit_window = 0.12)
{
    require(b > 0.0 && b < 1.0, "ellipse_dual_profile: b must lie in (0, 1)");
    EllipseDualProfile P;
    P.b = b;
    P.pole = -(1.0 - b);
    P.predicted_coefficient = 0.75 * std::cbrt(2.0 * b / (1.0 - b));
    P.reference_coefficient = 1.5 * std::cbrt(b / (2.0 * (1.0 - b)));
    std::vector<double> xs, ys;
    for (double phi : normal_angles) {
        const Vector n = vec({std::cos(phi), std::sin(phi)});
        const Vector x = ellipse_support(b, n).point;
        const P2 d(x[0] - n[0], x[1] - n[1]);
        P.points.push_back(d);
        const double off = std::abs(phi - 0.5 * kPi);
        if (off > 0 && off <= fit_window && std::abs(d.x()) > 1e-12 && d.y() - P.pole > 1e-15) {
            xs.push_back(std::abs(d.x()));
            ys.push_back(d.y() - P.pole);
        }
    }
    P.fit_points = static_cast<int>(xs.size());
    if (xs.size() >= 2) std::tie(P.exponent, P.coefficient) = fit_power_law(xs, ys);
    return P;
}

// ---------------------------------------------------------------------------
// Quadrant body K = B n (R+)^n: width >= 1 but K^c is strictly inside K

inline SupportSampledBody quadrant_body(std::shared_ptr<const DirectionGrid> grid)
{
    return sample_function(std::move(grid), [](const Vector& u) {
        const Vector p = u.cwiseMax(0.0);
        const double np = p.norm();
        return SupportPoint{np, np > 0 ? Vector(p / np) : Vector(Vector::Zero(u.size()))};
    });
}

struct QuadrantReport {
    double min_width = 0.0;
    double max_dual_excess = 0.0;  // max_u h_{K^c}(u) - h_K(u); <= 0 means K^c in K
    double max_gap = 0.0;          // max_u h_K(u) - h_{K^c}(u); > 0 means strict
};

inline QuadrantReport quadrant_width_check(const SupportSampledBody& K)
{
    const auto& g = K.grid();
    QuadrantReport r;
    r.min_width = std::numeric_limits<double>::infinity();
    r.max_dual_excess = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.size(); ++i) {
        r.min_width = std::min(r.min_width, K.width(i));
        const double hc = 1.0 - K.value(g.antipode(i));
        r.max_dual_excess = std::max(r.max_dual_excess, hc - K.value(i));
        r.max_gap = std::max(r.max_gap, K.value(i) - hc);
    }
    return r;
}

// ---------------------------------------------------------------------------
// The lens L = B(c0, 1) n B(-c0, 1) in R^3 whose Steiner symmetral in direction e3
// leaves the class of ball bodies.

struct CounterexampleReport {
    double x0 = -0.2807, y0 = 0.2457, z0 = -0.4, x = 0.4142, y = 0.7268;
    double f_u = 0, minus_f_d = 0, g_u = 0, minus_g_d = 0;
    P2 grad_f_u = P2::Zero(), grad_g_d = P2::Zero(), grad_h = P2::Zero();
    double psi_h = 0, psi_f_u = 0, psi_g_d = 0, psi_mean = 0;
    double kappa_h = 0;          // psi_mean / psi_h
    double kappa_h_hessian = 0;  // from closed-form second derivatives
    bool fiber_nonempty = false; // is (x, y) in the projection of L?
    // Principal-curvature scan of the upper boundary of S_{e3}(L) over smooth fibers.
    double scan_min_curvature = 0;
    P2 scan_point = P2::Zero();
    bool scan_top_is_f_u = false, scan_bottom_is_minus_g_d = false;
};

namespace detail {

struct SphereGraph {
    double value;
    P2 grad;
    Eigen::Matrix2d hess;
};

// z = zc + sign * sqrt(1 - |w - c|^2)
inline SphereGraph sphere_graph(const P2& w, const P2& c, double zc, double sign)
{
    const P2 d = w - c;
    const double s = std::sqrt(1.0 - d.squaredNorm());
    SphereGraph g;
    g.value = zc + sign * s;
    g.grad = -sign * d / s;
    g.hess = -sign * (Eigen::Matrix2d::Identity() / s + d * d.transpose() / (s * s * s));
    return g;
}

// sqrt(1 + |g|^2)(1 + g_1^2): for a unit-sphere graph phi, phi_11 = -psi(grad phi).
inline double psi(const P2& g) { return std::sqrt(1.0 + g.squaredNorm()) * (1.0 + g.x() * g.x()); }

}  // namespace detail

inline CounterexampleReport evaluate_counterexample(CounterexampleReport r, int scan_per_axis = 401)
{
    using detail::sphere_graph;
    const P2 c(r.x0, r.y0), w(r.x, r.y);
    const auto fu = sphere_graph(w, c, r.z0, 1.0), fd = sphere_graph(w, c, r.z0, -1.0);
    const auto gu = sphere_graph(w, -c, -r.z0, 1.0), gd = sphere_graph(w, -c, -r.z0, -1.0);
    r.f_u = fu.value;
    r.minus_f_d = fd.value;
    r.g_u = gu.value;
    r.minus_g_d = gd.value;
    r.fiber_nonempty = std::min(r.f_u, r.g_u) >= std::max(r.minus_f_d, r.minus_g_d);
    // g_d = -(lower surface of B(-c0, 1)).
    r.grad_f_u = fu.grad;
    r.grad_g_d = -gd.grad;
    r.grad_h = 0.5 * (r.grad_f_u + r.grad_g_d);
    r.psi_f_u = detail::psi(r.grad_f_u);
    r.psi_g_d = detail::psi(r.grad_g_d);
    r.psi_h = detail::psi(r.grad_h);
    r.psi_mean = 0.5 * (r.psi_f_u + r.psi_g_d);
    r.kappa_h = r.psi_mean / r.psi_h;
    const double h11 = 0.5 * (fu.hess(0, 0) - gd.hess(0, 0));
    r.kappa_h_hessian = -h11 / r.psi_h;

    r.scan_min_curvature = std::numeric_limits<double>::infinity();
    for (int i = 0; i < scan_per_axis; ++i)
        for (int j = 0; j < scan_per_axis; ++j) {
            const P2 q(-1.0 + 2.0 * i / (scan_per_axis - 1), -1.0 + 2.0 * j / (scan_per_axis - 1));
            if ((q - c).squaredNorm() > 0.999 || (q + c).squaredNorm() > 0.999) continue;
            const auto a = sphere_graph(q, c, r.z0, 1.0), ad = sphere_graph(q, c, r.z0, -1.0);
            const auto bu = sphere_graph(q, -c, -r.z0, 1.0), bd = sphere_graph(q, -c, -r.z0, -1.0);
            // Skip fibers near a switch between pieces and thin fibers.
            if (std::abs(a.value - bu.value) < 1e-3 || std::abs(ad.value - bd.value) < 1e-3) continue;
            const auto& top = a.value < bu.value ? a : bu;
            const auto& bot = ad.value > bd.value ? ad : bd;
            if (top.value - bot.value < 1e-3) continue;
            const P2 g = 0.5 * (top.grad - bot.grad);
            const Eigen::Matrix2d H = 0.5 * (top.hess - bot.hess);
            const Eigen::Matrix2d G = Eigen::Matrix2d::Identity() + g * g.transpose();
            const Eigen::Matrix2d S = G.inverse() * (-H) / std::sqrt(1.0 + g.squaredNorm());
            const double k = S.eigenvalues().real().minCoeff();
            if (k < r.scan_min_curvature) {
                r.scan_min_curvature = k;
                r.scan_point = q;
                r.scan_top_is_f_u = &top == &a;
                r.scan_bottom_is_minus_g_d = &bot == &bd;
            }
        }
    return r;
}

inline CounterexampleReport r3_counterexample() { return evaluate_counterexample(CounterexampleReport{}); }

// Largest difference between stored values and a recomputation from the parameters.
inline double counterexample_recompute_deviation(const CounterexampleReport& r)
{
    const auto s = evaluate_counterexample(r);
    const double vals[] = {
        s.f_u - r.f_u, s.minus_f_d - r.minus_f_d, s.g_u - r.g_u, s.minus_g_d - r.minus_g_d,
        (s.grad_f_u - r.grad_f_u).norm(), (s.grad_g_d - r.grad_g_d).norm(), (s.grad_h - r.grad_h).norm(),
        s.psi_h - r.psi_h, s.psi_f_u - r.psi_f_u, s.psi_g_d - r.psi_g_d, s.psi_mean - r.psi_mean,
        s.kappa_h - r.kappa_h, s.kappa_h_hessian - r.kappa_h_hessian, s.scan_min_curvature - r.scan_min_curvature};
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace ballbody
