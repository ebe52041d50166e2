#pragma once

#include "core.hpp"

#include <functional>

namespace ballbody {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

struct SimpsonState {
    const std::function<double(double)>& f;
    int max_depth;
    double error = 0.0;
    bool capped = false;
};

inline double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole,
                           double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st.f(lm), frm = st.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol || depth >= st.max_depth) {
        if (depth >= st.max_depth && std::abs(diff) > 15.0 * tol) st.capped = true;
        st.error += std::abs(diff) / 15.0;
        return left + right + diff / 15.0;
    }
    return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b] with absolute tolerance tol and a 40-level bisection cap.
inline QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                         int max_depth = 40)
{
    if (b == a) return {0.0, 0.0};
    detail::SimpsonState st{f, max_depth};
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double v = detail::simpson_step(st, a, b, fa, fm, fb, whole, tol, 0);
    if (st.capped) throw ConvergenceError("adaptive_simpson: depth cap reached", st.error);
    return {v, st.error};
}

// L_k(x0, E, d): the c-hull of the k-sphere of radius d about x0 in x0 + span(E).
struct KLens {
    Vector x0;
    Matrix E;  // n x k, orthonormal columns
    double d = 0.0;

    KLens(Vector center, Matrix basis, double radius) : x0(std::move(center)), E(std::move(basis)), d(radius)
    {
        require(E.rows() == x0.size(), "KLens: basis dimension mismatch");
        require(E.cols() >= 0 && E.cols() <= E.rows(), "KLens: k must lie in [0, n]");
        require(E.cols() == 0 || is_orthonormal(E), "KLens: basis is not orthonormal");
        require(d >= 0.0 && d <= 1.0, "KLens: d must lie in [0, 1]");
    }

    // The 1-lens spanned by two points at distance at most 2.
    static KLens segment(const Vector& a, const Vector& b)
    {
        const double D = (b - a).norm();
        require(D <= 2.0, "KLens::segment: points farther apart than 2");
        Matrix e(a.size(), 1);
        if (D > 0)
            e.col(0) = (b - a) / D;
        else
            e.col(0) = unit(static_cast<int>(a.size()), 0);
        return {0.5 * (a + b), e, 0.5 * D};
    }

    int dim() const { return static_cast<int>(x0.size()); }
    int k() const { return static_cast<int>(E.cols()); }
};

inline KLens klens_dual(const KLens& L) { return {L.x0, orthogonal_complement(L.E), std::sqrt(std::max(0.0, 1.0 - L.d * L.d))}; }

// |y|^2 + 2 sqrt(1 - d^2) |P_{E-perp} y| - d^2 with y = x - x0; nonpositive inside.
inline double klens_defect(const KLens& L, const Vector& x)
{
    require_dim(x, L.dim(), "klens_contains");
    const Vector y = x - L.x0;
    const Vector perp = L.k() ? Vector(y - L.E * (L.E.transpose() * y)) : y;
    return y.squaredNorm() + 2.0 * std::sqrt(std::max(0.0, 1.0 - L.d * L.d)) * perp.norm() - L.d * L.d;
}

inline bool klens_contains(const KLens& L, const Vector& x, double eps = 1e-9) { return klens_defect(L, x) <= eps; }

struct LensRadii {
    double outradius;
    double inradius;
};

inline LensRadii klens_radii(const KLens& L) { return {L.d, 1.0 - std::sqrt(std::max(0.0, 1.0 - L.d * L.d))}; }

// k kappa_k kappa_{n-k} int_0^d (sqrt(1-s^2) - sqrt(1-d^2))^{n-k} s^{k-1} ds
inline QuadratureResult klens_volume(int n, int k, double d, double quad_tol = 1e-10)
{
    require(k >= 1 && k <= n - 1, "klens_volume: need 1 <= k <= n-1");
    require(d >= 0.0 && d <= 1.0, "klens_volume: d must lie in [0, 1]");
    if (d == 0.0) return {0.0, 0.0};
    const double c = std::sqrt(1.0 - d * d);
    // s = d sin(phi) keeps the integrand smooth at s = 1.
    auto f = [&](double phi) {
        const double s = d * std::sin(phi);
        const double base = std::max(0.0, std::sqrt(std::max(0.0, 1.0 - s * s)) - c);
        return std::pow(base, n - k) * std::pow(s, k - 1) * d * std::cos(phi);
    };
    const double pref = k * unit_ball_volume(k) * unit_ball_volume(n - k);
    const auto q = adaptive_simpson(f, 0.0, 0.5 * kPi, quad_tol / pref);
    return {pref * q.value, pref * q.error};
}

// F_n(d) = int_0^d (sqrt(1-t^2) - sqrt(1-d^2))^{n-1} dt; the 1-lens has volume 2 kappa_{n-1} F_n(d).
inline QuadratureResult one_lens_profile(int n, double d, double quad_tol = 1e-10)
{
    require(n >= 2, "one_lens_profile: n must be >= 2");
    require(d >= 0.0 && d <= 1.0, "one_lens_profile: d must lie in [0, 1]");
    const double c = std::sqrt(1.0 - d * d);
    auto f = [&](double phi) {
        const double t = d * std::sin(phi);
        return std::pow(std::max(0.0, std::sqrt(std::max(0.0, 1.0 - t * t)) - c), n - 1) * d * std::cos(phi);
    };
    return adaptive_simpson(f, 0.0, 0.5 * kPi, quad_tol);
}

// F_n'(d) = (n-1) d / sqrt(1-d^2) int_0^d (sqrt(1-t^2) - sqrt(1-d^2))^{n-2} dt, for d < 1.
inline double one_lens_profile_derivative(int n, double d, double quad_tol = 1e-10)
{
    require(n >= 2, "one_lens_profile_derivative: n must be >= 2");
    require(d >= 0.0 && d < 1.0, "one_lens_profile_derivative: d must lie in [0, 1)");
    const double c = std::sqrt(1.0 - d * d);
    auto f = [&](double phi) {
        const double t = d * std::sin(phi);
        return std::pow(std::max(0.0, std::sqrt(std::max(0.0, 1.0 - t * t)) - c), n - 2) * d * std::cos(phi);
    };
    return (n - 1) * d / c * adaptive_simpson(f, 0.0, 0.5 * kPi, quad_tol).value;
}

inline double one_lens_volume(int n, double d) { return 2.0 * unit_ball_volume(n - 1) * one_lens_profile(n, d).value; }

// Planar lens of angle theta (each arc subtends theta): area theta - sin(theta), perimeter 2 theta.
inline double planar_lens_area(double theta) { return theta - std::sin(theta); }

// Arc angle of the planar 1-lens over two points at distance D.
inline double planar_lens_angle(double D) { return 2.0 * std::asin(0.5 * D); }

// x lies in conv_c{x0, x1} iff it sees the segment under an angle >= theta0, where
// sin(theta0) = |x1 - x0|/2 and theta0 in [pi/2, pi].
inline bool one_lens_angle_contains(const Vector& x, const Vector& x0, const Vector& x1, double eps = 1e-12)
{
    require_dim(x, x0.size(), "one_lens_angle_contains");
    require_dim(x1, x0.size(), "one_lens_angle_contains");
    const double D = (x1 - x0).norm();
    if (D > 2.0) throw GeometryError("one_lens_angle_contains: points farther apart than 2, the c-hull is the whole space");
    const Vector a = x0 - x, b = x1 - x;
    const double na = a.norm(), nb = b.norm();
    if (na <= 1e-15 || nb <= 1e-15) return true;
    const double cosang = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
    if (cosang <= -1.0 + 1e-15) return true;  // on the open segment
    const double theta0 = kPi - std::asin(std::min(1.0, 0.5 * D));
    return std::acos(cosang) >= theta0 - eps;
}

inline double point_segment_distance(const Vector& y, const Vector& x0, const Vector& x1)
{
    const Vector s = x1 - x0;
    const double L2 = s.squaredNorm();
    if (L2 == 0.0) return (y - x0).norm();
    const double t = std::clamp((y - x0).dot(s) / L2, 0.0, 1.0);
    return (y - x0 - t * s).norm();
}

// 2h - ab with a = |y - x0|, b = |y - x1|, h = dist(y, [x0, x1]): zero on the lens
// boundary, negative inside.
inline double apollonius_residual(const Vector& x0, const Vector& x1, const Vector& y)
{
    require((x1 - x0).norm() <= 2.0, "apollonius_residual: points farther apart than 2");
    return 2.0 * point_segment_distance(y, x0, x1) - (y - x0).norm() * (y - x1).norm();
}

// Euclidean distance from y to conv_c{x0, x1}. The lens is a body of revolution about
// the segment, so the problem reduces to a planar lens in the meridian half-plane.
inline double lens_distance(const Vector& y, const Vector& x0, const Vector& x1)
{
    const Vector m = 0.5 * (x0 + x1);
    const double D = (x1 - x0).norm();
    require(D <= 2.0, "lens_distance: points farther apart than 2");
    const double d = 0.5 * D;
    const Vector w = y - m;
    double t = 0.0;
    if (D > 0) t = w.dot(x1 - x0) / D;
    const double r = std::sqrt(std::max(0.0, w.squaredNorm() - t * t));
    t = std::abs(t);
    // Planar lens with vertices (+-d, 0): intersection of unit disks about (0, -c) and (0, c).
    // With r >= 0 the binding disk is the one about (0, -c).
    const double c = std::sqrt(std::max(0.0, 1.0 - d * d));
    const double dist_c = std::hypot(t, r + c);
    if (dist_c <= 1.0) return 0.0;
    // Project onto that circle; the foot is on the lens while it stays above the axis.
    if (-c + (r + c) / dist_c >= 0.0) return dist_c - 1.0;
    return std::hypot(t - d, r);
}

// In-radius of the dual of the unit-edge regular simplex: 1 - Outrad, with Outrad = sqrt(n/(2(n+1))).
// The alternative closed form 1 - n/sqrt(2(n+1)) is kept for comparison; it agrees only at n = 1.
struct SimplexDualInradius {
    double value = 0.0;
    double alternative = 0.0;
    bool alternative_agrees = false;
};

inline SimplexDualInradius simplex_dual_inradius(int n)
{
    require(n >= 1, "simplex_dual_inradius: need n >= 1");
    SimplexDualInradius r;
    r.value = 1.0 - std::sqrt(n / (2.0 * (n + 1)));
    r.alternative = 1.0 - n / std::sqrt(2.0 * (n + 1));
    r.alternative_agrees = std::abs(r.value - r.alternative) <= 1e-12;
    return r;
}

}  // namespace ballbody
