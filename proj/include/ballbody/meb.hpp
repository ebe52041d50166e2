#pragma once

#include "core.hpp"

#include <functional>
#include <limits>
#include <list>
#include <numeric>

namespace ballbody {

struct EnclosingBall {
    Vector center;
    double radius = 0.0;
    std::vector<std::size_t> support;
};

inline double circumradius_at(const PointSet& A, const Vector& x)
{
    require(!A.empty(), "circumradius_at: empty point set");
    double r = 0.0;
    for (const auto& a : A) {
        require_dim(a, x.size(), "circumradius_at");
        r = std::max(r, (a - x).norm());
    }
    return r;
}

namespace detail {

// Calls f(indices) for every subset of {0..m-1} with 1 <= size <= kmax, in
// increasing size and lexicographic order. f returns false to stop early.
inline void for_each_subset(int m, int kmax, const std::function<bool(const std::vector<int>&)>& f)
{
    kmax = std::min(kmax, m);
    std::vector<int> idx;
    for (int k = 1; k <= kmax; ++k) {
        idx.resize(k);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            if (!f(idx)) return;
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

inline double subset_count(int m, int kmax)
{
    double total = 0.0, c = 1.0;
    for (int k = 1; k <= std::min(kmax, m); ++k) {
        c = c * (m - k + 1) / k;
        total += c;
    }
    return total;
}

struct Circumball {
    Vector center;
    double r2;
};

inline Circumball circumball(const PointSet& P, const std::vector<std::size_t>& S, Eigen::Index n)
{
    if (S.empty()) return {Vector::Zero(n), -1.0};
    const Vector& p0 = P[S[0]];
    if (S.size() == 1) return {p0, 0.0};
    const Eigen::Index k = static_cast<Eigen::Index>(S.size()) - 1;
    Matrix Q(n, k);
    for (Eigen::Index j = 0; j < k; ++j) Q.col(j) = P[S[j + 1]] - p0;
    const Matrix G = Q.transpose() * Q;
    const Vector b = 0.5 * G.diagonal();
    const Vector lambda = G.completeOrthogonalDecomposition().solve(b);
    Vector c = p0 + Q * lambda;
    double r2 = 0.0;
    for (auto i : S) r2 = std::max(r2, (P[i] - c).squaredNorm());
    return {c, r2};
}

class MoveToFront {
public:
    MoveToFront(const PointSet& P, Eigen::Index n) : P_(P), n_(n)
    {
        for (std::size_t i = 0; i < P.size(); ++i) L_.push_back(i);
    }

    EnclosingBall run()
    {
        mtf(L_.end());
        EnclosingBall b{c_, std::sqrt(std::max(0.0, r2_)), support_};
        std::sort(b.support.begin(), b.support.end());
        return b;
    }

private:
    bool outside(const Vector& p) const
    {
        if (r2_ < 0) return true;
        const double r = std::sqrt(r2_);
        return (p - c_).norm() > r * (1.0 + 1e-13) + 1e-15;
    }

    void mtf(std::list<std::size_t>::iterator end)
    {
        auto cb = circumball(P_, S_, n_);
        c_ = cb.center;
        r2_ = cb.r2;
        support_ = S_;
        if (static_cast<Eigen::Index>(S_.size()) == n_ + 1) return;
        for (auto it = L_.begin(); it != end;) {
            auto next = std::next(it);
            if (outside(P_[*it])) {
                S_.push_back(*it);
                mtf(it);
                S_.pop_back();
                L_.splice(L_.begin(), L_, it);
            }
            it = next;
        }
    }

    const PointSet& P_;
    Eigen::Index n_;
    std::list<std::size_t> L_;
    std::vector<std::size_t> S_, support_;
    Vector c_;
    double r2_ = -1.0;
};

}  // namespace detail

inline EnclosingBall min_enclosing_ball(const PointSet& A)
{
    require(!A.empty(), "min_enclosing_ball: empty point set");
    const Eigen::Index n = A.front().size();
    for (const auto& a : A) {
        require_dim(a, n, "min_enclosing_ball");
        require_finite(a, "min_enclosing_ball");
    }
    EnclosingBall b = detail::MoveToFront(A, n).run();
    // Guard against round-off in near-degenerate supports.
    b.radius = std::max(b.radius, circumradius_at(A, b.center));
    return b;
}

// Inrad of K^c given Outrad(K); the two balls are concentric.
inline double dual_inradius(double outrad_of_K)
{
    require(outrad_of_K >= 0.0, "dual_inradius: negative out-radius");
    if (outrad_of_K > 1.0) throw EmptyBodyError("dual_inradius: out-radius exceeds 1, the dual is empty");
    return 1.0 - outrad_of_K;
}

// Minimum enclosing ball of a compact set known through a farthest-point oracle:
// repeatedly add the exact farthest point from the current center.
inline EnclosingBall enclosing_ball_coreset(PointSet seeds, const std::function<Vector(const Vector&)>& farthest,
                                            double tol = 1e-12, int max_iter = 500)
{
    require(!seeds.empty(), "enclosing_ball_coreset: need at least one seed point");
    EnclosingBall b = min_enclosing_ball(seeds);
    for (int it = 0; it < max_iter; ++it) {
        Vector y = farthest(b.center);
        const double d = (y - b.center).norm();
        if (d <= b.radius + tol) {
            b.radius = std::max(b.radius, d);
            return b;
        }
        seeds.push_back(std::move(y));
        b = min_enclosing_ball(seeds);
    }
    throw ConvergenceError("enclosing_ball_coreset: iteration cap reached", 0.0);
}

struct MinimaxResult {
    Vector point;  // minimizer of max_i (|x - a_i| - r_i)
    double value;  // the minimum; <= 0 iff the balls intersect
    bool exact;
};

namespace detail {

inline double minimax_objective(const std::vector<ClosedBall>& balls, const Vector& x)
{
    double f = -std::numeric_limits<double>::infinity();
    for (const auto& b : balls) f = std::max(f, (x - b.center).norm() - b.radius);
    return f;
}

// The minimizer has an active set S of size <= n+1 with |x - a_i| = r_i + t on S and
// x in conv{a_i : i in S}. Each S gives a linear family in t plus one quadratic.
inline bool minimax_enumerate(const std::vector<ClosedBall>& balls, MinimaxResult& out)
{
    const int m = static_cast<int>(balls.size());
    const Eigen::Index n = balls.front().center.size();
    double best = std::numeric_limits<double>::infinity();
    Vector best_x;
    const double scale = 1.0 + std::accumulate(balls.begin(), balls.end(), 0.0,
                                               [](double s, const ClosedBall& b) { return std::max(s, b.center.norm() + b.radius); });
    const double eps = 1e-11 * scale;

    auto consider = [&](const Vector& x, double t) {
        if (t >= best) return;
        if (minimax_objective(balls, x) <= t + eps) {
            best = t;
            best_x = x;
        }
    };

    for_each_subset(m, static_cast<int>(n) + 1, [&](const std::vector<int>& S) {
        const auto& b0 = balls[S[0]];
        const int k = static_cast<int>(S.size());
        if (k == 1) {
            consider(b0.center, -b0.radius);
            return true;
        }
        Matrix D(n, k - 1);
        Vector alpha(k - 1), beta(k - 1);
        for (int j = 1; j < k; ++j) {
            const auto& bj = balls[S[j]];
            D.col(j - 1) = bj.center - b0.center;
            alpha[j - 1] = 0.5 * (D.col(j - 1).squaredNorm() - bj.radius * bj.radius + b0.radius * b0.radius);
            beta[j - 1] = -(bj.radius - b0.radius);
        }
        const Matrix G = D.transpose() * D;
        Eigen::FullPivLU<Matrix> lu(G);
        if (lu.rank() < k - 1) return true;
        const Vector mu0 = lu.solve(alpha), mu1 = lu.solve(beta);
        const Vector p = D * mu0, q = D * mu1;
        const double A2 = q.squaredNorm() - 1.0;
        const double B2 = 2.0 * (p.dot(q) - b0.radius);
        const double C2 = p.squaredNorm() - b0.radius * b0.radius;
        std::vector<double> roots;
        if (std::abs(A2) < 1e-14) {
            if (std::abs(B2) > 1e-14) roots.push_back(-C2 / B2);
        } else {
            const double disc = B2 * B2 - 4.0 * A2 * C2;
            if (disc < -1e-14) return true;
            const double s = std::sqrt(std::max(0.0, disc));
            roots.push_back((-B2 + s) / (2.0 * A2));
            roots.push_back((-B2 - s) / (2.0 * A2));
        }
        for (double t : roots) {
            if (b0.radius + t < -eps) continue;
            const Vector mu = mu0 + mu1 * t;
            const double w0 = 1.0 - mu.sum();
            if (w0 < -1e-10 || (mu.size() > 0 && mu.minCoeff() < -1e-10)) continue;
            consider(b0.center + D * mu, t);
        }
        return true;
    });
    if (!std::isfinite(best)) return false;
    out = {best_x, best, true};
    return true;
}

inline MinimaxResult minimax_subgradient(const std::vector<ClosedBall>& balls, int iterations)
{
    PointSet centers;
    for (const auto& b : balls) centers.push_back(b.center);
    Vector x = min_enclosing_ball(centers).center;
    Vector best_x = x;
    double best = minimax_objective(balls, x);
    double step0 = 0.0;
    for (const auto& b : balls) step0 = std::max(step0, b.radius);
    step0 = std::max(step0, 1e-3);
    for (int k = 1; k <= iterations; ++k) {
        std::size_t arg = 0;
        double f = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < balls.size(); ++i) {
            const double fi = (x - balls[i].center).norm() - balls[i].radius;
            if (fi > f) {
                f = fi;
                arg = i;
            }
        }
        if (f < best) {
            best = f;
            best_x = x;
        }
        Vector g = x - balls[arg].center;
        const double gn = g.norm();
        if (gn < 1e-15) break;
        x -= (step0 / std::sqrt(static_cast<double>(k))) * g / gn;
    }
    return {best_x, best, false};
}

}  // namespace detail

// min over x of max_i (|x - a_i| - r_i). Exact for equal radii (via the MEB of the
// centers) and for small inputs (active-set enumeration); subgradient descent from
// the MEB center otherwise.
inline MinimaxResult ball_intersection_minimax(const std::vector<ClosedBall>& balls, int iterations = 200000)
{
    require(!balls.empty(), "ball_intersection_minimax: no balls");
    const double r0 = balls.front().radius;
    const bool equal = std::all_of(balls.begin(), balls.end(), [&](const ClosedBall& b) { return b.radius == r0; });
    if (equal) {
        PointSet centers;
        for (const auto& b : balls) centers.push_back(b.center);
        const auto meb = min_enclosing_ball(centers);
        return {meb.center, meb.radius - r0, true};
    }
    const int n = static_cast<int>(balls.front().center.size());
    if (detail::subset_count(static_cast<int>(balls.size()), n + 1) <= 2e5) {
        MinimaxResult r;
        if (detail::minimax_enumerate(balls, r)) return r;
    }
    return detail::minimax_subgradient(balls, iterations);
}

inline bool balls_intersect(const std::vector<ClosedBall>& balls, double tol = 1e-9)
{
    return ball_intersection_minimax(balls).value <= tol;
}

}  // namespace ballbody
