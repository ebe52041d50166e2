#pragma once

#include "hull_theory.hpp"
#include "lens.hpp"
#include "symwidth.hpp"

#include <future>
#include <map>

namespace ballbody {

struct VerificationReport {
    std::string tag;
    std::size_t instances = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    bool pass = true;
    bool report_only = false;  // open conjectures: recorded, never asserted
    std::string note;
};

struct SuiteConfig {
    std::uint64_t seed = 0;
    double scale = 1.0;  // multiplies trial counts
    std::optional<double> tolerance;
    int trials(int base) const { return std::max(1, static_cast<int>(std::lround(base * scale))); }
};

// Collects signed margins; an instance passes when its margin is >= -tolerance.
class Tally {
public:
    explicit Tally(double tolerance) : tol_(tolerance) {}
    void add(double margin)
    {
        ++count_;
        if (!(margin >= worst_)) worst_ = std::isnan(margin) ? -std::numeric_limits<double>::infinity() : margin;
    }
    void equal(double a, double b) { add(-std::abs(a - b)); }
    void at_most(double lhs, double rhs) { add(rhs - lhs); }
    double tolerance() const { return tol_; }
    VerificationReport report(const std::string& tag, const SuiteConfig& cfg, std::string note = {}, bool report_only = false) const
    {
        VerificationReport r;
        r.tag = tag;
        r.instances = count_;
        r.worst_margin = count_ ? worst_ : 0.0;
        r.tolerance = tol_;
        r.seed = cfg.seed;
        r.pass = r.worst_margin >= -tol_;
        r.report_only = report_only;
        r.note = std::move(note);
        return r;
    }

private:
    double tol_;
    std::size_t count_ = 0;
    double worst_ = std::numeric_limits<double>::infinity();
};

// ---------------------------------------------------------------------------
// Kneser-Poulsen experiments

namespace verify_detail {

inline PointSet random_set(SeededRng& rng, int n, int m, double spread)
{
    PointSet A;
    for (int i = 0; i < m; ++i) A.push_back(rng.in_ball(n, spread));
    return A;
}

inline double dual_volume_2d(const PointSet& A)
{
    const auto P = intersect_unit_disks(to_points2(A));
    return P ? P->area() : 0.0;
}

inline VolumeEstimate dual_volume_mc(const PointSet& A, std::size_t samples, SeededRng& rng)
{
    auto member = [&](const Vector& x) {
        for (const auto& a : A)
            if ((x - a).squaredNorm() > 1.0) return false;
        return true;
    };
    return mc_volume(member, {A[0], 1.0}, samples, rng);
}

// A composition of metric projections onto random balls: 1-Lipschitz and nonlinear.
inline PointSet random_contraction(const PointSet& X, SeededRng& rng)
{
    const int n = static_cast<int>(X[0].size());
    PointSet Y = X;
    const int steps = rng.uniform_int(1, 3);
    for (int s = 0; s < steps; ++s) {
        const Vector c = rng.in_ball(n, 0.5);
        const double r = rng.uniform(0.05, 0.6);
        for (auto& y : Y) {
            const double d = (y - c).norm();
            if (d > r) y = c + (r / d) * (y - c);
        }
    }
    return Y;
}

}  // namespace verify_detail

// Dual volume can only grow under a contraction (proven for N <= n+1, open beyond).
inline VerificationReport kp_contraction_experiment(int n, int N, int trials, SeededRng& rng, std::size_t samples = 20000)
{
    require(N >= 2, "kp_contraction_experiment: need N >= 2");
    require(n >= 2, "kp_contraction_experiment: need n >= 2");
    Tally t(0.0);
    for (int k = 0; k < trials; ++k) {
        const PointSet X = verify_detail::random_set(rng, n, N, 0.7);
        const PointSet Y = verify_detail::random_contraction(X, rng);
        double stretch = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) stretch = std::max(stretch, (Y[i] - Y[j]).norm() - (X[i] - X[j]).norm());
        if (stretch > 1e-12) throw GeometryError("kp_contraction_experiment: map increased a distance");
        if (n == 2) {
            t.add(verify_detail::dual_volume_2d(Y) - verify_detail::dual_volume_2d(X) + 1e-12);
        } else {
            const auto vx = verify_detail::dual_volume_mc(X, samples, rng);
            const auto vy = verify_detail::dual_volume_mc(Y, samples, rng);
            t.add(vy.estimate - vx.estimate + 3.0 * std::hypot(vx.stderr_, vy.stderr_));
        }
    }
    SuiteConfig cfg;
    const bool proven = N <= n + 1;
    return t.report("KP-gromov", cfg, "n=" + std::to_string(n) + " N=" + std::to_string(N), !proven);
}

// ---------------------------------------------------------------------------
// Skewed lenses: conv_c[u1 + z, u0 - z] and conv_c[-u1 + z, -u0 - z] meet when 0 is in conv_c[u0, u1].

struct SkewedLensResult {
    bool intersect = false;
    Vector witness;
    double radius = 0.0;  // out-radius of the union of the two lens duals
    double defect_first = 0.0, defect_second = 0.0;
};

inline SkewedLensResult skewed_lens_intersection(const Vector& u0, const Vector& u1, const Vector& z, double eps = 1e-9)
{
    require_dim(u1, u0.size(), "skewed_lens_intersection");
    require_dim(z, u0.size(), "skewed_lens_intersection");
    require((u1 - u0).norm() <= 2.0, "skewed_lens_intersection: |u1 - u0| exceeds 2");
    require(one_lens_angle_contains(Vector::Zero(u0.size()), u0, u1, 1e-12),
            "skewed_lens_intersection: 0 is not in conv_c[u0, u1]");
    const Vector a = u1 + z, b = u0 - z, c = -u1 + z, d = -u0 - z;
    SkewedLensResult r;
    // A segment longer than 2 has the whole space as its c-hull.
    if ((a - b).norm() > 2.0 || (c - d).norm() > 2.0) {
        r.intersect = true;
        r.witness = (a - b).norm() > 2.0 ? Vector(0.5 * (c + d)) : Vector(0.5 * (a + b));
        return r;
    }
    // w lies in both hulls iff both duals fit in B(w, 1): the out-ball of the union of the duals.
    const BallIntersectionBody D1({{a, 1.0}, {b, 1.0}}), D2({{c, 1.0}, {d, 1.0}});
    auto dir = [&](const Vector& v) { return v.norm() > 1e-12 ? Vector(v.normalized()) : unit(static_cast<int>(v.size()), 0); };
    PointSet seeds{D1.support(dir(a - b)).point, D1.support(dir(b - a)).point, D2.support(dir(c - d)).point, D2.support(dir(d - c)).point};
    auto farthest = [&](const Vector& w) {
        const auto p = D1.farthest(w), q = D2.farthest(w);
        return p.value >= q.value ? p.point : q.point;
    };
    const auto ball = enclosing_ball_coreset(seeds, farthest, 1e-13);
    r.witness = ball.center;
    r.radius = ball.radius;
    r.defect_first = lens_distance(r.witness, a, b);
    r.defect_second = lens_distance(r.witness, c, d);
    r.intersect = ball.radius <= 1.0 + eps && r.defect_first <= eps && r.defect_second <= eps;
    return r;
}

// ---------------------------------------------------------------------------
// Suite registry

using SuiteFn = std::function<VerificationReport(const SuiteConfig&)>;

struct SuiteEntry {
    std::string tag;
    std::string summary;
    SuiteFn run;
};

namespace verify_detail {

inline std::uint64_t stream_of(const std::string& tag)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : tag) h = (h ^ ch) * 1099511628211ULL;
    return h;
}

inline SeededRng rng_for(const std::string& tag, const SuiteConfig& cfg) { return SeededRng(cfg.seed, stream_of(tag)); }

inline double tol_or(const SuiteConfig& cfg, double t) { return cfg.tolerance.value_or(t); }

inline BallIntersectionBody random_body(SeededRng& rng, int n)
{
    std::vector<ClosedBall> balls;
    const int m = 3 + rng.uniform_int(0, 4);
    for (int i = 0; i < m; ++i) balls.emplace_back(rng.in_ball(n, 0.45), 1.0);
    return BallIntersectionBody(balls);
}

inline ArcPolygon random_hull_2d(SeededRng& rng, PointSet* pts = nullptr)
{
    for (;;) {
        const auto A = random_set(rng, 2, 3 + rng.uniform_int(0, 6), 0.9);
        if (min_enclosing_ball(A).radius >= 1.0 - 1e-6) continue;
        if (pts) *pts = A;
        return spindle_hull(to_points2(A));
    }
}

inline SupportSampledBody planar_samples(const ArcPolygon& P, std::shared_ptr<const DirectionGrid> grid)
{
    return sample_function(std::move(grid), [P](const Vector& u) {
        const auto [h, x] = P.support(P2(u[0], u[1]));
        return SupportPoint{h, vec({x.x(), x.y()})};
    });
}

inline int grid_size(int n) { return n == 2 ? 720 : 2048; }

// Largest t with c + t u inside, by bisection on a margin function.
inline double ray_extent(const std::function<double(const Vector&)>& margin, const Vector& c, const Vector& u, double hi = 2.0)
{
    double lo = 0.0;
    for (int k = 0; k < 80; ++k) {
        const double m = 0.5 * (lo + hi);
        (margin(c + m * u) >= 0.0 ? lo : hi) = m;
    }
    return lo;
}

// Distance from c to the boundary: best grid ray, then a shrinking pattern search on the sphere.
inline double min_ray_extent(const std::function<double(const Vector&)>& margin, const Vector& c, const DirectionGrid& g)
{
    int best = 0;
    double rho = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.size(); ++i) {
        const double r = ray_extent(margin, c, g[i]);
        if (r < rho) {
            rho = r;
            best = i;
        }
    }
    Vector u = g[best];
    for (double step = 2.0 * g.mesh(); step > 1e-8;) {
        const Matrix T = orthogonal_complement(u);
        bool improved = false;
        for (int k = 0; k < T.cols() && !improved; ++k)
            for (double sgn : {1.0, -1.0}) {
                const Vector v = (u + sgn * step * T.col(k)).normalized();
                const double r = ray_extent(margin, c, v);
                if (r < rho) {
                    rho = r;
                    u = v;
                    improved = true;
                    break;
                }
            }
        if (!improved) step *= 0.5;
    }
    return rho;
}

inline Matrix regular_simplex(int n, double edge)
{
    // Standard basis of R^{n+1} projected to the hyperplane sum = 0, then expressed in R^n.
    Matrix E = Matrix::Identity(n + 1, n + 1);
    E.rowwise() -= E.colwise().mean();
    const Matrix Q = orthogonal_complement(Vector::Ones(n + 1) / std::sqrt(n + 1.0));
    Matrix P = E * Q;  // (n+1) x n
    P *= edge / std::sqrt(2.0);
    return P;
}

inline double volume_root_sigma(const VolumeEstimate& v, int n)
{
    if (v.estimate <= 0.0) return 0.0;
    return v.stderr_ * std::pow(v.estimate, 1.0 / n - 1.0) / n;
}

// Exact-support area of the Steiner symmetral of P and of its dual, by h(theta) integration.
struct SymmetralAreas {
    double area = 0.0, dual_area = 0.0;
};

inline SymmetralAreas steiner_symmetral_areas(const ArcPolygon& P, const P2& u, int samples = 4096)
{
    using namespace planar_detail;
    const P2 up(u.y(), -u.x());
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    xmax = P.support_value(up);
    xmin = -P.support_value(-up);
    auto half = [&](double x) {
        const auto t = fiber_end(P, u, up, x, true), b = fiber_end(P, u, up, x, false);
        if (!t || !b) return 0.0;
        return std::max(0.0, 0.5 * (t->y - b->y));
    };
    // Support point of the symmetral in direction w: maximize x w_perp + half(x) |w_u| (concave in x).
    auto support = [&](const P2& w) {
        const double a = w.dot(up), c = std::abs(w.dot(u));
        double lo = xmin, hi = xmax;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = a * x1 + c * half(x1), f2 = a * x2 + c * half(x2);
        for (int k = 0; k < 90; ++k) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = a * x2 + c * half(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = a * x1 + c * half(x1);
            }
        }
        const double x = 0.5 * (lo + hi);
        const double y = (w.dot(u) >= 0 ? 1.0 : -1.0) * half(x);
        return P2(x * up + y * u);
    };
    SymmetralAreas out;
    const double dt = 2.0 * kPi / samples;
    for (int k = 0; k < samples; ++k) {
        const double t = k * dt;
        const P2 w(std::cos(t), std::sin(t)), wp(-std::sin(t), std::cos(t));
        const P2 p = support(w), q = support(-w);
        const double h = p.dot(w), dh = p.dot(wp);
        const double hc = 1.0 - q.dot(-w), dhc = q.dot(wp);
        out.area += 0.5 * (h * h - dh * dh) * dt;
        out.dual_area += 0.5 * (hc * hc - dhc * dhc) * dt;
    }
    return out;
}

}  // namespace verify_detail

inline const std::vector<SuiteEntry>& suite_registry()
{
    using namespace verify_detail;
    static const std::vector<SuiteEntry> registry = [] {
        std::vector<SuiteEntry> R;
        auto add = [&](std::string tag, std::string summary, SuiteFn fn) { R.push_back({std::move(tag), std::move(summary), std::move(fn)}); };

        // ---- duality on grids

        add("support-duality", "h_K(u) + h_{K^c}(-u) = 1 with K^c = conv_c of the centers", [](const SuiteConfig& cfg) {
            auto rng = rng_for("support-duality", cfg);
            Tally t(tol_or(cfg, 1e-6));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, n == 2 ? 360 : 1024);
                for (int k = 0; k < cfg.trials(50); ++k) {
                    const auto A = random_set(rng, n, 3 + rng.uniform_int(0, 4), 0.45);
                    const auto K = c_dual_of_points(A);
                    const CHull H(A);
                    std::optional<ArcPolygon> exact;
                    if (n == 2) exact = spindle_hull(to_points2(A));
                    for (int i = 0; i < g->size(); ++i) {
                        const Vector u = (*g)[i];
                        const auto s = K.support(u);
                        if (exact) {
                            t.equal(s.value + exact->support_value(P2(-u[0], -u[1])), 1.0);
                        } else {
                            // x_K(u) - u lies in K^c, and K^c lies in B(x_K(u), 1): equality is certified.
                            t.add(std::min(H.margin(s.point - u), -s.kkt_residual));
                        }
                    }
                }
            }
            return t.report("support-duality", cfg);
        });

        add("minkowski-linear", "dual of a Minkowski combination is the combination of duals", [](const SuiteConfig& cfg) {
            auto rng = rng_for("minkowski-linear", cfg);
            Tally t(tol_or(cfg, 1e-15));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, n == 2 ? 360 : 1024);
                for (int k = 0; k < cfg.trials(50); ++k) {
                    const auto K = sample_support(random_body(rng, n), g);
                    const auto T = sample_support(random_body(rng, n), g);
                    const double lam = rng.uniform();
                    const auto lhs = c_dual(minkowski_combine(K, T, lam));
                    const auto rhs = minkowski_combine(c_dual(K), c_dual(T), lam);
                    t.add(-(lhs.values() - rhs.values()).cwiseAbs().maxCoeff());
                }
            }
            return t.report("minkowski-linear", cfg);
        });

        add("dual-isometry", "d_H(K, L) = d_H(K^c, L^c) on shared grids", [](const SuiteConfig& cfg) {
            auto rng = rng_for("dual-isometry", cfg);
            Tally t(tol_or(cfg, 0.0));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, n == 2 ? 360 : 1024);
                for (int k = 0; k < cfg.trials(50); ++k) {
                    const auto K = sample_support(random_body(rng, n), g);
                    const auto L = sample_support(random_body(rng, n), g);
                    t.equal(hausdorff(K, L).value(), hausdorff(c_dual(K), c_dual(L)).value());
                }
            }
            return t.report("dual-isometry", cfg);
        });

        add("order-reversal", "A in B gives B^c in A^c; points of A lie in conv_c(A)", [](const SuiteConfig& cfg) {
            auto rng = rng_for("order-reversal", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, 256);
                for (int k = 0; k < cfg.trials(20); ++k) {
                    auto A = random_set(rng, n, 4, 0.5);
                    auto B = A;
                    for (int j = 0; j < 3; ++j) B.push_back(rng.in_ball(n, 0.5));
                    const auto Ac = c_dual_of_points(A), Bc = c_dual_of_points(B);
                    for (int i = 0; i < g->size(); ++i) t.at_most(Bc.support_value((*g)[i]), Ac.support_value((*g)[i]));
                    const CHull H(A);
                    for (const auto& a : A) t.add(H.margin(a));
                }
            }
            return t.report("order-reversal", cfg);
        });

        add("continuity-modulus", "(A + dB)^c in A^c in (A + dB)^c + eta(d) B", [](const SuiteConfig& cfg) {
            auto rng = rng_for("continuity-modulus", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, 256);
                for (int k = 0; k < cfg.trials(10); ++k) {
                    const auto A = random_set(rng, n, 5, 0.4);
                    for (double delta : {0.01, 0.05}) {
                        std::vector<ClosedBall> shrunk;
                        for (const auto& a : A) shrunk.emplace_back(a, 1.0 - delta);
                        const BallIntersectionBody S(shrunk);
                        const auto D = c_dual_of_points(A);
                        const double eta = std::sqrt(2 * delta - delta * delta);
                        for (int i = 0; i < g->size(); ++i) {
                            const Vector u = (*g)[i];
                            const double hs = S.support_value(u), hd = D.support_value(u);
                            t.at_most(hs, hd);
                            t.at_most(hd, hs + eta);
                        }
                    }
                }
            }
            return t.report("continuity-modulus", cfg);
        });

        add("rigid-motion-commutes", "c-duality commutes with rigid motions", [](const SuiteConfig& cfg) {
            auto rng = rng_for("rigid-motion-commutes", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, 256);
                for (int k = 0; k < cfg.trials(10); ++k) {
                    const auto A = random_set(rng, n, 5, 0.4);
                    const auto Q = Eigen::HouseholderQR<Matrix>(Matrix::NullaryExpr(n, n, [&] { return rng.normal(); })).householderQ() * Matrix::Identity(n, n);
                    const RigidMotion m(Q, rng.in_ball(n, 1.0));
                    const auto D = c_dual_of_points(A), DM = c_dual_of_points(apply_motion(m, A));
                    for (int i = 0; i < g->size(); ++i) {
                        const Vector u = (*g)[i];
                        // h_{gK}(u) = h_K(Q^T u) + <x0, u>
                        t.equal(DM.support_value(u), D.support_value(Q.transpose() * u) + m.translation().dot(u));
                    }
                }
            }
            return t.report("rigid-motion-commutes", cfg);
        });

        // ---- radii, diameter, volume

        add("inplusout", "Outrad(K) + Inrad(K^c) = 1, in-ball measured by rays", [](const SuiteConfig& cfg) {
            auto rng = rng_for("inplusout", cfg);
            Tally t(tol_or(cfg, 1e-6));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, n == 2 ? 360 : 512);
                for (int k = 0; k < cfg.trials(n == 2 ? 200 : 40); ++k) {
                    const auto A = random_set(rng, n, 3 + rng.uniform_int(0, 4), 0.45);
                    const auto K = c_dual_of_points(A);
                    const auto ob = K.outball();
                    const CHull H(A);
                    const double rho = min_ray_extent([&](const Vector& x) { return H.margin(x); }, ob.center, *g);
                    t.equal(ob.radius + rho, 1.0);
                }
            }
            return t.report("inplusout", cfg);
        });

        add("santalo-thereal", "r <= Outrad(K) <= sqrt(2r - r^2) and diam <= 2 sqrt(2r - r^2)", [](const SuiteConfig& cfg) {
            auto rng = rng_for("santalo-thereal", cfg);
            Tally t(tol_or(cfg, 1e-6));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, n == 2 ? 720 : 2048);
                for (int k = 0; k < cfg.trials(n == 2 ? 200 : 60); ++k) {
                    const auto K = random_body(rng, n);
                    const double r = K.inradius(), R = K.outball().radius;
                    t.at_most(r, R);
                    t.at_most(R, std::sqrt(2 * r - r * r));
                    if (k % 4 == 0) t.at_most(diameter(sample_support(K, g)).value, 2 * std::sqrt(2 * r - r * r));
                }
            }
            return t.report("santalo-thereal", cfg);
        });

        add("jung", "Outrad(A) <= sqrt(n/(2(n+1))) diam(A), equality on the regular simplex", [](const SuiteConfig& cfg) {
            auto rng = rng_for("jung", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int n = 2; n <= 4; ++n) {
                const double c = std::sqrt(n / (2.0 * (n + 1)));
                for (int k = 0; k < cfg.trials(200); ++k) {
                    const auto A = random_set(rng, n, 2 + rng.uniform_int(0, 8), 1.0);
                    double d = 0;
                    for (const auto& a : A)
                        for (const auto& b : A) d = std::max(d, (a - b).norm());
                    t.at_most(min_enclosing_ball(A).radius, c * d);
                }
                const Matrix S = regular_simplex(n, 1.0);
                PointSet P;
                for (int i = 0; i <= n; ++i) P.push_back(S.row(i).transpose());
                t.equal(min_enclosing_ball(P).radius, c);
            }
            return t.report("jung", cfg);
        });

        add("diameter-sum", "2 <= diam K + diam K^c <= 2 sqrt 2 and 2 - d <= diam K^c <= sqrt(4 - d^2)", [](const SuiteConfig& cfg) {
            auto rng = rng_for("diameter-sum", cfg);
            Tally t(tol_or(cfg, 1e-6));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, n == 2 ? 720 : 2048);
                for (int k = 0; k < cfg.trials(n == 2 ? 200 : 60); ++k) {
                    const auto K = sample_support(random_body(rng, n), g);
                    const auto Kc = c_dual(K);
                    const auto dk = diameter(K), dc = diameter(Kc);
                    // Refined values are lower estimates; the certified bounds cover the mesh.
                    t.at_most(2.0, dk.value + dc.value);
                    t.at_most(dk.upper_bound + dc.upper_bound, 2 * std::sqrt(2.0) + (dk.upper_bound - dk.value) + (dc.upper_bound - dc.value));
                    t.at_most(2.0 - dk.value, dc.value);
                    t.at_most(dc.value, std::sqrt(std::max(0.0, 4 - dk.value * dk.value)));
                }
            }
            return t.report("diameter-sum", cfg);
        });

        add("hull-diameter", "diam(conv_c A) <= sqrt(2n/(n+1)) diam(A), equality on the unit-outradius simplex", [](const SuiteConfig& cfg) {
            auto rng = rng_for("hull-diameter", cfg);
            Tally t(tol_or(cfg, 1e-6));
            for (int n = 2; n <= 3; ++n) {
                const double c = std::sqrt(2.0 * n / (n + 1));
                const auto g = make_grid(n, n == 2 ? 720 : 2048);
                for (int k = 0; k < cfg.trials(n == 2 ? 100 : 30); ++k) {
                    const auto A = random_set(rng, n, 3 + rng.uniform_int(0, 3), 0.7);
                    if (min_enclosing_ball(A).radius >= 0.98) continue;
                    double d = 0;
                    for (const auto& a : A)
                        for (const auto& b : A) d = std::max(d, (a - b).norm());
                    const auto hull = c_dual(sample_support(c_dual_of_points(A), g));
                    t.at_most(diameter(hull).value, c * d);
                    // A set of diameter <= 1 keeps its diameter.
                    if (d <= 1.0) t.at_most(diameter(hull).value, d);
                }
                // Simplex with out-radius 1: its dual is the center, the hull is the unit ball.
                const Matrix S = regular_simplex(n, std::sqrt(2.0 * (n + 1) / n));
                PointSet P;
                for (int i = 0; i <= n; ++i) P.push_back(S.row(i).transpose());
                const auto D = c_dual_of_points(P);
                t.equal(2.0 * (1.0 - D.outball().radius), c * std::sqrt(2.0 * (n + 1) / n));
            }
            return t.report("hull-diameter", cfg);
        });

        add("dilation-inclusion", "(tA)^cc lies in t A^cc", [](const SuiteConfig& cfg) {
            auto rng = rng_for("dilation-inclusion", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, 256);
                for (int k = 0; k < cfg.trials(20); ++k) {
                    const auto A = random_set(rng, n, 4, 0.8);
                    if (min_enclosing_ball(A).radius >= 0.98) continue;
                    const double s = rng.uniform(0.2, 0.95);
                    PointSet sA;
                    for (const auto& a : A) sA.push_back(s * a);
                    const CHull H(A), Hs(sA);
                    for (int i = 0; i < g->size(); ++i) t.at_most(Hs.support_value((*g)[i]), s * H.support_value((*g)[i]));
                }
            }
            return t.report("dilation-inclusion", cfg);
        });

        add("thin-triangle-diameter", "diam of the hull of the thin isosceles triangle", [](const SuiteConfig& cfg) {
            Tally t(tol_or(cfg, 1e-4));
            const double eps = 0.2, L = 1.5;
            const double half = std::sin(2 * eps);
            const double h = std::sqrt(L * L - half * half);
            const auto H = spindle_hull({P2(-half, 0), P2(half, 0), P2(0, h)});
            double d = 0;
            for (int k = 0; k < 20000; ++k) {
                const double a = 2 * kPi * k / 20000;
                const P2 u(std::cos(a), std::sin(a));
                d = std::max(d, H.support_value(u) + H.support_value(-u));
            }
            t.equal(d, h + 2 * std::sin(eps) * std::sin(eps));
            return t.report("thin-triangle-diameter", cfg);
        });

        add("santalo", "Vol(K)^{1/n} + Vol(K^c)^{1/n} <= kappa_n^{1/n}; M*(K) + M*(K^c) = 1", [](const SuiteConfig& cfg) {
            auto rng = rng_for("santalo", cfg);
            Tally t(tol_or(cfg, 1e-12));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, 512);
                const double kn = std::pow(unit_ball_volume(n), 1.0 / n);
                for (int k = 0; k < cfg.trials(20); ++k) {
                    const auto A = random_set(rng, n, 3 + rng.uniform_int(0, 3), 0.45);
                    const auto K = c_dual_of_points(A);
                    const CHull H(A);
                    double vk, vc, sigma = 0;
                    if (n == 2) {
                        const auto P = spindle_hull(to_points2(A));
                        vc = P.area();
                        vk = c_dual_planar(P).area();
                    } else {
                        const auto a = mc_volume([&](const Vector& x) { return K.contains(x, 0.0); }, bounding_ball(K), 20000, rng);
                        const auto b = mc_volume([&](const Vector& x) { return H.contains(x, 0.0); }, H.bounding_ball(), 20000, rng);
                        vk = a.estimate;
                        vc = b.estimate;
                        sigma = std::hypot(volume_root_sigma(a, n), volume_root_sigma(b, n));
                    }
                    t.add(kn - std::pow(vk, 1.0 / n) - std::pow(vc, 1.0 / n) + 3 * sigma);
                    const auto Ks = sample_support(K, g);
                    t.equal(mean_width(Ks) + mean_width(c_dual(Ks)), 1.0);
                }
            }
            return t.report("santalo", cfg);
        });

        add("intersection-volume", "Vol(K cap K^c) <= sqrt(Vol K Vol K^c) <= 2^-n kappa_n", [](const SuiteConfig& cfg) {
            auto rng = rng_for("intersection-volume", cfg);
            Tally t(tol_or(cfg, 1e-12));
            for (int k = 0; k < cfg.trials(50); ++k) {
                const auto P = random_hull_2d(rng);
                const auto D = c_dual_planar(P);
                const double a = P.area(), b = D.area();
                const auto meb = min_enclosing_ball({planar_detail::from2(P.vertices().empty() ? P.disk_center() : P.vertices()[0])});
                (void)meb;
                const ClosedBall bound{vec({0, 0}), 2.0};
                const auto v = mc_volume([&](const Vector& x) { return P.contains(planar_detail::to2(x), 0.0) && D.contains(planar_detail::to2(x), 0.0); },
                                         bound, 20000, rng);
                t.at_most(v.estimate - 3 * v.stderr_, std::sqrt(a * b));
                t.at_most(std::sqrt(a * b), 0.25 * kPi);
            }
            return t.report("intersection-volume", cfg);
        });

        add("ball-in-intersection", "B(center, rho(r, R)) lies in K cap K^c", [](const SuiteConfig& cfg) {
            auto rng = rng_for("ball-in-intersection", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int n = 2; n <= 3; ++n) {
                for (int k = 0; k < cfg.trials(30); ++k) {
                    const auto A = random_set(rng, n, 3 + rng.uniform_int(0, 4), 0.45);
                    const auto K = c_dual_of_points(A);
                    const CHull H(A);
                    const double r = K.inradius();
                    const auto ob = K.outball();
                    const double R = ob.radius;
                    const double t1 = std::min(1 - R, 1 - std::sqrt(1 - R * R));
                    const double t2 = std::min(r, 1 - std::sqrt(1 - (1 - r) * (1 - r)));
                    const Vector c = t1 >= t2 ? ob.center : K.deep_point();
                    const double rho = std::max(t1, t2);
                    for (int s = 0; s < 200; ++s) {
                        const Vector x = c + rho * rng.unit_vector(n);
                        t.add(std::min(K.margin(x), H.margin(x)));
                    }
                }
            }
            return t.report("ball-in-intersection", cfg);
        });

        add("santalo-fixed-volume", "Vol(K) Vol(K^c) <= (r(1-r))^n kappa_n^2 with r the equal-volume radius", [](const SuiteConfig& cfg) {
            auto rng = rng_for("santalo-fixed-volume", cfg);
            Tally t(tol_or(cfg, 1e-12));
            for (int k = 0; k < cfg.trials(200); ++k) {
                const auto P = random_hull_2d(rng);
                const double a = P.area(), b = c_dual_planar(P).area();
                const double r = std::sqrt(a / kPi);
                t.at_most(a * b, std::pow(r * (1 - r), 2) * kPi * kPi);
            }
            return t.report("santalo-fixed-volume", cfg);
        });

        // ---- lenses

        add("klens-properties", "k-lens duality, radii, nesting and convexity of the 1-lens volume", [](const SuiteConfig& cfg) {
            auto rng = rng_for("klens-properties", cfg);
            Tally t(tol_or(cfg, 1e-12));
            for (int n = 2; n <= 4; ++n)
                for (int k = 0; k <= n; ++k) {
                    const Matrix Q = orthogonal_complement(rng.unit_vector(n));
                    Matrix E(n, k);
                    for (int j = 0; j < k; ++j) E.col(j) = j < Q.cols() ? Vector(Q.col(j)) : Vector(rng.unit_vector(n));
                    if (k == n) E = Matrix::Identity(n, n);
                    const double d = rng.uniform(0.05, 0.95);
                    const KLens L(rng.in_ball(n, 0.3), E, d);
                    const auto DD = klens_dual(klens_dual(L));
                    t.equal(DD.d, L.d);
                    const Matrix P1 = L.E * L.E.transpose(), P2m = DD.E * DD.E.transpose();
                    t.add(-(P1 - P2m).cwiseAbs().maxCoeff());
                    t.equal(klens_radii(L).outradius + klens_radii(klens_dual(L)).inradius, 1.0);
                }
            // Convexity in d of the 1-lens volume, by second differences.
            for (int n = 2; n <= 5; ++n) {
                const double h = 0.01;
                for (double d = 0.02; d + h < 1.0; d += 0.05) {
                    const double f0 = klens_volume(n, 1, d - h).value, f1 = klens_volume(n, 1, d).value, f2 = klens_volume(n, 1, d + h).value;
                    t.add((f0 - 2 * f1 + f2) + 1e-12);
                }
            }
            // Nesting L_k in L_{k+1} for nested subspaces.
            for (int s = 0; s < cfg.trials(4000); ++s) {
                const int n = 3;
                const Vector x = rng.in_ball(n, 1.0);
                const KLens a(Vector::Zero(n), unit(n, 0), 0.6);
                Matrix E2(n, 2);
                E2 << 1, 0, 0, 1, 0, 0;
                const KLens b(Vector::Zero(n), E2, 0.6);
                if (klens_contains(a, x, 0.0)) t.add(-std::max(0.0, klens_defect(b, x)));
            }
            return t.report("klens-properties", cfg);
        });

        add("klens-membership", "k = n-1 lens equals the two-ball intersection", [](const SuiteConfig& cfg) {
            auto rng = rng_for("klens-membership", cfg);
            Tally t(tol_or(cfg, 0.0));
            for (int n = 2; n <= 4; ++n) {
                const double d = rng.uniform(0.2, 0.95), c = std::sqrt(1 - d * d);
                Matrix E(n, n - 1);
                for (int j = 0; j < n - 1; ++j) E.col(j) = unit(n, j);
                const KLens L(Vector::Zero(n), E, d);
                const BallIntersectionBody B({{c * unit(n, n - 1), 1.0}, {-c * unit(n, n - 1), 1.0}});
                for (int s = 0; s < cfg.trials(10000); ++s) {
                    const Vector x = rng.in_ball(n, 1.0);
                    if (std::abs(B.margin(x)) < 1e-9) continue;
                    t.add(klens_contains(L, x, 0.0) == B.contains(x, 0.0) ? 0.0 : -1.0);
                }
            }
            return t.report("klens-membership", cfg);
        });

        add("klens-volume", "k-lens volume vs Monte Carlo and closed forms", [](const SuiteConfig& cfg) {
            auto rng = rng_for("klens-volume", cfg);
            Tally t(tol_or(cfg, 1e-8));
            t.equal(klens_volume(2, 1, 1.0).value, kPi);
            t.equal(klens_volume(2, 1, std::sqrt(2.0) / 2).value, kPi / 2 - 1);
            for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}})
                for (double d : {0.3, 0.6, 0.9}) {
                    Matrix E(n, k);
                    for (int j = 0; j < k; ++j) E.col(j) = unit(n, j);
                    const KLens L(Vector::Zero(n), E, d);
                    const auto mc = mc_volume([&](const Vector& x) { return klens_contains(L, x, 0.0); }, {Vector::Zero(n), d},
                                              static_cast<std::size_t>(cfg.trials(100000)), rng);
                    t.add(3 * mc.stderr_ - std::abs(mc.estimate - klens_volume(n, k, d).value));
                }
            return t.report("klens-volume", cfg);
        });

        add("two-point-shadow", "volume of the c-hull of two moving points is convex in t", [](const SuiteConfig& cfg) {
            Tally t(tol_or(cfg, 1e-10));
            for (int n = 2; n <= 5; ++n) {
                std::vector<double> F;
                for (int k = 0; k <= 40; ++k) {
                    const double D = 0.05 + 1.9 * k / 40.0;
                    F.push_back(klens_volume(n, 1, D / 2).value);
                }
                for (std::size_t k = 1; k + 1 < F.size(); ++k) t.add(F[k - 1] - 2 * F[k] + F[k + 1]);
            }
            return t.report("two-point-shadow", cfg);
        });

        // ---- planar

        add("mahler-plane", "sqrt(2pi - 4) <= sqrt(area K) + sqrt(area K^c) <= sqrt(pi)", [](const SuiteConfig& cfg) {
            auto rng = rng_for("mahler-plane", cfg);
            Tally t(tol_or(cfg, 1e-9));
            const double lo = std::sqrt(2 * kPi - 4), hi = std::sqrt(kPi);
            for (int k = 0; k < cfg.trials(500); ++k) {
                const double m = mahler_2d(random_hull_2d(rng));
                t.add(std::min(m - lo, hi - m));
            }
            const double s = std::sqrt(2.0) / 2;
            t.equal(mahler_2d(*intersect_unit_disks({P2(-s, 0), P2(s, 0)})), lo);
            t.equal(mahler_2d(ArcPolygon::disk(P2(0, 0), 0.5)), hi);
            return t.report("mahler-plane", cfg);
        });

        add("mahler-minimizer", "g(x) = sqrt(x - sin x) + sqrt(pi - x - sin x) is minimal at pi/2", [](const SuiteConfig& cfg) {
            Tally t(tol_or(cfg, 1e-6));
            double best = std::numeric_limits<double>::infinity(), arg = 0;
            const int m = 200000;
            for (int k = 1; k < m; ++k) {
                const double x = kPi * k / m;
                const double a = x - std::sin(x), b = kPi - x - std::sin(x);
                if (b < 0) continue;
                const double g = std::sqrt(a) + std::sqrt(b);
                if (g < best) {
                    best = g;
                    arg = x;
                }
            }
            t.equal(arg, kPi / 2);
            t.equal(best, std::sqrt(2 * kPi - 4));
            return t.report("mahler-minimizer", cfg);
        });

        add("borisenko-2d", "perimeter is at most that of the lens of equal area", [](const SuiteConfig& cfg) {
            auto rng = rng_for("borisenko-2d", cfg);
            Tally t(tol_or(cfg, 1e-6));
            for (int k = 0; k < cfg.trials(300); ++k) {
                const auto P = random_hull_2d(rng);
                const double a = P.area();
                // Lens of arc angle theta has area theta - sin(theta) and perimeter 2 theta.
                double lo = 0, hi = kPi;
                for (int it = 0; it < 100; ++it) {
                    const double m = 0.5 * (lo + hi);
                    (planar_lens_area(m) < a ? lo : hi) = m;
                }
                t.at_most(P.perimeter(), 2 * lo);
            }
            return t.report("borisenko-2d", cfg, "sampled falsification harness in the plane");
        });

        add("planar-dual-vs-grid", "exact planar dual agrees with the grid dual", [](const SuiteConfig& cfg) {
            auto rng = rng_for("planar-dual-vs-grid", cfg);
            const auto g = make_grid(2, 720);
            Tally t(tol_or(cfg, 1e-12));
            for (int k = 0; k < cfg.trials(50); ++k) {
                const auto P = random_hull_2d(rng);
                const auto exact = planar_samples(c_dual_planar(P), g);
                const auto grid = c_dual(planar_samples(P, g));
                t.add(-(exact.values() - grid.values()).cwiseAbs().maxCoeff());
            }
            return t.report("planar-dual-vs-grid", cfg);
        });

        add("spindle-hull-idempotent", "hull of hull boundary samples and A is hull(A)", [](const SuiteConfig& cfg) {
            auto rng = rng_for("spindle-hull-idempotent", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int k = 0; k < cfg.trials(50); ++k) {
                PointSet A;
                const auto H = random_hull_2d(rng, &A);
                auto pts = to_points2(A);
                for (const auto& [p, nrm] : H.boundary_samples(16)) pts.push_back(p);
                t.add(-hausdorff_planar(spindle_hull(pts), H));
            }
            return t.report("spindle-hull-idempotent", cfg);
        });

        add("exposed-faces", "boundary points lie on faces S(y,1) with y a dual vertex; corners on two faces", [](const SuiteConfig& cfg) {
            auto rng = rng_for("exposed-faces", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int k = 0; k < cfg.trials(50); ++k) {
                const auto H = random_hull_2d(rng);
                if (H.is_disk()) continue;
                const auto D = c_dual_planar(H);
                auto faces_at = [&](const P2& x) {
                    int c = 0;
                    for (const auto& y : D.vertices()) c += std::abs((x - y).norm() - 1.0) <= 1e-9;
                    return c;
                };
                for (const auto& [p, nrm] : H.boundary_samples(8)) t.add(faces_at(p) >= 1 ? 0.0 : -1.0);
                for (const auto& v : H.corners()) t.add(faces_at(H.vertex(v)) >= 2 ? 0.0 : -1.0);
            }
            return t.report("exposed-faces", cfg);
        });

        add("steiner-2d-class", "planar Steiner symmetral keeps area and curvature >= 1", [](const SuiteConfig& cfg) {
            auto rng = rng_for("steiner-2d-class", cfg);
            Tally t(tol_or(cfg, 1e-6));
            for (int k = 0; k < cfg.trials(100); ++k) {
                const auto P = random_hull_2d(rng);
                if (P.area() < 1e-6) continue;
                const Vector u = rng.unit_vector(2);
                const auto S = steiner_2d(P, P2(u[0], u[1]), 256);
                t.add(-std::abs(S.area - P.area()) / P.area());
                t.add(S.min_curvature - 1.0);
            }
            return t.report("steiner-2d-class", cfg);
        });

        add("steiner-dual-volume", "Vol(K) Vol(K^c) <= Vol(S_u K) Vol((S_u K)^c)", [](const SuiteConfig& cfg) {
            auto rng = rng_for("steiner-dual-volume", cfg);
            Tally t(tol_or(cfg, 1e-7));
            for (int k = 0; k < cfg.trials(40); ++k) {
                const auto P = random_hull_2d(rng);
                if (P.area() < 1e-4) continue;
                const Vector u = rng.unit_vector(2);
                const auto S = steiner_symmetral_areas(P, P2(u[0], u[1]));
                t.add(S.area * S.dual_area - P.area() * c_dual_planar(P).area());
            }
            return t.report("steiner-dual-volume", cfg, "exact support integration of the planar symmetral");
        });

        add("shadow-convexity", "area of the c-hull along a planar shadow system is convex", [](const SuiteConfig& cfg) {
            auto rng = rng_for("shadow-convexity", cfg);
            Tally t(tol_or(cfg, 1e-8));
            for (int k = 0; k < cfg.trials(50); ++k) {
                std::vector<P2> pts;
                std::vector<double> vel;
                const int m = 2 + rng.uniform_int(0, 4);
                for (int i = 0; i < m; ++i) {
                    const Vector p = rng.in_ball(2, 0.4);
                    pts.emplace_back(p[0], p[1]);
                    vel.push_back(rng.uniform(-1, 1));
                }
                const Vector v = rng.unit_vector(2);
                std::vector<double> ts;
                for (int s = 0; s <= 60; ++s) ts.push_back(-0.6 + 1.2 * s / 60.0);
                const auto rows = shadow_system_2d(pts, vel, P2(v[0], v[1]), ts);
                for (std::size_t s = 1; s + 1 < rows.size(); ++s) {
                    if (std::isinf(rows[s - 1].area) || std::isinf(rows[s].area) || std::isinf(rows[s + 1].area)) continue;
                    t.add(rows[s - 1].area - 2 * rows[s].area + rows[s + 1].area);
                }
            }
            return t.report("shadow-convexity", cfg);
        });

        // ---- extremality and hulls

        add("extremal-subset", "ext_c(conv_c A) is a subset of A, exactly", [](const SuiteConfig& cfg) {
            auto rng = rng_for("extremal-subset", cfg);
            Tally t(tol_or(cfg, 0.0));
            for (int k = 0; k < cfg.trials(200); ++k) {
                PointSet A;
                const auto H = random_hull_2d(rng, &A);
                for (const auto& v : extremal_points_2d(H).points) {
                    bool found = false;
                    for (const auto& a : A) found = found || (a[0] == v.x() && a[1] == v.y());
                    t.add(found ? 0.0 : -1.0);
                }
            }
            return t.report("extremal-subset", cfg);
        });

        add("extremality-duality", "corners of K correspond to arcs of K^c; arc points to dual vertices", [](const SuiteConfig& cfg) {
            auto rng = rng_for("extremality-duality", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int k = 0; k < cfg.trials(50); ++k) {
                const auto H = random_hull_2d(rng);
                if (H.is_disk()) continue;
                const auto D = c_dual_planar(H);
                for (const auto& a : H.merged_arcs()) {
                    // Interior arc point x with normal u: x - u is the arc center, a vertex of K^c.
                    const double th = planar_detail::angle_of(a.start - a.center) + 0.5 * a.angle;
                    const P2 x = a.center + P2(std::cos(th), std::sin(th));
                    const auto cert = certify_extremality(H, x);
                    t.add(cert.status == Extremality::non_extremal ? 0.0 : -1.0);
                    double near = std::numeric_limits<double>::infinity();
                    for (const auto& y : D.vertices()) near = std::min(near, (y - a.center).norm());
                    t.add(-near);
                    // Corner: extremal, and x - u for a cone ray u lands on a dual vertex.
                    const auto cc = certify_extremality(H, a.start);
                    t.add(cc.status == Extremality::extremal ? 0.0 : -1.0);
                    near = std::numeric_limits<double>::infinity();
                    for (const auto& y : D.vertices()) near = std::min(near, (y - (a.start - cc.normal)).norm());
                    t.add(-near);
                }
            }
            return t.report("extremality-duality", cfg);
        });

        add("boundary-pairing", "for boundary x with normal u, x - u lies on the boundary of K^c", [](const SuiteConfig& cfg) {
            auto rng = rng_for("boundary-pairing", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int k = 0; k < cfg.trials(50); ++k) {
                const auto H = random_hull_2d(rng);
                const auto D = c_dual_planar(H);
                for (const auto& [p, nrm] : H.boundary_samples(8)) t.add(-std::abs(D.margin(p - nrm)));
            }
            return t.report("boundary-pairing", cfg);
        });

        add("nonextremal-smooth", "interior arc points have a unique supporting unit disk", [](const SuiteConfig& cfg) {
            auto rng = rng_for("nonextremal-smooth", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int k = 0; k < cfg.trials(50); ++k) {
                const auto H = random_hull_2d(rng);
                if (H.is_disk()) continue;
                for (const auto& a : H.merged_arcs()) {
                    const double th = planar_detail::angle_of(a.start - a.center) + 0.4 * a.angle;
                    const P2 x = a.center + P2(std::cos(th), std::sin(th));
                    const P2 u = (x - a.center).normalized();
                    // Tilting the normal by +-delta makes B(x - u', 1) miss part of H.
                    for (double dlt : {-1e-3, 1e-3}) {
                        const P2 ut(u.x() * std::cos(dlt) - u.y() * std::sin(dlt), u.x() * std::sin(dlt) + u.y() * std::cos(dlt));
                        const double reach = H.support_value(ut) - x.dot(ut);
                        t.add(reach > 1e-12 ? 0.0 : -1.0);
                    }
                }
            }
            return t.report("nonextremal-smooth", cfg);
        });

        add("spindle-convexity", "conv_c of two hull points stays in the hull", [](const SuiteConfig& cfg) {
            auto rng = rng_for("spindle-convexity", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int k = 0; k < cfg.trials(50); ++k) {
                PointSet A;
                const auto H = random_hull_2d(rng, &A);
                const auto pts = H.boundary_samples(8);
                for (int s = 0; s < 10; ++s) {
                    const P2 p = pts[rng.uniform_int(0, static_cast<int>(pts.size()) - 1)].first;
                    const P2 q = pts[rng.uniform_int(0, static_cast<int>(pts.size()) - 1)].first;
                    const double D = (q - p).norm();
                    if (D < 1e-9) continue;
                    const P2 m = 0.5 * (p + q), e = (q - p) / D, w = planar_detail::perp(e);
                    const double c = std::sqrt(std::max(0.0, 1 - 0.25 * D * D)), half = std::asin(0.5 * D);
                    for (double sgn : {1.0, -1.0})
                        for (int j = 0; j <= 20; ++j) {
                            const double a = -half + 2 * half * j / 20.0;
                            const P2 x = m - sgn * c * w + std::sin(a) * e + sgn * std::cos(a) * w;
                            t.add(H.margin(x));
                        }
                }
            }
            return t.report("spindle-convexity", cfg);
        });

        add("caratheodory", "decompositions of size <= n+1 (n on the boundary) re-verify membership", [](const SuiteConfig& cfg) {
            auto rng = rng_for("caratheodory", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int n = 2; n <= 3; ++n)
                for (int k = 0; k < cfg.trials(n == 2 ? 200 : 40); ++k) {
                    const auto A = random_set(rng, n, n + 3, 0.7);
                    if (min_enclosing_ball(A).radius >= 0.98) continue;
                    const Vector x = min_enclosing_ball(A).center + rng.in_ball(n, 0.4);
                    const auto r = caratheodory_decompose(x, A);
                    if (!r.inside) continue;
                    t.add(r.recheck_margin);
                    const std::size_t cap = r.on_boundary ? n : n + 1;
                    t.add(r.subset.size() <= cap ? 0.0 : -1.0);
                }
            return t.report("caratheodory", cfg);
        });

        add("iterative-hull", "A_j reaches conv_c(A) once 2^j > n", [](const SuiteConfig& cfg) {
            auto rng = rng_for("iterative-hull", cfg);
            Tally t(tol_or(cfg, 1e-3));
            std::string note;
            const PointSet square{vec({-0.4, -0.4}), vec({0.4, -0.4}), vec({0.4, 0.4}), vec({-0.4, 0.4})};
            const auto r2 = iterative_c_hull(square, 2);
            t.add(-r2.hausdorff[1]);
            for (double m : r2.max_outside) t.add(-m);
            note += "n=2 j=1 gap " + std::to_string(r2.hausdorff[0]);
            IterativeHullOptions opt;
            opt.boundary_probes = 128;
            opt.interior_probes = 64;
            for (int s = 0; s < cfg.trials(2); ++s) {
                opt.seed = cfg.seed + s;
                const auto A = random_set(rng, 3, 5, 0.6);
                if (min_enclosing_ball(A).radius >= 0.98) continue;
                const auto r3 = iterative_c_hull(A, 2, opt);
                t.add(-r3.hausdorff[1]);
                for (double m : r3.max_outside) t.add(-m);
                note += "; n=3 j=1 gap " + std::to_string(r3.hausdorff[0]);
            }
            return t.report("iterative-hull", cfg, note);
        });

        // ---- constant width and symmetrizations

        add("constant-width", "(K + K^c)/2 has constant width 1 and in-radius >= 1 - sqrt(n/(2(n+1)))", [](const SuiteConfig& cfg) {
            auto rng = rng_for("constant-width", cfg);
            Tally t(tol_or(cfg, 1e-6));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, grid_size(n));
                for (int k = 0; k < cfg.trials(10); ++k) {
                    const auto K = sample_support(random_body(rng, n), g);
                    const auto W = constant_width_average(K);
                    t.add(1e-6 - 1e-9 - W.deviation);
                    t.at_most(1 - std::sqrt(n / (2.0 * (n + 1))), inball(W.body).radius);
                }
            }
            const auto R = planar_samples(reuleaux_triangle(), make_grid(2, 720));
            t.add(-hausdorff_planar(reuleaux_triangle(), c_dual_planar(reuleaux_triangle())));
            t.add(-width_deviation(R));
            return t.report("constant-width", cfg);
        });

        add("schramm-volume", "(Vol K / Vol(B/2))^{1/n} >= 2 - sqrt 2 for constant width bodies", [](const SuiteConfig& cfg) {
            auto rng = rng_for("schramm-volume", cfg);
            Tally t(tol_or(cfg, 0.0));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, grid_size(n));
                for (int k = 0; k < cfg.trials(5); ++k) {
                    const auto W = constant_width_average(sample_support(random_body(rng, n), g));
                    // Inner approximation: grid half-spaces shrunk by the Lipschitz-mesh band.
                    const auto ib = inball(W.body);
                    const auto v = mc_volume([&](const Vector& x) { return classify_by_grid(W.body, x) == Membership::inside; },
                                             {ib.center, 1.0}, 20000, rng);
                    const double half_ball = unit_ball_volume(n) * std::pow(0.5, n);
                    const double ratio = std::pow((v.estimate + 3 * v.stderr_) / half_ball, 1.0 / n);
                    t.add(ratio - (2 - std::sqrt(2.0)));
                }
            }
            return t.report("schramm-volume", cfg);
        });

        add("schramm-general", "ball of radius sqrt(5/4 - R^2) - 1/2 around a common center", [](const SuiteConfig& cfg) {
            auto rng = rng_for("schramm-general", cfg);
            Tally t(tol_or(cfg, 1e-9));
            for (int n = 2; n <= 3; ++n) {
                const auto g = make_grid(n, n == 2 ? 360 : 1024);
                for (int k = 0; k < cfg.trials(4); ++k) {
                    std::vector<ClosedBall> balls;
                    for (int i = 0; i < 6 + n; ++i) balls.emplace_back(0.35 * rng.unit_vector(n), 1.0);
                    const auto K = sample_support(BallIntersectionBody(balls), g);
                    // Grid maxima can miss the true out-radius between directions.
                    const double R = std::max(K.values().maxCoeff(), c_dual(K).values().maxCoeff()) + 1e-3;
                    if (R >= 1.0) continue;
                    const auto rep = schramm_ball_check(K, R, 1e-9, n == 2);
                    t.add(rep.holds ? 0.0 : -1.0);
                    t.add(-rep.witness_violation);
                }
            }
            return t.report("schramm-general", cfg);
        });

        add("basin-parity", "T averages to K iff h_T - h_K is even", [](const SuiteConfig& cfg) {
            auto rng = rng_for("basin-parity", cfg);
            Tally t(tol_or(cfg, 0.0));
            const auto g = make_grid(2, 720);
            for (int k = 0; k < cfg.trials(20); ++k) {
                const auto T = sample_support(random_body(rng, 2), g);
                const auto W = constant_width_average(T);
                t.add(basin_parity_check(W, T).in_basin() ? 0.0 : -1.0);
                const auto T2 = sample_support(random_body(rng, 2), g);
                t.add(basin_parity_check(W, T2).consistent() ? 0.0 : -1.0);
            }
            return t.report("basin-parity", cfg);
        });

        add("quadrant-width", "B cap (R+)^n has width >= 1 and K^c strictly inside K", [](const SuiteConfig& cfg) {
            Tally t(tol_or(cfg, 1e-12));
            for (int n = 2; n <= 3; ++n) {
                const auto rep = quadrant_width_check(quadrant_body(make_grid(n, grid_size(n))));
                t.at_most(1.0, rep.min_width);
                t.at_most(rep.max_dual_excess, 0.0);
                t.add(rep.max_gap > 0.1 ? 0.0 : -1.0);
            }
            return t.report("quadrant-width", cfg);
        });

        add("curvature-pairing", "r_i + s_{n-i} = 1 on smooth planar bodies", [](const SuiteConfig& cfg) {
            auto rng = rng_for("curvature-pairing", cfg);
            Tally t(tol_or(cfg, 1e-3));
            for (int k = 0; k < cfg.trials(100); ++k) {
                const auto F = FourierBody2d::random(rng);
                const auto oracle = F.oracle();
                SupportFunction hK = [&](const Vector& w) { return oracle(w).value; };
                SupportFunction hKc = [&](const Vector& w) { return 1.0 - oracle(-w).value; };
                const double th = rng.uniform(0, 2 * kPi);
                const auto rep = curvature_pairing(hK, hKc, vec({std::cos(th), std::sin(th)}), 1e-4);
                t.equal(rep.pair_sums[0], 1.0);
            }
            return t.report("curvature-pairing", cfg);
        });

        add("ellipse-exponent", "dual of a thin ellipse has profile exponent 4/3", [](const SuiteConfig& cfg) {
            Tally t(tol_or(cfg, 0.05));
            std::vector<double> angles;
            for (int k = -400; k <= 400; ++k) angles.push_back(0.5 * kPi + 0.0005 * k);
            for (double b : {0.3, 0.5}) {
                const auto rep = ellipse_dual_profile(b, angles);
                t.equal(rep.exponent, 4.0 / 3.0);
                t.add(-std::abs(rep.coefficient / rep.predicted_coefficient - 1.0));
            }
            return t.report("ellipse-exponent", cfg, "coefficient compared with (3/4)(2b/(1-b))^{1/3}");
        });

        // ---- counterexample and Kneser-Poulsen

        add("r3-counterexample", "reference psi constants and kappa_h < 1", [](const SuiteConfig& cfg) {
            Tally t(tol_or(cfg, 0.01));
            const auto r = r3_counterexample();
            t.equal(detail::psi(P2(0.9996, 2.9972)), 6.313);
            t.equal(r.psi_mean, 5.9545);
            t.add(1.0 - r.kappa_h > 0 ? 0.0 : -1.0);
            t.add(1.0 - r.scan_min_curvature > 0 ? 0.0 : -1.0);
            return t.report("r3-counterexample", cfg,
                            "psi(0.9996, 2.9972) = " + std::to_string(detail::psi(P2(0.9996, 2.9972))) + ", mean " +
                                std::to_string(r.psi_mean) + ", kappa_h " + std::to_string(r.kappa_h));
        });

        add("KP-gromov", "dual volume grows under contraction, N <= n+1", [](const SuiteConfig& cfg) {
            auto rng = rng_for("KP-gromov", cfg);
            Tally t(tol_or(cfg, 0.0));
            for (int n = 2; n <= 3; ++n)
                for (int N = 2; N <= n + 1; ++N) {
                    const auto r = kp_contraction_experiment(n, N, cfg.trials(n == 2 ? 300 : 100), rng, 20000);
                    for (std::size_t i = 0; i < r.instances; ++i) t.add(r.worst_margin);
                }
            // Identity map: equal volumes; a single point: the unit ball.
            const auto X = random_set(rng, 2, 3, 0.5);
            t.equal(dual_volume_2d(X), dual_volume_2d(X));
            t.equal(dual_volume_2d(PointSet(3, X[0])), kPi);
            return t.report("KP-gromov", cfg);
        });

        add("KP-beyond", "dual volume under contraction for N > n+1 (report only)", [](const SuiteConfig& cfg) {
            auto rng = rng_for("KP-beyond", cfg);
            auto r = kp_contraction_experiment(2, 5, cfg.trials(200), rng);
            r.tag = "KP-beyond";
            r.seed = cfg.seed;
            r.report_only = true;
            return r;
        });

        add("skewed-lens", "the two skewed lenses meet, with an explicit common point", [](const SuiteConfig& cfg) {
            auto rng = rng_for("skewed-lens", cfg);
            Tally t(tol_or(cfg, 1e-9));
            int valid = 0;
            while (valid < cfg.trials(1000)) {
                const Vector u0 = rng.in_ball(2, 0.9), u1 = rng.in_ball(2, 0.9), z = rng.in_ball(2, 0.6);
                if ((u1 - u0).norm() > 2.0 || !one_lens_angle_contains(Vector::Zero(2), u0, u1, 0.0)) continue;
                ++valid;
                const auto r = skewed_lens_intersection(u0, u1, z);
                t.add(r.intersect ? 0.0 : -1.0);
                if (r.intersect && r.radius > 0) {
                    // Planar oracle: the witness is inside both exact lens hulls.
                    const auto L1 = spindle_hull({planar_detail::to2(u1 + z), planar_detail::to2(u0 - z)});
                    const auto L2 = spindle_hull({planar_detail::to2(-u1 + z), planar_detail::to2(-u0 - z)});
                    t.add(std::min(L1.margin(planar_detail::to2(r.witness)), L2.margin(planar_detail::to2(r.witness))));
                }
            }
            return t.report("skewed-lens", cfg);
        });

        return R;
    }();
    return registry;
}

inline std::vector<std::string> suite_tags()
{
    std::vector<std::string> tags;
    for (const auto& e : suite_registry()) tags.push_back(e.tag);
    return tags;
}

inline VerificationReport run_suite(const std::string& tag, const SuiteConfig& cfg = {})
{
    for (const auto& e : suite_registry())
        if (e.tag == tag) {
            auto r = e.run(cfg);
            r.tag = tag;
            r.seed = cfg.seed;
            return r;
        }
    throw std::invalid_argument("unknown suite tag: " + tag);
}

// Runs suites concurrently; results come back in the order of the tags.
inline std::vector<VerificationReport> run_suites(const std::vector<std::string>& tags, const SuiteConfig& cfg = {})
{
    for (const auto& tag : tags) {
        const auto all = suite_tags();
        if (std::find(all.begin(), all.end(), tag) == all.end()) throw std::invalid_argument("unknown suite tag: " + tag);
    }
    std::vector<std::future<VerificationReport>> jobs;
    for (const auto& tag : tags) jobs.push_back(std::async(std::launch::async, [tag, cfg] { return run_suite(tag, cfg); }));
    std::vector<VerificationReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace ballbody
