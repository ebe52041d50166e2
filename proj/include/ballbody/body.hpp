#pragma once

#include "core.hpp"
#include "meb.hpp"

#include <functional>
#include <limits>
#include <optional>

namespace ballbody {

enum class Membership { inside, outside, boundary_band };

inline const char* to_string(Membership m)
{
    switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    default: return "boundary-band";
    }
}

struct SupportPoint {
    double value = 0.0;
    Vector point;
};

struct SupportResult {
    double value = 0.0;
    Vector point;
    double kkt_residual = 0.0;
};

namespace detail {

// Lawson-Hanson non-negative least squares: min |A x - b| subject to x >= 0.
inline Vector nnls(const Matrix& A, const Vector& b, int max_iter = 200)
{
    const Eigen::Index m = A.cols();
    Vector x = Vector::Zero(m);
    std::vector<bool> passive(m, false);
    for (int outer = 0; outer < max_iter; ++outer) {
        const Vector w = A.transpose() * (b - A * x);
        Eigen::Index j = -1;
        double wmax = 1e-14;
        for (Eigen::Index i = 0; i < m; ++i)
            if (!passive[i] && w[i] > wmax) {
                wmax = w[i];
                j = i;
            }
        if (j < 0) break;
        passive[j] = true;
        for (int inner = 0; inner < max_iter; ++inner) {
            std::vector<Eigen::Index> P;
            for (Eigen::Index i = 0; i < m; ++i)
                if (passive[i]) P.push_back(i);
            Matrix AP(A.rows(), static_cast<Eigen::Index>(P.size()));
            for (std::size_t c = 0; c < P.size(); ++c) AP.col(c) = A.col(P[c]);
            const Vector zP = AP.completeOrthogonalDecomposition().solve(b);
            Vector z = Vector::Zero(m);
            for (std::size_t c = 0; c < P.size(); ++c) z[P[c]] = zP[c];
            bool feasible = true;
            for (auto i : P) feasible = feasible && z[i] > 0;
            if (feasible) {
                x = z;
                break;
            }
            double alpha = 1.0;
            for (auto i : P)
                if (z[i] <= 0) alpha = std::min(alpha, x[i] / (x[i] - z[i]));
            x += alpha * (z - x);
            for (auto i : P)
                if (x[i] <= 1e-15) {
                    passive[i] = false;
                    x[i] = 0.0;
                }
        }
    }
    return x;
}

}  // namespace detail

// Finite intersection of closed balls with radii in [0, 1].
class BallIntersectionBody {
public:
    BallIntersectionBody(std::vector<ClosedBall> balls, ToleranceProfile tol = {}) : balls_(std::move(balls)), tol_(tol)
    {
        tol_.validate();
        require(!balls_.empty(), "BallIntersectionBody: no balls");
        n_ = balls_.front().dim();
        require(n_ >= 1, "BallIntersectionBody: dimension must be >= 1");
        for (const auto& b : balls_) {
            require_dim(b.center, n_, "BallIntersectionBody");
            require(b.radius >= 0.0 && b.radius <= 1.0 + 1e-15, "BallIntersectionBody: radius must lie in [0, 1]");
        }
        const auto mm = ball_intersection_minimax(balls_);
        deep_point_ = mm.point;
        inradius_ = -mm.value;
        empty_ = mm.value > tol_.solver_tol;
        if (!empty_) build_spheres();
    }

    static BallIntersectionBody c_dual_of_points(const PointSet& A, ToleranceProfile tol = {})
    {
        require(!A.empty(), "c_dual_of_points: empty point set");
        std::vector<ClosedBall> balls;
        balls.reserve(A.size());
        for (const auto& a : A) balls.emplace_back(a, 1.0);
        return {std::move(balls), tol};
    }

    int dim() const { return n_; }
    bool empty() const { return empty_; }
    const std::vector<ClosedBall>& balls() const { return balls_; }
    const ToleranceProfile& tolerances() const { return tol_; }
    bool enumerable() const { return enumerable_; }

    // Center and radius of the largest inscribed ball.
    const Vector& deep_point() const
    {
        check_nonempty();
        return deep_point_;
    }
    double inradius() const
    {
        check_nonempty();
        return std::max(0.0, inradius_);
    }

    // min_i (r_i - |x - a_i|); positive inside, concave in x.
    double margin(const Vector& x) const
    {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& b : balls_) m = std::min(m, b.radius - (x - b.center).norm());
        return m;
    }

    Membership classify(const Vector& x, std::optional<double> band = std::nullopt) const
    {
        check_nonempty();
        require_dim(x, n_, "contains");
        const double eps = band.value_or(tol_.geom_eps);
        const double m = margin(x);
        if (m > eps) return Membership::inside;
        if (m < -eps) return Membership::outside;
        return Membership::boundary_band;
    }

    bool contains(const Vector& x, double eps = 1e-12) const { return margin(x) >= -eps; }

    SupportResult support(const Vector& u) const
    {
        check_nonempty();
        require_dim(u, n_, "support_value");
        require(std::abs(u.norm() - 1.0) <= 1e-9, "support_value: direction is not a unit vector");
        if (enumerable_) {
            double best = -std::numeric_limits<double>::infinity();
            Vector best_x;
            for_each_candidate(u, [&](const Vector& x) {
                const double v = x.dot(u);
                if (v > best && feasible(x)) {
                    best = v;
                    best_x = x;
                }
            });
            if (best_x.size() == n_) return {best, best_x, kkt_residual(best_x, u)};
        }
        return support_projected_gradient(u);
    }

    double support_value(const Vector& u) const { return support(u).value; }

    // Projected gradient ascent with Dykstra projections. Used when the active-set
    // enumeration is too large, and as an independent check of it.
    SupportResult support_projected_gradient(const Vector& u, int max_iter = 100000) const
    {
        check_nonempty();
        Vector x = deep_point_;
        double residual = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= max_iter; ++k) {
            const Vector next = project(x + (0.5 / std::sqrt(static_cast<double>(k))) * u);
            const double moved = (next - x).norm();
            x = next;
            if (moved < 1e-13 || k % 64 == 0) {
                residual = kkt_residual(x, u);
                if (residual <= tol_.solver_tol && moved < 1e-11) return {x.dot(u), x, residual};
            }
        }
        residual = kkt_residual(x, u);
        if (residual <= 1e-6) return {x.dot(u), x, residual};
        throw ConvergenceError("support_value: projected gradient did not converge", residual);
    }

    // Dykstra alternating projections onto the intersection.
    Vector project(const Vector& y, int max_sweeps = 20000) const
    {
        const std::size_t m = balls_.size();
        std::vector<Vector> inc(m, Vector::Zero(n_));
        Vector x = y;
        for (int s = 0; s < max_sweeps; ++s) {
            double change = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const Vector z = x + inc[i];
                const Vector p = project_ball(balls_[i], z);
                inc[i] = z - p;
                change = std::max(change, (p - x).norm());
                x = p;
            }
            if (change < 1e-15) break;
        }
        return x;
    }

    // Point of K farthest from x (exact by enumeration when available).
    SupportPoint farthest(const Vector& x) const
    {
        check_nonempty();
        require_dim(x, n_, "farthest");
        if (enumerable_) {
            double best = -1.0;
            Vector best_y;
            for (const auto& s : spheres_) {
                auto try_point = [&](const Vector& y) {
                    const double d = (y - x).norm();
                    if (d > best && feasible(y)) {
                        best = d;
                        best_y = y;
                    }
                };
                if (s.Q.cols() == 1) {
                    try_point(s.c + s.rho * s.Q.col(0));
                    try_point(s.c - s.rho * s.Q.col(0));
                    continue;
                }
                const Vector w = s.Q.transpose() * (s.c - x);
                const double wn = w.norm();
                if (wn > 1e-12)
                    try_point(s.c + s.rho * (s.Q * w) / wn);
                else
                    try_point(s.c + s.rho * s.Q.col(0));
            }
            if (best_y.size() == n_) return {best, best_y};
        }
        // Fall back to support maximization over a fine direction set.
        const int m = n_ == 1 ? 2 : (n_ == 2 ? 4096 : 8 * 1024);
        const auto grid = n_ == 1 ? DirectionGrid(Matrix{{1.0}, {-1.0}}, 0.0) : fibonacci_grid(n_, m);
        double best = -1.0;
        Vector best_y;
        for (int i = 0; i < grid.size(); ++i) {
            const auto s = support(grid[i]);
            const double d = (s.point - x).norm();
            if (d > best) {
                best = d;
                best_y = s.point;
            }
        }
        return {best, best_y};
    }

    // Exact out-ball of K.
    EnclosingBall outball() const
    {
        check_nonempty();
        PointSet seeds;
        for (int i = 0; i < n_; ++i) {
            seeds.push_back(support(unit(n_, i)).point);
            seeds.push_back(support(-unit(n_, i)).point);
        }
        return enclosing_ball_coreset(seeds, [&](const Vector& c) { return farthest(c).point; }, 1e-13);
    }

    double kkt_residual(const Vector& x, const Vector& u) const
    {
        std::vector<Vector> normals;
        for (const auto& b : balls_) {
            const double d = (x - b.center).norm();
            if (d >= b.radius - 1e-8) {
                if (d < 1e-14) return 0.0;  // radius-0 ball: full normal cone
                normals.push_back((x - b.center) / d);
            }
        }
        if (normals.empty()) return u.norm();
        Matrix N(n_, static_cast<Eigen::Index>(normals.size()));
        for (std::size_t i = 0; i < normals.size(); ++i) N.col(i) = normals[i];
        const Vector lam = detail::nnls(N, u);
        return (N * lam - u).norm();
    }

private:
    struct Sphere {
        Vector c;
        double rho;
        Matrix Q;  // orthonormal basis of the directions orthogonal to the centers' affine hull
    };

    void check_nonempty() const
    {
        if (empty_) throw EmptyBodyError("operation on an empty ball-intersection body");
    }

    static Vector project_ball(const ClosedBall& b, const Vector& z)
    {
        const Vector d = z - b.center;
        const double r = d.norm();
        if (r <= b.radius) return z;
        return b.center + d * (b.radius / r);
    }

    double feas_eps() const { return 1e-10; }

    bool feasible(const Vector& x) const
    {
        for (const auto& b : balls_)
            if ((x - b.center).norm() > b.radius + feas_eps()) return false;
        return true;
    }

    // The maximizer of a linear functional lies on the intersection sphere of its
    // active set; on that sphere it is the point in the direction of P u.
    template <class F>
    void for_each_candidate(const Vector& u, F&& f) const
    {
        for (const auto& s : spheres_) {
            if (s.Q.cols() == 1) {
                f(Vector(s.c + s.rho * s.Q.col(0)));
                f(Vector(s.c - s.rho * s.Q.col(0)));
                continue;
            }
            const Vector w = s.Q.transpose() * u;
            const double wn = w.norm();
            if (wn > 1e-12)
                f(Vector(s.c + s.rho * (s.Q * w) / wn));
            else
                f(Vector(s.c + s.rho * s.Q.col(0)));
        }
    }

    void build_spheres()
    {
        const int m = static_cast<int>(balls_.size());
        enumerable_ = detail::subset_count(m, n_) <= 60000;
        if (!enumerable_) return;
        detail::for_each_subset(m, n_, [&](const std::vector<int>& S) {
            const auto& b0 = balls_[S[0]];
            const int k = static_cast<int>(S.size());
            Matrix D(n_, k - 1);
            Vector rhs(k - 1);
            for (int j = 1; j < k; ++j) {
                const auto& bj = balls_[S[j]];
                D.col(j - 1) = bj.center - b0.center;
                rhs[j - 1] = 0.5 * (D.col(j - 1).squaredNorm() + b0.radius * b0.radius - bj.radius * bj.radius);
            }
            Vector c = b0.center;
            if (k > 1) {
                const Matrix G = D.transpose() * D;
                Eigen::FullPivLU<Matrix> lu(G);
                if (lu.rank() < k - 1) return true;
                c += D * lu.solve(rhs);
            }
            const double rho2 = b0.radius * b0.radius - (c - b0.center).squaredNorm();
            if (rho2 < -1e-12) return true;
            const double rho = std::sqrt(std::max(0.0, rho2));
            for (const auto& b : balls_)
                if ((c - b.center).norm() - rho > b.radius + feas_eps()) return true;
            Matrix Q = orthogonal_complement(D);
            if (Q.cols() == 1) {
                const bool plus = feasible(c + rho * Q.col(0)), minus = feasible(c - rho * Q.col(0));
                if (!plus && !minus) return true;
            }
            spheres_.push_back({c, rho, std::move(Q)});
            return true;
        });
    }

    std::vector<ClosedBall> balls_;
    ToleranceProfile tol_;
    int n_ = 0;
    bool empty_ = false;
    bool enumerable_ = false;
    Vector deep_point_;
    double inradius_ = 0.0;
    std::vector<Sphere> spheres_;
};

inline BallIntersectionBody c_dual_of_points(const PointSet& A, ToleranceProfile tol = {})
{
    return BallIntersectionBody::c_dual_of_points(A, tol);
}

inline double support_value(const BallIntersectionBody& K, const Vector& u) { return K.support(u).value; }

enum class Provenance { primal_solved, dual_formula, combined, imported };

inline const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::primal_solved: return "primal-solved";
    case Provenance::dual_formula: return "dual-formula";
    case Provenance::combined: return "combined";
    default: return "imported";
    }
}

inline Provenance provenance_from_string(const std::string& s)
{
    if (s == "primal-solved") return Provenance::primal_solved;
    if (s == "dual-formula") return Provenance::dual_formula;
    if (s == "combined") return Provenance::combined;
    if (s == "imported") return Provenance::imported;
    throw std::invalid_argument("unknown provenance tag: " + s);
}

using SupportOracle = std::function<SupportPoint(const Vector&)>;

// Support function of a body sampled on a direction grid, optionally with an exact
// off-grid oracle and the boundary point attaining each grid value.
class SupportSampledBody {
public:
    SupportSampledBody(std::shared_ptr<const DirectionGrid> grid, Vector values, Provenance provenance,
                       SupportOracle oracle = {}, Matrix points = {})
        : grid_(std::move(grid)), values_(std::move(values)), provenance_(provenance), oracle_(std::move(oracle)),
          points_(std::move(points))
    {
        require(grid_ != nullptr, "SupportSampledBody: null grid");
        require(values_.size() == grid_->size(), "SupportSampledBody: value count does not match the grid");
        require(values_.allFinite(), "SupportSampledBody: non-finite support value");
        require(points_.size() == 0 || (points_.rows() == grid_->size() && points_.cols() == grid_->dim()),
                "SupportSampledBody: boundary point table has the wrong shape");
        const double c = std::cos(std::min(grid_->mesh(), 1.5));
        lipschitz_ = std::max(std::max(values_.maxCoeff(), 0.0) / c, values_.cwiseAbs().maxCoeff());
    }

    const std::shared_ptr<const DirectionGrid>& grid_ptr() const { return grid_; }
    const DirectionGrid& grid() const { return *grid_; }
    int dim() const { return grid_->dim(); }
    int size() const { return grid_->size(); }
    const Vector& values() const { return values_; }
    double value(int i) const { return values_[i]; }
    double lipschitz_bound() const { return lipschitz_; }
    Provenance provenance() const { return provenance_; }
    bool has_oracle() const { return static_cast<bool>(oracle_); }
    const SupportOracle& oracle() const { return oracle_; }
    bool has_points() const { return points_.size() > 0; }
    const Matrix& points() const { return points_; }
    Vector point(int i) const { return points_.row(i).transpose(); }

    // h(u) off the grid: exact through the oracle, else nearest grid value (error <= L*mesh).
    double evaluate(const Vector& u) const
    {
        if (oracle_) return oracle_(u).value;
        return values_[grid_->nearest(u)];
    }

    SupportPoint evaluate_point(const Vector& u) const
    {
        if (oracle_) return oracle_(u);
        const int i = grid_->nearest(u);
        return {values_[i], has_points() ? point(i) : Vector()};
    }

    double width(int i) const
    {
        const int j = grid_->antipode(i);
        require(j >= 0, "width: grid is not symmetric");
        return values_[i] + values_[j];
    }

private:
    std::shared_ptr<const DirectionGrid> grid_;
    Vector values_;
    double lipschitz_ = 0.0;
    Provenance provenance_;
    SupportOracle oracle_;
    Matrix points_;
};

inline SupportSampledBody sample_support(const BallIntersectionBody& K, std::shared_ptr<const DirectionGrid> grid)
{
    require(grid != nullptr && grid->dim() == K.dim(), "sample_support: grid dimension mismatch");
    if (K.empty()) throw EmptyBodyError("sample_support: empty body");
    Vector values(grid->size());
    Matrix pts(grid->size(), grid->dim());
    for (int i = 0; i < grid->size(); ++i) {
        const auto r = K.support((*grid)[i]);
        values[i] = r.value;
        pts.row(i) = r.point.transpose();
    }
    auto body = std::make_shared<const BallIntersectionBody>(K);
    SupportOracle oracle = [body](const Vector& u) {
        const auto r = body->support(u);
        return SupportPoint{r.value, r.point};
    };
    return {std::move(grid), std::move(values), Provenance::primal_solved, std::move(oracle), std::move(pts)};
}

// Support function given in closed form.
inline SupportSampledBody sample_function(std::shared_ptr<const DirectionGrid> grid, const SupportOracle& oracle,
                                          Provenance provenance = Provenance::primal_solved)
{
    Vector values(grid->size());
    Matrix pts(grid->size(), grid->dim());
    bool have_points = true;
    for (int i = 0; i < grid->size(); ++i) {
        const auto s = oracle((*grid)[i]);
        values[i] = s.value;
        if (s.point.size() == grid->dim())
            pts.row(i) = s.point.transpose();
        else
            have_points = false;
    }
    return {std::move(grid), std::move(values), provenance, oracle, have_points ? pts : Matrix()};
}

inline SupportSampledBody ball_support(std::shared_ptr<const DirectionGrid> grid, const Vector& c, double r)
{
    return sample_function(std::move(grid), [c, r](const Vector& u) { return SupportPoint{c.dot(u) + r, c + r * u}; });
}

inline SupportSampledBody c_dual(const SupportSampledBody& K)
{
    const auto& g = K.grid();
    require(g.symmetric(), "c_dual: grid is not closed under negation");
    Vector values(g.size());
    for (int i = 0; i < g.size(); ++i) values[i] = 1.0 - K.value(g.antipode(i));
    Matrix pts;
    if (K.has_points()) {
        pts.resize(g.size(), g.dim());
        for (int i = 0; i < g.size(); ++i) pts.row(i) = K.points().row(g.antipode(i)) + g.matrix().row(i);
    }
    SupportOracle oracle;
    if (K.has_oracle()) {
        oracle = [inner = K.oracle()](const Vector& u) {
            auto s = inner(-u);
            return SupportPoint{1.0 - s.value, s.point.size() ? Vector(s.point + u) : Vector()};
        };
    }
    return {K.grid_ptr(), std::move(values), Provenance::dual_formula, std::move(oracle), std::move(pts)};
}

inline SupportSampledBody minkowski_combine(const SupportSampledBody& K, const SupportSampledBody& T, double lambda)
{
    require(K.grid_ptr() == T.grid_ptr() || K.grid().matrix() == T.grid().matrix(), "minkowski_combine: grid mismatch");
    require(lambda >= 0.0 && lambda <= 1.0, "minkowski_combine: lambda must lie in [0, 1]");
    Vector values = (1.0 - lambda) * K.values() + lambda * T.values();
    Matrix pts;
    if (K.has_points() && T.has_points()) pts = (1.0 - lambda) * K.points() + lambda * T.points();
    SupportOracle oracle;
    if (K.has_oracle() && T.has_oracle()) {
        oracle = [a = K.oracle(), b = T.oracle(), lambda](const Vector& u) {
            const auto s = a(u), t = b(u);
            Vector p;
            if (s.point.size() && t.point.size()) p = (1.0 - lambda) * s.point + lambda * t.point;
            return SupportPoint{(1.0 - lambda) * s.value + lambda * t.value, p};
        };
    }
    return {K.grid_ptr(), std::move(values), Provenance::combined, std::move(oracle), std::move(pts)};
}

inline SupportSampledBody translate(const SupportSampledBody& K, const Vector& c)
{
    const auto& g = K.grid();
    Vector values = K.values() + g.matrix() * c;
    Matrix pts;
    if (K.has_points()) pts = K.points().rowwise() + c.transpose();
    SupportOracle oracle;
    if (K.has_oracle())
        oracle = [inner = K.oracle(), c](const Vector& u) {
            auto s = inner(u);
            return SupportPoint{s.value + c.dot(u), s.point.size() ? Vector(s.point + c) : Vector()};
        };
    return {K.grid_ptr(), std::move(values), K.provenance(), std::move(oracle), std::move(pts)};
}

inline std::shared_ptr<const DirectionGrid> segment_grid()
{
    Matrix d(2, 1);
    d << 1.0, -1.0;
    return std::make_shared<const DirectionGrid>(d, 0.0);
}

// Orthogonal projection onto span(E); the result lives in coordinates of the basis E.
inline SupportSampledBody project(const SupportSampledBody& K, const Matrix& E, int grid_size = 360)
{
    require(E.rows() == K.dim() && E.cols() >= 1 && E.cols() <= K.dim(), "project: basis has the wrong shape");
    require(is_orthonormal(E), "project: basis is not orthonormal");
    const int k = static_cast<int>(E.cols());
    auto grid = k == 1 ? segment_grid() : make_grid(k, grid_size);
    SupportOracle oracle = [K, E](const Vector& v) {
        const auto s = K.evaluate_point(E * v);
        return SupportPoint{s.value, s.point.size() ? Vector(E.transpose() * s.point) : Vector()};
    };
    auto out = sample_function(grid, oracle, K.provenance());
    if (!K.has_oracle()) return {grid, out.values(), K.provenance(), {}, out.has_points() ? out.points() : Matrix()};
    return out;
}

// Section by the hyperplane {x : <normal, x> = offset}, in coordinates of an
// orthonormal basis of normal-perp.
inline BallIntersectionBody section(const BallIntersectionBody& K, const Vector& normal, double offset,
                                   Matrix* basis_out = nullptr)
{
    require_dim(normal, K.dim(), "section");
    require(std::abs(normal.norm() - 1.0) <= 1e-9, "section: hyperplane normal is not a unit vector");
    require(K.dim() >= 2, "section: dimension must be >= 2");
    const Matrix B = orthogonal_complement(normal);
    std::vector<ClosedBall> out;
    for (const auto& b : K.balls()) {
        const double d = std::abs(normal.dot(b.center) - offset);
        if (d > b.radius + K.tolerances().geom_eps) throw EmptyBodyError("section: hyperplane misses a defining ball");
        out.emplace_back(B.transpose() * b.center, std::sqrt(std::max(0.0, b.radius * b.radius - d * d)));
    }
    if (basis_out) *basis_out = B;
    BallIntersectionBody S(std::move(out), K.tolerances());
    if (S.empty()) throw EmptyBodyError("section: empty section");
    return S;
}

struct HausdorffEstimate {
    double grid_max = 0.0;     // max grid deviation of support values
    double error_bound = 0.0;  // grid_max plus the Lipschitz-mesh term
    double value() const { return grid_max; }
};

inline HausdorffEstimate hausdorff(const SupportSampledBody& K, const SupportSampledBody& T)
{
    require(K.grid().matrix() == T.grid().matrix(), "hausdorff: grid mismatch");
    const double gm = (K.values() - T.values()).cwiseAbs().maxCoeff();
    return {gm, gm + (K.lipschitz_bound() + T.lipschitz_bound()) * K.grid().mesh()};
}

struct DiameterEstimate {
    double value = 0.0;        // largest width found
    double upper_bound = 0.0;  // certified from the grid
    Vector direction;
};

namespace detail {

// Local maximization on the unit sphere by a shrinking pattern search.
inline Vector refine_on_sphere(const std::function<double(const Vector&)>& f, Vector u, double step,
                               double min_step = 1e-10)
{
    const int n = static_cast<int>(u.size());
    double fu = f(u);
    while (step > min_step) {
        const Matrix T = orthogonal_complement(u);
        bool improved = false;
        for (int j = 0; j < T.cols() && !improved; ++j)
            for (double s : {1.0, -1.0}) {
                Vector v = std::cos(step) * u + std::sin(step) * s * T.col(j);
                v.normalize();
                const double fv = f(v);
                if (fv > fu) {
                    u = v;
                    fu = fv;
                    improved = true;
                    break;
                }
            }
        if (!improved) step *= 0.5;
        (void)n;
    }
    return u;
}

}  // namespace detail

inline DiameterEstimate diameter(const SupportSampledBody& K, bool refine = true)
{
    const auto& g = K.grid();
    require(g.symmetric(), "diameter: grid is not symmetric");
    int arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.size(); ++i)
        if (K.width(i) > best) {
            best = K.width(i);
            arg = i;
        }
    DiameterEstimate est{best, best / std::cos(std::min(g.mesh(), 1.5)), g[arg]};
    if (refine && K.has_oracle() && g.dim() >= 2) {
        auto w = [&](const Vector& u) { return K.evaluate(u) + K.evaluate(-u); };
        const Vector u = detail::refine_on_sphere(w, g[arg], std::max(g.mesh(), 1e-3));
        const double v = w(u);
        if (v > est.value) {
            est.value = v;
            est.direction = u;
        }
        est.upper_bound = std::max(est.upper_bound, est.value);
    }
    return est;
}

inline double min_width(const SupportSampledBody& K)
{
    double w = std::numeric_limits<double>::infinity();
    for (int i = 0; i < K.size(); ++i) w = std::min(w, K.width(i));
    return w;
}

inline double mean_width(const SupportSampledBody& K)
{
    require(K.grid().symmetric(), "mean_width: grid is not symmetric");
    return K.values().mean();
}

// Exact out-ball of a sampled body that carries a point oracle: seed with the grid
// boundary points, then add the farthest point max_u (h(u) - <c,u>) until stable.
inline EnclosingBall outball(const SupportSampledBody& K)
{
    require(K.has_points(), "outball: body carries no boundary points");
    PointSet seeds;
    for (int i = 0; i < K.size(); ++i) seeds.push_back(K.point(i));
    auto meb = min_enclosing_ball(seeds);
    if (!K.has_oracle() || K.dim() < 2) return meb;
    auto farthest = [&](const Vector& c) {
        const Vector values = K.values() - K.grid().matrix() * c;
        Eigen::Index arg;
        values.maxCoeff(&arg);
        auto f = [&](const Vector& u) { return K.evaluate(u) - c.dot(u); };
        const Vector u = detail::refine_on_sphere(f, K.grid()[static_cast<int>(arg)], K.grid().mesh(), 1e-9);
        return K.evaluate_point(u).point;
    };
    return enclosing_ball_coreset(seeds, farthest, 1e-12);
}

// In-radius of K in S_n: 1 - Outrad(K^c), with the in-center the out-center of K^c.
inline EnclosingBall inball(const SupportSampledBody& K)
{
    auto b = outball(c_dual(K));
    b.radius = dual_inradius(std::min(1.0, b.radius));
    return b;
}

struct VolumeEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t hits = 0;
    std::size_t samples = 0;
    bool degenerate = false;
};

inline VolumeEstimate mc_volume(const std::function<bool(const Vector&)>& member, const ClosedBall& bound,
                                std::size_t samples, SeededRng& rng)
{
    require(samples > 0, "mc_volume: need at least one sample");
    const int n = bound.dim();
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s)
        if (member(bound.center + rng.in_ball(n, bound.radius))) ++hits;
    const double vb = unit_ball_volume(n) * std::pow(bound.radius, n);
    const double p = static_cast<double>(hits) / samples;
    VolumeEstimate v;
    v.estimate = vb * p;
    v.stderr_ = vb * std::sqrt(p * (1.0 - p) / samples);
    v.hits = hits;
    v.samples = samples;
    v.degenerate = hits == 0;
    return v;
}

// Smallest defining ball: a valid bounding ball for membership sampling.
inline ClosedBall bounding_ball(const BallIntersectionBody& K)
{
    const auto& bs = K.balls();
    return *std::min_element(bs.begin(), bs.end(), [](const ClosedBall& a, const ClosedBall& b) { return a.radius < b.radius; });
}

// conv_c(A) = A^cc. Membership is decided exactly by the farthest point of A^c.
class CHull {
public:
    explicit CHull(PointSet A, ToleranceProfile tol = {}) : A_(std::move(A)), dual_(BallIntersectionBody::c_dual_of_points(A_, tol))
    {
        if (dual_.empty()) throw GeometryError("CHull: out-radius of A exceeds 1, the c-hull is the whole space");
        meb_ = min_enclosing_ball(A_);
    }

    const PointSet& points() const { return A_; }
    const BallIntersectionBody& dual() const { return dual_; }
    int dim() const { return dual_.dim(); }
    const EnclosingBall& point_meb() const { return meb_; }

    // R_{A^c}(x): x lies in conv_c(A) iff this is at most 1.
    double dual_circumradius(const Vector& x) const { return dual_.farthest(x).value; }

    double margin(const Vector& x) const { return 1.0 - dual_circumradius(x); }

    Membership classify(const Vector& x, double eps = 1e-9) const
    {
        require_dim(x, dim(), "contains");
        for (const auto& a : A_)
            if ((a - x).norm() <= 1e-15) return Membership::inside;
        const double m = margin(x);
        if (m > eps) return Membership::inside;
        if (m < -eps) return Membership::outside;
        return Membership::boundary_band;
    }

    bool contains(const Vector& x, double eps = 1e-12) const { return margin(x) >= -eps; }

    double support_value(const Vector& u) const { return 1.0 - dual_.support(-u).value; }

    ClosedBall bounding_ball() const { return {meb_.center, meb_.radius}; }

private:
    PointSet A_;
    BallIntersectionBody dual_;
    EnclosingBall meb_;
};

// Outer test against sampled support values of conv_c(A) with the Lipschitz-mesh band.
inline Membership classify_by_grid(const SupportSampledBody& hull, const Vector& x, double eps = 1e-9)
{
    const Vector gap = hull.grid().matrix() * x - hull.values();
    const double g = gap.maxCoeff();
    if (g > eps) return Membership::outside;
    const double band = (hull.lipschitz_bound() + x.norm()) * hull.grid().mesh();
    if (g < -band - eps) return Membership::inside;
    return Membership::boundary_band;
}

struct HalfDualSumWitness {
    Vector x;
    Vector z;
    double max_defect = 0.0;
};

// x in (K^c + T^c)/2 iff Outrad((K - x) u (x - T)) <= 1. If that ball is B(z, 1) then
// x + z lies in K^c, x - z lies in T^c, and x is their midpoint.
inline std::pair<bool, HalfDualSumWitness> half_dual_sum_membership(const BallIntersectionBody& K,
                                                                   const BallIntersectionBody& T, const Vector& x,
                                                                   double eps = 1e-9)
{
    if (K.empty() || T.empty()) throw EmptyBodyError("half_dual_sum_membership: empty body");
    require(K.dim() == T.dim(), "half_dual_sum_membership: dimension mismatch");
    require_dim(x, K.dim(), "half_dual_sum_membership");
    const int n = K.dim();
    PointSet seeds;
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            seeds.push_back(K.support(s * unit(n, i)).point - x);
            seeds.push_back(x - T.support(s * unit(n, i)).point);
        }
    auto farthest = [&](const Vector& z) {
        const auto a = K.farthest(x + z);
        const auto b = T.farthest(x - z);
        return a.value >= b.value ? Vector(a.point - x) : Vector(x - b.point);
    };
    const auto ball = enclosing_ball_coreset(seeds, farthest, 1e-13);
    HalfDualSumWitness w{x, ball.center, ball.radius};
    return {ball.radius <= 1.0 + eps, w};
}

}  // namespace ballbody
