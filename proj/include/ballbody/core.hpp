#pragma once

#include <Eigen/Dense>

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballbody {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using PointSet = std::vector<Vector>;

inline constexpr double kPi = std::numbers::pi;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation needed a nonempty body and got an empty one.
class EmptyBodyError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class ConvergenceError : public GeometryError {
public:
    ConvergenceError(const std::string& what, double residual)
        : GeometryError(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

inline void require(bool ok, const std::string& msg)
{
    if (!ok) throw std::invalid_argument(msg);
}

inline void require_dim(const Vector& x, Eigen::Index n, const char* what)
{
    if (x.size() != n)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(n) + ")");
}

inline void require_finite(const Vector& x, const char* what)
{
    if (!x.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

inline Vector vec(std::initializer_list<double> xs)
{
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline Vector unit(int n, int i)
{
    Vector e = Vector::Zero(n);
    e[i] = 1.0;
    return e;
}

struct ToleranceProfile {
    double geom_eps = 1e-9;
    double solver_tol = 1e-9;
    double quad_tol = 1e-10;
    double mc_confidence_sigmas = 3.0;

    void validate() const
    {
        require(geom_eps > 0 && solver_tol > 0 && quad_tol > 0 && mc_confidence_sigmas > 0,
                "ToleranceProfile: all tolerances must be strictly positive");
    }
};

struct ClosedBall {
    Vector center;
    double radius = 0.0;

    ClosedBall() = default;
    ClosedBall(Vector c, double r) : center(std::move(c)), radius(r)
    {
        require(std::isfinite(radius) && radius >= 0.0, "ClosedBall: radius must be finite and >= 0");
        require_finite(center, "ClosedBall");
    }

    int dim() const { return static_cast<int>(center.size()); }
    bool contains(const Vector& x, double eps = 0.0) const { return (x - center).norm() <= radius + eps; }
};

class RigidMotion {
public:
    RigidMotion(Matrix rotation, Vector translation)
        : U_(std::move(rotation)), x0_(std::move(translation))
    {
        require(U_.rows() == U_.cols() && U_.rows() == x0_.size(), "RigidMotion: shape mismatch");
        const double err = (U_.transpose() * U_ - Matrix::Identity(U_.rows(), U_.cols())).cwiseAbs().maxCoeff();
        require(err <= 1e-12, "RigidMotion: rotation is not orthogonal");
    }

    static RigidMotion identity(int n) { return {Matrix::Identity(n, n), Vector::Zero(n)}; }
    static RigidMotion translation(const Vector& t)
    {
        return {Matrix::Identity(t.size(), t.size()), t};
    }
    static RigidMotion planar_rotation(double angle)
    {
        Matrix U(2, 2);
        U << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
        return {U, Vector::Zero(2)};
    }

    const Matrix& rotation() const { return U_; }
    const Vector& translation() const { return x0_; }
    int dim() const { return static_cast<int>(x0_.size()); }

    Vector operator()(const Vector& x) const
    {
        require_dim(x, x0_.size(), "RigidMotion");
        return x0_ + U_ * x;
    }

private:
    Matrix U_;
    Vector x0_;
};

inline Vector reflect(const Vector& x, const Vector& u, double eps = 1e-9)
{
    require_dim(x, u.size(), "reflect");
    if (std::abs(u.norm() - 1.0) > eps) throw std::invalid_argument("reflect: mirror normal is not a unit vector");
    return x - 2.0 * x.dot(u) * u;
}

inline PointSet apply_motion(const RigidMotion& g, const PointSet& A)
{
    PointSet out;
    out.reserve(A.size());
    for (const auto& a : A) out.push_back(g(a));
    return out;
}

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n)
{
    require(n >= 0, "unit_ball_volume: negative dimension");
    switch (n) {
    case 0: return 1.0;
    case 1: return 2.0;
    case 2: return kPi;
    case 3: return 4.0 * kPi / 3.0;
    default: return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    }
}

// xoshiro256** seeded through splitmix64 from (seed, stream). Distributions are
// implemented here rather than with <random> so sequences match across standard libraries.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed = 0, std::uint64_t stream = 0) : seed_(seed), stream_(stream)
    {
        std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
        for (auto& w : s_) w = splitmix(x);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64()
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int lo, int hi) { return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1)); }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    Vector normal_vector(int n)
    {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    Vector unit_vector(int n)
    {
        for (;;) {
            Vector v = normal_vector(n);
            const double r = v.norm();
            if (r > 1e-12) return v / r;
        }
    }

    // uniform in the ball B(0, radius)
    Vector in_ball(int n, double radius = 1.0)
    {
        return unit_vector(n) * (radius * std::pow(uniform(), 1.0 / n));
    }

private:
    static std::uint64_t splitmix(std::uint64_t& x)
    {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t seed_, stream_;
    std::uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Near-uniform directions on S^{n-1}. Every grid built here is closed under negation.
class DirectionGrid {
public:
    DirectionGrid(Matrix dirs, double mesh) : dirs_(std::move(dirs)), mesh_(mesh)
    {
        require(dirs_.rows() > 0 && dirs_.cols() >= 1, "DirectionGrid: empty");
        for (Eigen::Index i = 0; i < dirs_.rows(); ++i)
            require(std::abs(dirs_.row(i).norm() - 1.0) <= 1e-12, "DirectionGrid: direction not unit");
        index_antipodes();
    }

    int dim() const { return static_cast<int>(dirs_.cols()); }
    int size() const { return static_cast<int>(dirs_.rows()); }
    double mesh() const { return mesh_; }
    const Matrix& matrix() const { return dirs_; }
    Vector operator[](int i) const { return dirs_.row(i).transpose(); }
    int antipode(int i) const { return antipode_[i]; }
    bool symmetric() const
    {
        return std::all_of(antipode_.begin(), antipode_.end(), [](int j) { return j >= 0; });
    }

    // Index of a grid direction equal to u up to 1e-9, or -1.
    int find(const Vector& u) const
    {
        auto it = lookup_.find(key(u));
        return it == lookup_.end() ? -1 : it->second;
    }

    int nearest(const Vector& u) const
    {
        Eigen::Index i;
        (dirs_ * u).maxCoeff(&i);
        return static_cast<int>(i);
    }

private:
    using Key = std::vector<long long>;
    static Key key(const Vector& u)
    {
        Key k(u.size());
        for (Eigen::Index i = 0; i < u.size(); ++i) k[i] = std::llround(u[i] * 1e9);
        return k;
    }

    void index_antipodes()
    {
        for (int i = 0; i < size(); ++i) lookup_.emplace(key((*this)[i]), i);
        antipode_.assign(size(), -1);
        for (int i = 0; i < size(); ++i) antipode_[i] = find(-(*this)[i]);
    }

    Matrix dirs_;
    double mesh_;
    std::vector<int> antipode_;
    std::map<Key, int> lookup_;
};

namespace detail {

// Kronecker sequence with the generalized golden ratio (root of x^{d+1} = x + 1).
inline Matrix kronecker_points(int d, int count)
{
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
    Matrix pts(count, d);
    for (int j = 0; j < d; ++j) {
        const double alpha = std::fmod(std::pow(1.0 / phi, j + 1), 1.0);
        for (int i = 0; i < count; ++i) {
            const double v = 0.5 + alpha * (i + 1);
            pts(i, j) = v - std::floor(v);
        }
    }
    return pts;
}

inline double inverse_normal_cdf(double p)
{
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

// Largest angle from probe directions to the grid, times a safety factor.
inline double certify_mesh(const Matrix& dirs)
{
    const int n = static_cast<int>(dirs.cols());
    const int m = static_cast<int>(dirs.rows());
    const int probes = std::max(4000, static_cast<int>(4e7 / std::max(1, m * n)));
    SeededRng rng(0x6d657368ULL, 0);
    double worst = 0.0;
    constexpr int kChunk = 256;
    Matrix P(kChunk, n);
    for (int done = 0; done < probes; done += kChunk) {
        for (int i = 0; i < kChunk; ++i) P.row(i) = rng.unit_vector(n).transpose();
        const Matrix dots = P * dirs.transpose();
        for (int i = 0; i < kChunk; ++i) {
            const double c = std::clamp(dots.row(i).maxCoeff(), -1.0, 1.0);
            worst = std::max(worst, std::acos(c));
        }
    }
    return 1.25 * worst;
}

}  // namespace detail

// Uniform angles for n = 2. For n >= 3 the grid is the sign-flip orbit of points in the
// positive orthant when 2^n divides m, and otherwise a hemisphere set plus its negation.
inline DirectionGrid fibonacci_grid(int n, int m)
{
    require(n >= 2, "fibonacci_grid: dimension must be >= 2");
    require(m >= 2 * n, "fibonacci_grid: need at least 2n directions");
    if (n == 2) {
        Matrix d(m, 2);
        for (int k = 0; k < m; ++k) {
            const double a = 2.0 * kPi * k / m;
            d(k, 0) = std::cos(a);
            d(k, 1) = std::sin(a);
        }
        // cos/sin of 2*pi*k/m are not exactly antipodal in floating point; snap pairs.
        if (m % 2 == 0)
            for (int k = m / 2; k < m; ++k) d.row(k) = -d.row(k - m / 2);
        for (int k = 0; k < m; ++k) d.row(k).normalize();
        return {d, kPi / m};
    }
    require(m % 2 == 0, "fibonacci_grid: m must be even for n >= 3");

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const int orthants = 1 << n;
    Matrix d(m, n);
    if (m % orthants == 0) {
        const int base = m / orthants;
        Matrix B(base, n);
        if (n == 3) {
            for (int i = 0; i < base; ++i) {
                const double z = (i + 0.5) / base;
                const double f = (i + 0.5) * golden;
                const double phi = 0.5 * kPi * (f - std::floor(f));
                const double r = std::sqrt(1.0 - z * z);
                B.row(i) << r * std::cos(phi), r * std::sin(phi), z;
            }
        } else {
            const Matrix K = detail::kronecker_points(n, base);
            for (int i = 0; i < base; ++i) {
                for (int j = 0; j < n; ++j) B(i, j) = detail::inverse_normal_cdf(0.5 + 0.5 * K(i, j));
                B.row(i).normalize();
            }
        }
        int row = 0;
        for (int s = 0; s < orthants; ++s)
            for (int i = 0; i < base; ++i) {
                for (int j = 0; j < n; ++j) d(row, j) = ((s >> j) & 1) ? -B(i, j) : B(i, j);
                ++row;
            }
    } else {
        const int half = m / 2;
        Matrix H(half, n);
        if (n == 3) {
            for (int i = 0; i < half; ++i) {
                const double z = (i + 0.5) / half;
                const double f = i * golden;
                const double phi = 2.0 * kPi * (f - std::floor(f));
                const double r = std::sqrt(1.0 - z * z);
                H.row(i) << r * std::cos(phi), r * std::sin(phi), z;
            }
        } else {
            const Matrix K = detail::kronecker_points(n, half);
            for (int i = 0; i < half; ++i) {
                for (int j = 0; j < n; ++j) H(i, j) = detail::inverse_normal_cdf(K(i, j));
                if (H(i, n - 1) < 0) H.row(i) = -H.row(i);
                H.row(i).normalize();
            }
        }
        d.topRows(half) = H;
        d.bottomRows(half) = -H;
    }
    return {d, detail::certify_mesh(d)};
}

inline std::shared_ptr<const DirectionGrid> make_grid(int n, int m)
{
    return std::make_shared<const DirectionGrid>(fibonacci_grid(n, m));
}

// Orthonormal basis (columns) of the orthogonal complement of span(E).
inline Matrix orthogonal_complement(const Matrix& E)
{
    const Eigen::Index n = E.rows();
    if (E.cols() == 0) return Matrix::Identity(n, n);
    Eigen::HouseholderQR<Matrix> qr(E);
    const Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
    return Q.rightCols(n - E.cols());
}

inline bool is_orthonormal(const Matrix& E, double tol = 1e-12)
{
    return (E.transpose() * E - Matrix::Identity(E.cols(), E.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace ballbody
