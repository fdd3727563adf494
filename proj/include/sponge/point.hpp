#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace sponge {

/// A point of the ambient space. By convention the last coordinate is the
/// distinguished axis h wherever a family needs one.
struct Point {
    std::vector<double> coords;

    Point() = default;
    Point(std::initializer_list<double> cs) : coords(cs) {}
    explicit Point(std::vector<double> cs) : coords(std::move(cs)) {}
    explicit Point(std::size_t dim, double fill = 0.0) : coords(dim, fill) {}

    std::size_t dim() const { return coords.size(); }
    double& operator[](std::size_t i) { return coords[i]; }
    double operator[](std::size_t i) const { return coords[i]; }

    double h() const { return coords.back(); }
    double& h() { return coords.back(); }

    bool operator==(const Point& o) const { return coords == o.coords; }
    bool operator!=(const Point& o) const { return coords != o.coords; }
};

using PointSet = std::vector<Point>;

inline bool is_finite(const Point& p) {
    for (double v : p.coords)
        if (!std::isfinite(v)) return false;
    return true;
}

inline void require_valid(const Point& p) {
    if (p.dim() == 0) throw std::invalid_argument("point must have dimension >= 1");
    if (!is_finite(p)) throw std::invalid_argument("point has non-finite coordinate");
}

inline void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
}

inline void require_nonempty_uniform(const PointSet& ps) {
    if (ps.empty()) throw std::invalid_argument("point set must be nonempty");
    for (const Point& p : ps) {
        require_valid(p);
        if (p.dim() != ps.front().dim())
            throw std::invalid_argument("point set has mixed dimensions");
    }
}

inline Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Point r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Point r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Point operator*(double s, const Point& a) {
    Point r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = s * a[i];
    return r;
}

inline Point operator-(const Point& a) { return -1.0 * a; }

inline double dot(const Point& a, const Point& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Point& a) { return dot(a, a); }
inline double norm(const Point& a) { return std::sqrt(norm_sq(a)); }

inline double dist_sq(const Point& a, const Point& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist_sq(a, b)); }

/// Max-abs coordinate difference; handy for tolerance comparisons in tests.
inline double max_abs_diff(const Point& a, const Point& b) {
    require_same_dim(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline bool approx_equal(const Point& a, const Point& b, double tol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

/// Drops exact duplicates, keeping first occurrences. Joins and meets of
/// multisets only depend on the underlying set.
inline PointSet dedupe(const PointSet& ps) {
    PointSet out;
    for (const Point& p : ps) {
        bool seen = false;
        for (const Point& q : out)
            if (q == p) { seen = true; break; }
        if (!seen) out.push_back(p);
    }
    return out;
}

}  // namespace sponge
