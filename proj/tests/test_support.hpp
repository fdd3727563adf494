#pragma once

// Shared generators for the property suites. Random inputs are kept away
// from relation boundaries (relative margin ~1e-6 or larger) so that the
// epsilon-free relation checks are stable.

#include <random>

#include "sponge/sponge.hpp"

namespace testsup {

using namespace sponge;

inline Point random_point(std::mt19937_64& rng, std::size_t dim, double lo = -2.0,
                          double hi = 2.0) {
    std::uniform_real_distribution<double> uni(lo, hi);
    Point p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = uni(rng);
    return p;
}

/// Uniform point in the ball of the given center and radius.
inline Point random_in_ball(std::mt19937_64& rng, const Point& center, double radius) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (;;) {
        Point d(center.dim());
        for (std::size_t i = 0; i < d.dim(); ++i) d[i] = uni(rng);
        if (norm_sq(d) <= 1.0) return center + radius * d;
    }
}

/// Right-bounded inner-product set: points inside a ball that sits strictly
/// inside some ball with the origin on its boundary.
inline PointSet ip_right_bounded_set(std::mt19937_64& rng, std::size_t dim,
                                     std::size_t count, double margin = 0.15) {
    Point c(dim, 0.0);
    while (norm(c) < 0.6) c = random_point(rng, dim, -1.5, 1.5);
    PointSet ps;
    while (ps.size() < count) {
        Point p = random_in_ball(rng, c, (1.0 - margin) * norm(c));
        if (norm(p) > 1e-3) ps.push_back(p);
    }
    return ps;
}

/// A point y plus a set P with y strictly below every element of P.
inline std::pair<Point, PointSet> ip_part_preservation_instance(std::mt19937_64& rng,
                                                                std::size_t dim,
                                                                std::size_t count) {
    std::uniform_real_distribution<double> alpha(1.1, 1.9);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Point y(dim, 0.0);
    while (norm(y) < 0.4) y = random_point(rng, dim, -1.0, 1.0);
    PointSet ps;
    while (ps.size() < count) {
        Point w(dim);
        for (std::size_t i = 0; i < dim; ++i) w[i] = uni(rng);
        w = w - (dot(w, y) / norm_sq(y)) * y;  // orthogonal part
        ps.push_back(alpha(rng) * y + w);
    }
    return {y, ps};
}

inline Point random_hpoint(std::mt19937_64& rng, std::size_t dim, double lo = -2.0,
                           double hi = 2.0, double hmin = 0.2, double hmax = 2.2) {
    Point p = random_point(rng, dim, lo, hi);
    std::uniform_real_distribution<double> uh(hmin, hmax);
    p.h() = uh(rng);
    return p;
}

/// Left-bounded hyperbolic pair: perp distance strictly below the height sum.
inline std::pair<Point, Point> hyp_left_bounded_pair(std::mt19937_64& rng,
                                                     std::size_t dim) {
    for (;;) {
        Point x = random_hpoint(rng, dim);
        Point y = random_hpoint(rng, dim);
        double a2 = 0.0;
        for (std::size_t i = 0; i + 1 < dim; ++i) {
            double d = x[i] - y[i];
            a2 += d * d;
        }
        double s = x.h() + y.h();
        if (a2 < 0.8 * s * s && a2 > 1e-6) return {x, y};
    }
}

/// Set of h-points sharing a left bound by construction: all inside the
/// half-ball above a base point.
inline PointSet hyp_left_bounded_set(std::mt19937_64& rng, std::size_t dim,
                                     std::size_t count) {
    Point base = random_hpoint(rng, dim, -1.0, 1.0, 0.4, 1.2);
    PointSet ps;
    std::uniform_real_distribution<double> grow(1.15, 2.0);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    while (ps.size() < count) {
        // p must satisfy base <= p: ||base - p_perp|| <= p_h with slack.
        Point p(dim);
        for (std::size_t i = 0; i + 1 < dim; ++i) p[i] = base[i] + 0.5 * uni(rng);
        double need = 0.0;
        for (std::size_t i = 0; i + 1 < dim; ++i) {
            double d = base[i] - p[i];
            need += d * d;
        }
        need = std::sqrt(need + base.h() * base.h());
        p.h() = need * grow(rng);
        ps.push_back(p);
    }
    return ps;
}

/// Angles inside a sub-arc of the cone, so joins and meets exist.
inline PointSet angle_arc_set(std::mt19937_64& rng, const ConeSpec1D& cone,
                              std::size_t count) {
    std::uniform_real_distribution<double> ub(0.0, *cone.period);
    std::uniform_real_distribution<double> uo(0.0, 0.9 * cone.kappa);
    double base = ub(rng);
    PointSet ps;
    while (ps.size() < count)
        ps.push_back(Point{canonical_angle(base + uo(rng), *cone.period)});
    return ps;
}

}  // namespace testsup
