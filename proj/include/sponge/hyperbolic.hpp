#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "errors.hpp"
#include "point.hpp"
#include "solvers.hpp"

namespace sponge {

// Hyperbolic sponge on the Poincare half-space H+ = {x : x_h > 0}, any
// dimension >= 2. The relation  x <= y  iff  ||x - y_perp|| <= y_h  is
// evaluated in squared form throughout, which avoids square-root rounding in
// the exact comparisons.

/// Open half-space guard: coordinates this close to the boundary are treated
/// as outside the domain.
inline constexpr double kHyperbolicHMin = 1e-12;

namespace detail {

inline double hyp_perp_dist_sq(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace detail

inline void require_hpoint(const Point& x) {
    if (x.dim() < 2) throw std::invalid_argument("hyperbolic sponge needs dimension >= 2");
    if (!(x.h() > kHyperbolicHMin))
        throw domain_error("point outside the open half-space (h <= 0)");
}

inline bool hyp_leq(const Point& x, const Point& y) {
    require_same_dim(x, y);
    require_hpoint(x);
    require_hpoint(y);
    // ||x - y_perp||^2 = ||x_perp - y_perp||^2 + x_h^2.
    return detail::hyp_perp_dist_sq(x, y) + x.h() * x.h() <= y.h() * y.h();
}

inline double d_hyp(const Point& x, const Point& y) {
    require_same_dim(x, y);
    require_hpoint(x);
    require_hpoint(y);
    return std::acosh(1.0 + dist_sq(x, y) / (2.0 * x.h() * y.h()));
}

/// The discriminator of the half-space model.
inline double h_height(const Point& x) {
    require_hpoint(x);
    return std::log(x.h());
}

/// A pair has a left bound iff its perp projections are closer than the sum
/// of the heights (strictly).
inline bool hyp_pair_left_bounded(const Point& x, const Point& y) {
    require_same_dim(x, y);
    require_hpoint(x);
    require_hpoint(y);
    double s = x.h() + y.h();
    return detail::hyp_perp_dist_sq(x, y) < s * s;
}

/// For comparable pairs with h-height difference below delta, the hyperbolic
/// distance never exceeds arcosh(e^delta).
inline double hyp_discriminator_bound(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    return std::acosh(std::exp(delta));
}

/// Closed-form pair meet: the higher intersection of the two bounding
/// circles. With a = ||y_perp - x_perp||,
///   b = (a^2 + x_h^2 - y_h^2) / (2a),  z_h = sqrt(x_h^2 - b^2),
/// and z_perp on the segment from x_perp toward y_perp at distance b.
inline Point hyp_meet_pair(const Point& x, const Point& y) {
    require_same_dim(x, y);
    require_hpoint(x);
    require_hpoint(y);
    if (hyp_leq(x, y)) return x;
    if (hyp_leq(y, x)) return y;
    if (!hyp_pair_left_bounded(x, y))
        throw no_left_bound("pair has no left bound: perp distance >= sum of heights");

    const double a2 = detail::hyp_perp_dist_sq(x, y);
    const double a = std::sqrt(a2);
    const double b = (a2 + x.h() * x.h() - y.h() * y.h()) / (2.0 * a);
    Point z(x.dim());
    const double lam = b / a;
    for (std::size_t i = 0; i + 1 < x.dim(); ++i) z[i] = x[i] + lam * (y[i] - x[i]);
    z.h() = std::sqrt(std::max(0.0, x.h() * x.h() - b * b));
    for (int guard = 0; guard < 64 && !(hyp_leq(z, x) && hyp_leq(z, y)); ++guard)
        z.h() = std::nextafter(z.h(), 0.0);
    if (!(z.h() > kHyperbolicHMin))
        throw no_left_bound("pair meet degenerated onto the boundary hyperplane");
    return z;
}

/// Join of a finite set: always exists. The right bounds centered at c on the
/// base hyperplane must satisfy r^2 >= ||p_perp - c||^2 + p_h^2 for every p,
/// so the join is the smallest such ball: a power-distance smallest-ball
/// problem over the perp projections with offsets p_h^2.
inline Point hyp_join(const PointSet& input, double tol = 1e-9) {
    (void)tol;
    require_nonempty_uniform(input);
    for (const Point& p : input) require_hpoint(p);
    PointSet ps = dedupe(input);
    if (ps.size() == 1) return ps.front();
    for (const Point& cand : ps) {
        bool top = true;
        for (const Point& p : ps)
            if (!hyp_leq(p, cand)) { top = false; break; }
        if (top) return cand;
    }
    const std::size_t dim = ps.front().dim();
    PointSet sites;
    std::vector<double> offsets;
    for (const Point& p : ps) {
        Point s(dim - 1);
        for (std::size_t i = 0; i + 1 < dim; ++i) s[i] = p[i];
        sites.push_back(s);
        offsets.push_back(p.h() * p.h());
    }
    PowerBall ball = power_welzl(sites, offsets);
    Point z(dim);
    for (std::size_t i = 0; i + 1 < dim; ++i) z[i] = ball.center[i];
    double r2 = -std::numeric_limits<double>::infinity();
    for (const Point& p : ps)
        r2 = std::max(r2, detail::hyp_perp_dist_sq(p, z) + p.h() * p.h());
    z.h() = std::sqrt(r2);
    for (int guard = 0; guard < 64; ++guard) {
        bool ok = true;
        for (const Point& p : ps)
            if (!hyp_leq(p, z)) { ok = false; break; }
        if (ok) return z;
        z.h() = std::nextafter(z.h(), std::numeric_limits<double>::infinity());
    }
    throw non_convergence("could not certify the hyperbolic join");
}

/// Meet of a finite set, or nullopt when the set has no left bound. The left
/// bounds are the points of the intersection of the half-balls around the
/// p_perp with radius p_h; the meet maximizes
///   q(c) = min_p (p_h^2 - ||c - p_perp||^2),
/// the same power-distance problem as the join with negated offsets. The sign
/// of the optimum decides left-boundedness; optima inside the numerical guard
/// band cannot be decided and are reported as ambiguous.
inline std::optional<Point> hyp_meet(const PointSet& input, double tol = 1e-9) {
    require_nonempty_uniform(input);
    for (const Point& p : input) require_hpoint(p);
    PointSet ps = dedupe(input);
    if (ps.size() == 1) return ps.front();
    for (const Point& cand : ps) {
        bool bottom = true;
        for (const Point& p : ps)
            if (!hyp_leq(cand, p)) { bottom = false; break; }
        if (bottom) return cand;
    }
    if (ps.size() == 2) {
        if (!hyp_pair_left_bounded(ps[0], ps[1])) return std::nullopt;
        return hyp_meet_pair(ps[0], ps[1]);
    }
    const std::size_t dim = ps.front().dim();
    PointSet sites;
    std::vector<double> offsets;
    for (const Point& p : ps) {
        Point s(dim - 1);
        for (std::size_t i = 0; i + 1 < dim; ++i) s[i] = p[i];
        sites.push_back(s);
        offsets.push_back(-(p.h() * p.h()));
    }
    PowerBall ball = power_welzl(sites, offsets);
    Point z(dim);
    for (std::size_t i = 0; i + 1 < dim; ++i) z[i] = ball.center[i];
    double q = std::numeric_limits<double>::infinity();
    for (const Point& p : ps)
        q = std::min(q, p.h() * p.h() - detail::hyp_perp_dist_sq(p, z));
    (void)tol;
    if (q <= 0.0) return std::nullopt;
    if (q <= kHyperbolicHMin * kHyperbolicHMin)
        throw boundary_ambiguous("meet height is inside the numerical guard band");
    z.h() = std::sqrt(q);
    for (int guard = 0; guard < 64; ++guard) {
        bool ok = true;
        for (const Point& p : ps)
            if (!hyp_leq(z, p)) { ok = false; break; }
        if (ok) return z;
        z.h() = std::nextafter(z.h(), 0.0);
    }
    throw non_convergence("could not certify the hyperbolic meet");
}

}  // namespace sponge
