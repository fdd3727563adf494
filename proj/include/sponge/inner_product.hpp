#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "point.hpp"
#include "solvers.hpp"

namespace sponge {

// Inner-product sponge on R^n:  x <= y  iff  (x,x) <= (x,y).
// Meets are minimum-norm points of convex hulls; joins, when they exist, are
// minimum-norm points of the intersection of the right-bound halfspaces.

inline bool ip_leq(const Point& x, const Point& y) {
    require_same_dim(x, y);
    return dot(x, x) <= dot(x, y);
}

/// Geometric form of the left cone: L(x) is the ball centered at x/2 with
/// radius ||x||/2. Agrees with ip_leq(y, x) away from the boundary.
inline bool ip_left_cone_contains(const Point& x, const Point& y) {
    require_same_dim(x, y);
    return norm(y - 0.5 * x) <= 0.5 * norm(x);
}

/// Halfspace system of the nonzero right-bound constraints of P:
/// R(p) = {y : (p,p) <= (p,y)}. Zero vectors impose no constraint.
struct HalfspaceSystem {
    std::vector<Point> normals;
    std::vector<double> offsets;  // squared norms of the normals

    static HalfspaceSystem of(const PointSet& ps) {
        HalfspaceSystem sys;
        for (const Point& p : ps) {
            double nn = norm_sq(p);
            if (nn > 0.0) {
                sys.normals.push_back(p);
                sys.offsets.push_back(nn);
            }
        }
        return sys;
    }
};

/// Meet of a nonempty set: the minimum-norm point of conv(P); the origin when
/// no nonzero left bound exists (0 is in the hull exactly in that case).
inline Point ip_meet(const PointSet& input, double tol = 1e-9) {
    require_nonempty_uniform(input);
    MinNormResult mn = min_norm_point_full(input, tol);
    double scale = 0.0;
    for (const Point& p : input) scale = std::max(scale, norm_sq(p));
    if (norm_sq(mn.point) <= 1e-20 * std::max(1.0, scale))
        return Point(input.front().dim(), 0.0);
    return mn.point;
}

inline MinNormResult ip_meet_full(const PointSet& input, double tol = 1e-9) {
    require_nonempty_uniform(input);
    return min_norm_point_full(input, tol);
}

/// Join of a nonempty set, or nullopt when P is not right-bounded.
///
/// Right-boundedness is decided exactly via the Farkas condition: the
/// halfspace system {(p,y) >= (p,p)} is infeasible iff 0 lies in the convex
/// hull of the nonzero elements of P, which the min-norm solver detects.
/// The join itself is the min-norm point of the intersection, computed by
/// cyclic projections and then scaled outward until every constraint holds
/// under the exact relation.
inline std::optional<Point> ip_join(const PointSet& input, double tol = 1e-9) {
    require_nonempty_uniform(input);
    const std::size_t dim = input.front().dim();
    HalfspaceSystem sys = HalfspaceSystem::of(input);
    if (sys.normals.empty()) return Point(dim, 0.0);  // P = {0}
    if (sys.normals.size() == 1) return sys.normals.front();

    double scale = 0.0;
    for (const Point& p : sys.normals) scale = std::max(scale, norm(p));
    Point witness = min_norm_point(sys.normals, std::min(tol, 1e-12));
    if (norm(witness) <= 1e-7 * scale) return std::nullopt;

    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < sys.normals.size(); ++i)
        hs.push_back({sys.normals[i], sys.offsets[i]});
    Point z = dykstra_min_norm(hs, tol);

    // Certify: scaling by lambda >= 1 preserves (p, z) >= (p, p) and can only
    // create slack, since all offsets are positive.
    double lambda = 1.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        double d = dot(hs[i].normal, z);
        if (d <= 0.0) throw non_convergence("projection result is on the wrong side");
        lambda = std::max(lambda, hs[i].offset / d);
    }
    if (lambda > 1.0) z = lambda * z;
    for (int guard = 0; guard < 64; ++guard) {
        bool ok = true;
        for (const Halfspace& h : hs)
            if (dot(h.normal, z) < h.offset) { ok = false; break; }
        if (ok) return z;
        z = (1.0 + std::ldexp(1.0, -48)) * z;
    }
    throw non_convergence("could not certify the join against its halfspaces");
}

}  // namespace sponge
