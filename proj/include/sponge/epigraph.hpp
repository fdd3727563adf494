#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "point.hpp"
#include "report.hpp"
#include "solvers.hpp"

namespace sponge {

// Epigraph sponge on R^n (n >= 2): the positive cone is the set of vectors w
// with f(||w_perp||) <= w_h for a radial profile f, so
//   x <= y  iff  f(||y_perp - x_perp||) <= y_h - x_h.

enum class DimClass { Dim2, Dim3Plus };

/// Radial profile f(d) = c * d^p. Runtime profiles are restricted to this
/// continuous increasing family; p >= 1 keeps the relation closed and the
/// composite f(||.||) convex, p >= 2 is required in dimensions >= 3.
struct Profile {
    double c = 1.0;
    double p = 2.0;
    DimClass dim_class = DimClass::Dim3Plus;

    double operator()(double d) const {
        if (d <= 0.0) return 0.0;
        if (p == 1.0) return c * d;
        if (p == 2.0) return c * d * d;
        if (p == 3.0) return c * d * d * d;
        return c * std::pow(d, p);
    }

    bool valid_shape() const { return c > 0.0 && p >= 1.0 && std::isfinite(c) && std::isfinite(p); }
    bool valid_for_dim(int dim) const {
        return valid_shape() && (dim < 3 || p >= 2.0);
    }
};

/// Which coordinate plays the role of the distinguished axis h.
struct Frame {
    std::size_t h_index;
    static Frame last_of(std::size_t dim) { return Frame{dim - 1}; }
};

struct Decomposition {
    double h;
    Point perp;  // the remaining coordinates, in order
};

inline Decomposition decompose(const Point& x, const Frame& frame) {
    if (frame.h_index >= x.dim()) throw std::invalid_argument("frame index out of range");
    Decomposition d;
    d.h = x[frame.h_index];
    d.perp = Point(x.dim() - 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.dim(); ++i)
        if (i != frame.h_index) d.perp[k++] = x[i];
    return d;
}

inline Point recompose(double h, const Point& perp, const Frame& frame) {
    Point x(perp.dim() + 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.dim(); ++i)
        x[i] = (i == frame.h_index) ? h : perp[k++];
    return x;
}

namespace detail {

inline void require_epi_point(const Point& x) {
    if (x.dim() < 2) throw std::invalid_argument("epigraph sponge needs dimension >= 2");
}

inline void require_profile(const Profile& f) {
    if (!f.valid_shape())
        throw std::invalid_argument("invalid profile: need c > 0 and p >= 1");
}

inline double perp_dist_sq(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double perp_dist(const Point& a, const Point& b) { return std::sqrt(perp_dist_sq(a, b)); }

}  // namespace detail

inline bool epi_leq(const Profile& f, const Point& x, const Point& y) {
    require_same_dim(x, y);
    detail::require_epi_point(x);
    return f(detail::perp_dist(x, y)) <= y.h() - x.h();
}

/// Canonical right bound on the h axis:
/// t = max_p (f(||p_perp||) + p_h) + 1, as the multiple t*h of the axis.
inline Point epi_right_bound_witness(const Profile& f, const PointSet& ps) {
    detail::require_profile(f);
    require_nonempty_uniform(ps);
    detail::require_epi_point(ps.front());
    Point axis(ps.front().dim(), 0.0);
    double t = -std::numeric_limits<double>::infinity();
    for (const Point& p : ps) t = std::max(t, f(detail::perp_dist(p, axis)) + p.h());
    Point out(ps.front().dim(), 0.0);
    out.h() = t + 1.0;
    return out;
}

/// Validates a profile for use at the given ambient dimension. Power profiles
/// are decided analytically; the defining inequalities are also probed on
/// deterministic plus seeded random samples, with witnesses on failure.
inline AxiomReport validate_profile(const Profile& f, int dim, int samples,
                                    std::uint64_t seed = 0x9e3779b97f4a7c15ULL) {
    AxiomReport rep;
    if (dim < 2) {
        rep.fail("ambient-dimension", {}, "epigraph sponges need dim >= 2");
        return rep;
    }
    if (samples <= 0) throw std::invalid_argument("samples must be positive");
    if (!(f.c > 0.0)) rep.fail("positive-scale", {}, "c must be > 0");
    if (!(f.p >= 1.0)) rep.fail("superadditive", {Point{1.0, 1.0}}, "power p < 1");
    const bool need_square = dim >= 3;
    if (need_square && f.p < 2.0 && f.p >= 1.0) {
        // The canonical counterexample d = e = 1: f(sqrt(2)) < f(1) + f(1).
        rep.fail("square-superadditive", {Point{1.0, 1.0}},
                 "f(sqrt(d^2+e^2)) = " + std::to_string(f(std::sqrt(2.0))) + " < " +
                     std::to_string(2.0 * f(1.0)));
    }

    if (f(0.0) != 0.0) rep.fail("zero-at-zero", {Point{0.0}});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 4.0);
    std::vector<std::pair<double, double>> probes = {
        {1.0, 1.0}, {0.5, 0.5}, {1.0, 2.0}, {2.0, 1.0}, {0.1, 1.9}, {3.0, 0.25}};
    while (static_cast<int>(probes.size()) < samples)
        probes.emplace_back(uni(rng), uni(rng));

    const double slack = 1e-12;
    for (auto [d, e] : probes) {
        double scale = std::max(1.0, std::abs(f(d + e)));
        if (d > 0.0 && f(d) <= 0.0) rep.fail("positive", {Point{d}});
        if (e > d && !(f(d) <= f(e) + slack * scale))
            rep.fail("increasing", {Point{d, e}});
        if (f(d) + f(e) > f(d + e) + slack * scale)
            rep.fail("superadditive", {Point{d, e}});
        if (need_square && f(d) + f(e) > f(std::sqrt(d * d + e * e)) + slack * scale)
            rep.fail("square-superadditive", {Point{d, e}});
        if (f(d) + f(e) > std::max(f(d + e), f(std::abs(d - e))) + slack * scale)
            rep.fail("max-superadditive", {Point{d, e}});
    }
    rep.diagnose("analytic-power-criterion", f.valid_for_dim(dim));
    return rep;
}

/// Join of a pair. Comparable pairs return the larger element unchanged;
/// otherwise the join is found in the plane through x, y parallel to h by a
/// golden-section search on the bracket between the two perp positions, and
/// the h coordinate is lifted so that both bound constraints hold exactly.
inline Point epi_join_pair(const Profile& f, const Point& x, const Point& y,
                           double tol = 1e-9) {
    detail::require_profile(f);
    require_same_dim(x, y);
    detail::require_epi_point(x);
    if (epi_leq(f, x, y)) return y;
    if (epi_leq(f, y, x)) return x;

    const double a = detail::perp_dist(x, y);
    // Incomparable points have distinct perp parts.
    auto height = [&](double t) {
        return std::max(x.h() + f(t), y.h() + f(a - t));
    };
    double t_star = golden_section_min(height, 0.0, a, std::min(tol, 1e-12) * std::max(1.0, a));

    Point z(x.dim());
    const double lam = t_star / a;
    for (std::size_t i = 0; i + 1 < x.dim(); ++i) z[i] = x[i] + lam * (y[i] - x[i]);
    z.h() = std::max(x.h() + f(detail::perp_dist(x, z)), y.h() + f(detail::perp_dist(y, z)));
    for (int guard = 0; guard < 64 && !(epi_leq(f, x, z) && epi_leq(f, y, z)); ++guard)
        z.h() = std::nextafter(z.h(), std::numeric_limits<double>::infinity());
    return z;
}

/// Join of a finite set: the lowest point of the right-bound set, i.e. the
/// lift of argmin_c g(c) with g(c) = max_p (p_h + f(||c - p_perp||)).
/// g is convex for p >= 1 and its minimizer lies in the hull of the perp
/// projections. dim 2 uses a golden-section bracket; p = 2 reduces exactly to
/// a power-distance smallest-ball problem; other cases fall back to the
/// generic convex minimizer.
inline Point epi_join(const Profile& f, const PointSet& input, double tol = 1e-9) {
    detail::require_profile(f);
    require_nonempty_uniform(input);
    detail::require_epi_point(input.front());
    PointSet ps = dedupe(input);
    if (ps.size() == 1) return ps.front();
    // An element that already bounds the others is the join.
    for (const Point& cand : ps) {
        bool top = true;
        for (const Point& p : ps)
            if (!epi_leq(f, p, cand)) { top = false; break; }
        if (top) return cand;
    }
    const std::size_t dim = ps.front().dim();
    const std::size_t pdim = dim - 1;

    Point center(pdim, 0.0);
    if (pdim == 1) {
        double lo = ps.front()[0], hi = lo;
        for (const Point& p : ps) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        auto g = [&](double t) {
            double m = -std::numeric_limits<double>::infinity();
            for (const Point& p : ps) m = std::max(m, p.h() + f(std::abs(t - p[0])));
            return m;
        };
        center[0] = golden_section_min(g, lo, hi, std::min(tol, 1e-12) * std::max(1.0, hi - lo));
    } else {
        PointSet sites;
        for (const Point& p : ps) {
            Point s(pdim);
            for (std::size_t i = 0; i < pdim; ++i) s[i] = p[i];
            sites.push_back(s);
        }
        if (f.p == 2.0) {
            std::vector<double> offsets;
            for (const Point& p : ps) offsets.push_back(p.h() / f.c);
            center = power_welzl(sites, offsets).center;
        } else {
            auto g = [&](const Point& c) {
                double m = -std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < ps.size(); ++k)
                    m = std::max(m, ps[k].h() + f(dist(c, sites[k])));
                return m;
            };
            auto sg = [&](const Point& c) {
                std::size_t arg = 0;
                double m = -std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < ps.size(); ++k) {
                    double v = ps[k].h() + f(dist(c, sites[k]));
                    if (v > m) { m = v; arg = k; }
                }
                Point r = c - sites[arg];
                double d = norm(r);
                if (d <= 1e-15) return Point(c.dim(), 0.0);
                double fp = f.c * f.p * std::pow(d, f.p - 1.0);
                return (fp / d) * r;
            };
            PointSet starts = sites;
            Point centroid(pdim, 0.0);
            for (const Point& s : sites) centroid = centroid + (1.0 / sites.size()) * s;
            starts.push_back(centroid);
            center = minimize_convex(g, sg, starts, 4000, tol);
        }
    }

    Point z(dim);
    for (std::size_t i = 0; i < pdim; ++i) z[i] = center[i];
    double h = -std::numeric_limits<double>::infinity();
    for (const Point& p : ps) h = std::max(h, p.h() + f(detail::perp_dist(p, z)));
    z.h() = h;
    for (int guard = 0; guard < 64; ++guard) {
        bool ok = true;
        for (const Point& p : ps)
            if (!epi_leq(f, p, z)) { ok = false; break; }
        if (ok) return z;
        z.h() = std::nextafter(z.h(), std::numeric_limits<double>::infinity());
    }
    throw non_convergence("could not certify the epigraph join");
}

/// Meets come from the group structure: inversion reverses the order, so
/// meet(P) = -join(-P). Negation is exact in floating point.
inline Point epi_meet(const Profile& f, const PointSet& ps, double tol = 1e-9) {
    require_nonempty_uniform(ps);
    PointSet neg;
    neg.reserve(ps.size());
    for (const Point& p : ps) neg.push_back(-p);
    return -epi_join(f, neg, tol);
}

inline Point epi_meet_pair(const Profile& f, const Point& x, const Point& y,
                           double tol = 1e-9) {
    return -epi_join_pair(f, -x, -y, tol);
}

}  // namespace sponge
