#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "point.hpp"
#include "report.hpp"
#include "spec.hpp"

namespace sponge {

enum class Side { Left, Right };

inline bool leq(const SpongeSpec& spec, const Point& x, const Point& y) {
    return spec_leq(spec, x, y);
}

/// Right: all of P below y. Left: y below all of P.
inline bool bounds_check(const SpongeSpec& spec, const PointSet& ps, const Point& y,
                         Side side) {
    require_nonempty_uniform(ps);
    for (const Point& p : ps) {
        bool ok = side == Side::Right ? spec_leq(spec, p, y) : spec_leq(spec, y, p);
        if (!ok) return false;
    }
    return true;
}

/// Reflexivity on every sample and antisymmetry on every sample pair.
inline AxiomReport check_orientation(const std::function<bool(const Point&, const Point&)>& rel,
                                     const PointSet& sample) {
    require_nonempty_uniform(sample);
    AxiomReport rep;
    for (const Point& x : sample)
        if (!rel(x, x)) rep.fail("reflexivity", {x});
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = i + 1; j < sample.size(); ++j) {
            const Point& x = sample[i];
            const Point& y = sample[j];
            if (x != y && rel(x, y) && rel(y, x)) rep.fail("antisymmetry", {x, y});
        }
    return rep;
}

inline AxiomReport check_orientation(const SpongeSpec& spec, const PointSet& sample) {
    return check_orientation(
        [&](const Point& a, const Point& b) { return spec_leq(spec, a, b); }, sample);
}

/// Absorption: for every x in P, the meet of {x, join(P)} is x itself.
inline AxiomReport check_absorption(const SpongeSpec& spec, const PointSet& ps,
                                    double eq_tol = 1e-9) {
    require_nonempty_uniform(ps);
    auto j = spec_join(spec, ps);
    if (!j) throw join_unavailable("set is not right-bounded, absorption needs a join");
    AxiomReport rep;
    for (const Point& x : ps) {
        auto m = spec_meet(spec, PointSet{x, *j});
        if (!m || !approx_equal(*m, x, eq_tol))
            rep.fail("absorption", {x, *j}, m ? "meet differs from x" : "pair meet missing");
    }
    return rep;
}

/// Part preservation: when y is below every element of P, the meet of P
/// exists and the meet of {meet(P), y} is y. Passes vacuously when the
/// hypothesis does not hold.
inline AxiomReport check_part_preservation(const SpongeSpec& spec, const PointSet& ps,
                                           const Point& y, double eq_tol = 1e-9) {
    require_nonempty_uniform(ps);
    AxiomReport rep;
    for (const Point& x : ps) {
        auto pm = spec_meet(spec, PointSet{x, y});
        if (!pm || !approx_equal(*pm, y, eq_tol)) {
            rep.note = "hypothesis not satisfied; vacuous pass";
            return rep;
        }
    }
    auto m = spec_meet(spec, ps);
    if (!m) {
        rep.fail("part-preservation", ps, "meet of P does not exist");
        return rep;
    }
    auto mm = spec_meet(spec, PointSet{*m, y});
    if (!mm || !approx_equal(*mm, y, eq_tol))
        rep.fail("part-preservation", {*m, y}, "meet of {meet(P), y} is not y");
    return rep;
}

/// Approximate join by descent. The seed set of right bounds is closed under
/// pairwise meets, and a greedy descent lowers the discriminator further:
/// candidate positions near the incumbent are projected back into the bound
/// set by the family lift, with a step that shrinks on failure. Pairwise
/// meets alone stall well above the join (the meet of two lifted bounds
/// typically lands above the bound envelope), so the greedy phase carries
/// the convergence. The discriminator of the incumbent never increases and
/// the result always passes bounds_check(Right). Cross-check routine, not
/// the primary solver.
inline Point descent_join(const SpongeSpec& spec, const PointSet& ps,
                          const PointSet& seeds, int max_iter = 500,
                          double tol = 1e-9) {
    require_nonempty_uniform(ps);
    if (seeds.empty()) throw no_seeds("descent_join needs at least one seed");
    for (const Point& s : seeds)
        if (!bounds_check(spec, ps, s, Side::Right))
            throw no_seeds("seed fails the right-bound check");

    auto height = [&](const Point& x) {
        auto h = spec_height(spec, x);
        return h ? *h : 0.0;
    };

    PointSet pool = dedupe(seeds);
    Point best = pool.front();
    for (const Point& s : pool)
        if (height(s) < height(best)) best = s;
    int iter = 0;

    // Meet closure through the incumbent; the greedy phase below gets the
    // bulk of the iteration budget.
    const int closure_budget = std::max(1, max_iter / 4);
    bool improved = true;
    while (improved && iter < closure_budget) {
        improved = false;
        for (std::size_t i = 0; i < pool.size() && iter < closure_budget; ++i) {
            ++iter;
            auto m = spec_pair_meet(spec, best, pool[i], tol);
            if (!m) continue;
            if (!bounds_check(spec, ps, *m, Side::Right)) continue;
            if (height(*m) < height(best) - 1e-15) {
                pool.push_back(*m);
                best = *m;
                improved = true;
            }
        }
    }

    // Greedy descent: move the incumbent's free coordinates along a compass
    // pattern and lift back into the bound set.
    const std::size_t free_dims = spec_free_dims(spec);
    if (free_dims > 0) {
        double radius = 0.0;
        for (const Point& s : pool) radius = std::max(radius, dist(s, best));
        radius = std::max(radius * 0.5, 0.1);
        std::vector<Point> dirs;
        for (std::size_t i = 0; i < free_dims; ++i) {
            Point e(best.dim(), 0.0);
            e[i] = 1.0;
            dirs.push_back(e);
            dirs.push_back(-e);
        }
        if (free_dims >= 2)
            for (std::size_t i = 1; i < free_dims; ++i) {
                Point d(best.dim(), 0.0);
                d[0] = 0.7071067811865476;
                d[i] = 0.7071067811865476;
                dirs.push_back(d);
                dirs.push_back(-d);
                d[i] = -d[i];
                dirs.push_back(d);
                dirs.push_back(-d);
            }
        while (radius > 0.25 * tol && iter < max_iter) {
            bool moved = false;
            for (const Point& dir : dirs) {
                if (iter >= max_iter) break;
                ++iter;
                auto cand = spec_lift_right_bound(spec, ps, best + radius * dir);
                if (!cand) continue;
                if (!bounds_check(spec, ps, *cand, Side::Right)) continue;
                if (height(*cand) < height(best) - 1e-15) {
                    best = *cand;
                    moved = true;
                }
            }
            if (!moved) radius *= 0.5;
        }
    }
    return best;
}

/// Blockwise join over a coordinate partition; throws naming the first block
/// whose projection has no join.
inline Point product_join(const std::vector<SpongeSpec>& specs, const PointSet& ps,
                          double tol = 1e-9) {
    require_nonempty_uniform(ps);
    if (specs.empty()) throw std::invalid_argument("empty component list");
    std::size_t total = 0;
    for (const SpongeSpec& c : specs) total += static_cast<std::size_t>(c.dim);
    if (total != ps.front().dim())
        throw std::invalid_argument("component dimensions do not partition the points");
    Point out(total);
    std::size_t off = 0;
    for (std::size_t b = 0; b < specs.size(); ++b) {
        PointSet block;
        for (const Point& p : ps)
            block.push_back(detail::block_of(p, off, specs[b].dim));
        auto j = spec_join(specs[b], block, tol);
        if (!j) throw component_unbounded(b);
        for (int i = 0; i < specs[b].dim; ++i) out[off + i] = (*j)[i];
        off += specs[b].dim;
    }
    return out;
}

inline Point product_meet(const std::vector<SpongeSpec>& specs, const PointSet& ps,
                          double tol = 1e-9) {
    require_nonempty_uniform(ps);
    if (specs.empty()) throw std::invalid_argument("empty component list");
    std::size_t total = 0;
    for (const SpongeSpec& c : specs) total += static_cast<std::size_t>(c.dim);
    if (total != ps.front().dim())
        throw std::invalid_argument("component dimensions do not partition the points");
    Point out(total);
    std::size_t off = 0;
    for (std::size_t b = 0; b < specs.size(); ++b) {
        PointSet block;
        for (const Point& p : ps)
            block.push_back(detail::block_of(p, off, specs[b].dim));
        auto m = spec_meet(specs[b], block, tol);
        if (!m) throw component_unbounded(b);
        for (int i = 0; i < specs[b].dim; ++i) out[off + i] = (*m)[i];
        off += specs[b].dim;
    }
    return out;
}

/// Axis-aligned scan box with a uniform step.
struct GridSpec {
    Point lo;
    Point hi;
    double step = 0.01;
};

/// Certified scan boxes per family: a region guaranteed to contain the
/// extremum when it exists.
inline GridSpec certified_box(const SpongeSpec& spec, const PointSet& ps, Side side,
                              double step) {
    require_nonempty_uniform(ps);
    const std::size_t dim = ps.front().dim();
    Point lo = ps.front(), hi = ps.front();
    for (const Point& p : ps)
        for (std::size_t i = 0; i < dim; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    GridSpec g;
    g.step = step;
    // Extremal grid bounds populate a flat ridge of extent ~sqrt(step) around
    // the true extremum; pad the box so box edges do not clip it one-sidedly.
    const double pad = 20.0 * step;
    switch (spec.family) {
        case Family::InnerProduct: {
            if (side == Side::Right) {
                // Heuristic radius for the right-bound region.
                double num = 0.0, den = std::numeric_limits<double>::infinity();
                for (const Point& p : ps) {
                    num = std::max(num, norm_sq(p));
                    double n = norm(p);
                    if (n > 0.0) den = std::min(den, n);
                }
                double r = std::isfinite(den) && den > 0.0 ? 2.0 * num / den : 1.0;
                g.lo = Point(dim, -r);
                g.hi = Point(dim, r);
            } else {
                // The meet lies in the convex hull of P, and no left bound
                // exceeds the smallest input norm.
                double cap = std::numeric_limits<double>::infinity();
                for (const Point& p : ps) cap = std::min(cap, norm(p));
                g.lo = lo;
                g.hi = hi;
                for (std::size_t i = 0; i < dim; ++i) {
                    g.lo[i] = std::max(g.lo[i] - pad, -cap);
                    g.hi[i] = std::min(g.hi[i] + pad, cap);
                }
            }
            break;
        }
        case Family::Epigraph: {
            Point w = epi_right_bound_witness(spec.profile, ps);
            g.lo = lo;
            g.hi = hi;
            for (std::size_t i = 0; i + 1 < dim; ++i) {
                g.lo[i] -= pad;
                g.hi[i] += pad;
            }
            if (side == Side::Right) {
                g.hi.h() = w.h();
            } else {
                PointSet neg;
                for (const Point& p : ps) neg.push_back(-p);
                g.lo.h() = -epi_right_bound_witness(spec.profile, neg).h();
            }
            break;
        }
        case Family::Hyperbolic: {
            g.lo = lo;
            g.hi = hi;
            for (std::size_t i = 0; i + 1 < dim; ++i) {
                g.lo[i] -= pad;
                g.hi[i] += pad;
            }
            if (side == Side::Right) {
                double r2 = 0.0;
                for (const Point& p : ps) r2 = std::max(r2, norm_sq(p));
                g.lo.h() = step;
                g.hi.h() = std::sqrt(r2) + pad;
            } else {
                double top = 0.0;
                for (const Point& p : ps) top = std::max(top, p.h());
                for (const Point& p : ps)
                    for (std::size_t i = 0; i + 1 < dim; ++i) {
                        g.lo[i] = std::min(g.lo[i], p[i] - p.h());
                        g.hi[i] = std::max(g.hi[i], p[i] + p.h());
                    }
                g.lo.h() = step;
                g.hi.h() = top;
            }
            break;
        }
        case Family::Angle: {
            double L = spec.cone.period ? *spec.cone.period : 0.0;
            if (spec.cone.period) {
                g.lo = Point{0.0};
                g.hi = Point{L - step * 0.5};
            } else {
                g.lo = Point{lo[0] - spec.cone.kappa};
                g.hi = Point{hi[0] + spec.cone.kappa};
            }
            break;
        }
        case Family::Product: {
            std::size_t off = 0;
            g.lo = Point(dim);
            g.hi = Point(dim);
            for (const SpongeSpec& c : spec.components) {
                PointSet block;
                for (const Point& p : ps) block.push_back(detail::block_of(p, off, c.dim));
                GridSpec sub = certified_box(c, block, side, step);
                for (int i = 0; i < c.dim; ++i) {
                    g.lo[off + i] = sub.lo[i];
                    g.hi[off + i] = sub.hi[i];
                }
                off += c.dim;
            }
            break;
        }
    }
    return g;
}

/// Distance from y to the right cone R(x), measured along the family's
/// raising direction. Zero when x <= y holds exactly; used by the oracle to
/// compare grid candidates at grid resolution.
inline double cone_reach(const SpongeSpec& spec, const Point& x, const Point& y) {
    if (spec_leq(spec, x, y)) return 0.0;
    switch (spec.family) {
        case Family::InnerProduct: {
            double nx = norm(x);
            if (nx == 0.0) return 0.0;
            return (dot(x, x) - dot(x, y)) / nx;
        }
        case Family::Epigraph: {
            double d = 0.0;
            for (std::size_t i = 0; i + 1 < x.dim(); ++i)
                d += (y[i] - x[i]) * (y[i] - x[i]);
            return spec.profile(std::sqrt(d)) - (y.h() - x.h());
        }
        case Family::Hyperbolic: {
            double d = x.h() * x.h();
            for (std::size_t i = 0; i + 1 < x.dim(); ++i)
                d += (y[i] - x[i]) * (y[i] - x[i]);
            return std::sqrt(d) - y.h();
        }
        case Family::Angle: {
            if (!spec.cone.period) {
                if (y[0] < x[0]) return x[0] - y[0];
                return y[0] - (x[0] + spec.cone.kappa);
            }
            double L = *spec.cone.period;
            double d = canonical_angle(y[0] - x[0], L);
            return std::min(d - spec.cone.kappa, L - d);
        }
        case Family::Product: {
            double worst = 0.0;
            std::size_t off = 0;
            for (const SpongeSpec& c : spec.components) {
                worst = std::max(worst, cone_reach(c, detail::block_of(x, off, c.dim),
                                                   detail::block_of(y, off, c.dim)));
                off += c.dim;
            }
            return worst;
        }
    }
    return 0.0;
}

/// Resolution-limited oracle for joins and meets. Scans the grid for bounds
/// of P, then returns a grid bound below (join) or above (meet) every other
/// grid bound. Comparisons between grid bounds are relaxed by `slack`
/// (default: five steps, the documented oracle-comparison tolerance), since
/// relation failures below that are sub-resolution for the scan; of the
/// candidates that qualify, the one nearest their centroid is returned,
/// which cancels the lattice aliasing along the flat height ridge around the
/// true extremum. slack 0 recovers the exact quantifier, under which the
/// universal element is unique when it exists. Families with a strictly
/// monotone height admit a prefilter to the near-extremal height band.
inline std::optional<Point> brute_force_extremum(const SpongeSpec& spec,
                                                 const PointSet& ps, const GridSpec& grid,
                                                 Side side, double slack = -1.0) {
    require_nonempty_uniform(ps);
    if (!(grid.step > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (slack < 0.0) slack = 5.0 * grid.step;
    const std::size_t dim = ps.front().dim();
    if (grid.lo.dim() != dim || grid.hi.dim() != dim)
        throw std::invalid_argument("grid box dimension mismatch");

    std::vector<long> base(dim), count(dim);
    double total = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
        base[i] = static_cast<long>(std::floor(grid.lo[i] / grid.step));
        long top = static_cast<long>(std::ceil(grid.hi[i] / grid.step));
        count[i] = top - base[i] + 1;
        if (count[i] < 1) count[i] = 1;
        total *= static_cast<double>(count[i]);
    }
    if (total > 3e8) throw std::invalid_argument("oracle grid too large");

    const bool right = side == Side::Right;
    // Left bounds of the inner-product sponge never exceed the smallest input
    // norm; pruning on it cuts most of the scan.
    double ip_norm_cap = std::numeric_limits<double>::infinity();
    if (spec.family == Family::InnerProduct && !right) {
        for (const Point& p : ps) ip_norm_cap = std::min(ip_norm_cap, norm_sq(p));
        ip_norm_cap *= 1.0 + 1e-12;
    }

    PointSet bounds;
    std::vector<long> idx(dim, 0);
    Point g(dim);
    while (true) {
        for (std::size_t i = 0; i < dim; ++i) g[i] = (base[i] + idx[i]) * grid.step;
        bool in_domain = true;
        if (spec.family == Family::Hyperbolic && !(g.h() > kHyperbolicHMin)) in_domain = false;
        if (in_domain && norm_sq(g) <= ip_norm_cap &&
            bounds_check(spec, ps, g, right ? Side::Right : Side::Left))
            bounds.push_back(g);
        std::size_t i = 0;
        for (; i < dim; ++i) {
            if (++idx[i] < count[i]) break;
            idx[i] = 0;
        }
        if (i == dim) break;
    }

    if (bounds.empty()) {
        if (spec_guarantees_bound(spec, right))
            throw grid_too_coarse("no grid point bounds the set although one must exist");
        return std::nullopt;
    }

    // The candidate minimizing its worst violation against the other grid
    // bounds: the true extremum has exactly zero violation against every
    // bound, and the minimizer centers on the flat height ridge around it
    // instead of drifting to a lattice-lucky end. With positive slack the
    // quantifier runs over the near-extremal band (violations from deeper
    // bounds are sub-resolution there); slack 0 checks against everything.
    const PointSet* quantifier = &bounds;
    PointSet band;
    PointSet candidates;
    if (spec_height(spec, bounds.front()).has_value()) {
        std::vector<double> hs;
        hs.reserve(bounds.size());
        for (const Point& b : bounds) hs.push_back(*spec_height(spec, b));
        double ext = right ? *std::min_element(hs.begin(), hs.end())
                           : *std::max_element(hs.begin(), hs.end());
        for (std::size_t i = 0; i < bounds.size(); ++i)
            if (std::abs(hs[i] - ext) <= slack) band.push_back(bounds[i]);
        candidates = band;
        if (slack > 0.0) quantifier = &band;
    } else {
        candidates = bounds;
    }

    std::optional<Point> best;
    double best_viol = std::numeric_limits<double>::infinity();
    for (const Point& cand : candidates) {
        double worst = 0.0;
        for (const Point& b : *quantifier) {
            double reach = right ? cone_reach(spec, cand, b) : cone_reach(spec, b, cand);
            worst = std::max(worst, reach);
            if (worst > slack || worst >= best_viol) break;
        }
        if (worst <= slack && worst < best_viol) {
            best_viol = worst;
            best = cand;
        }
    }
    return best;
}

}  // namespace sponge
