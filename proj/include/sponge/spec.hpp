#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epigraph.hpp"
#include "errors.hpp"
#include "groups.hpp"
#include "hyperbolic.hpp"
#include "inner_product.hpp"
#include "point.hpp"

namespace sponge {

enum class Family { InnerProduct, Epigraph, Hyperbolic, Angle, Product };

/// Dispatch handle selecting a sponge family and its parameters.
struct SpongeSpec {
    Family family = Family::InnerProduct;
    int dim = 2;
    Profile profile;                    // Epigraph
    ConeSpec1D cone;                    // Angle (dim 1)
    std::vector<SpongeSpec> components; // Product

    static SpongeSpec inner_product(int dim) {
        if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
        SpongeSpec s;
        s.family = Family::InnerProduct;
        s.dim = dim;
        return s;
    }

    static SpongeSpec epigraph(Profile f, int dim) {
        if (dim < 2) throw std::invalid_argument("epigraph sponge needs dim >= 2");
        f.dim_class = dim >= 3 ? DimClass::Dim3Plus : DimClass::Dim2;
        if (!f.valid_for_dim(dim))
            throw std::invalid_argument(
                "profile rejected: need c > 0 and p >= " + std::string(dim >= 3 ? "2" : "1") +
                " for dim " + std::to_string(dim));
        SpongeSpec s;
        s.family = Family::Epigraph;
        s.dim = dim;
        s.profile = f;
        return s;
    }

    static SpongeSpec hyperbolic(int dim) {
        if (dim < 2) throw std::invalid_argument("hyperbolic sponge needs dim >= 2");
        SpongeSpec s;
        s.family = Family::Hyperbolic;
        s.dim = dim;
        return s;
    }

    static SpongeSpec angle(ConeSpec1D cone) {
        if (!cone.valid()) throw std::invalid_argument("invalid cone parameters");
        SpongeSpec s;
        s.family = Family::Angle;
        s.dim = 1;
        s.cone = cone;
        return s;
    }

    static SpongeSpec product(std::vector<SpongeSpec> comps) {
        if (comps.empty()) throw std::invalid_argument("product of no components");
        SpongeSpec s;
        s.family = Family::Product;
        s.dim = 0;
        for (const SpongeSpec& c : comps) s.dim += c.dim;
        s.components = std::move(comps);
        return s;
    }
};

namespace detail {

inline Point block_of(const Point& x, std::size_t begin, std::size_t len) {
    Point b(len);
    for (std::size_t i = 0; i < len; ++i) b[i] = x[begin + i];
    return b;
}

}  // namespace detail

inline void require_spec_point(const SpongeSpec& spec, const Point& x) {
    require_valid(x);
    if (static_cast<int>(x.dim()) != spec.dim)
        throw std::invalid_argument("point dimension " + std::to_string(x.dim()) +
                                    " does not match spec dimension " +
                                    std::to_string(spec.dim));
    if (spec.family == Family::Hyperbolic) require_hpoint(x);
}

/// The family relation.
inline bool spec_leq(const SpongeSpec& spec, const Point& x, const Point& y) {
    require_spec_point(spec, x);
    require_spec_point(spec, y);
    switch (spec.family) {
        case Family::InnerProduct: return ip_leq(x, y);
        case Family::Epigraph: return epi_leq(spec.profile, x, y);
        case Family::Hyperbolic: return hyp_leq(x, y);
        case Family::Angle:
            if (spec.cone.period)
                return angle_leq(spec.cone, Angle(x[0], spec.cone), Angle(y[0], spec.cone));
            return line_leq(spec.cone, x[0], y[0]);
        case Family::Product: {
            std::size_t off = 0;
            for (const SpongeSpec& c : spec.components) {
                if (!spec_leq(c, detail::block_of(x, off, c.dim),
                              detail::block_of(y, off, c.dim)))
                    return false;
                off += c.dim;
            }
            return true;
        }
    }
    throw std::logic_error("unknown family");
}

/// Family join; nullopt when the set is not right-bounded.
inline std::optional<Point> spec_join(const SpongeSpec& spec, const PointSet& ps,
                                      double tol = 1e-9) {
    require_nonempty_uniform(ps);
    for (const Point& p : ps) require_spec_point(spec, p);
    switch (spec.family) {
        case Family::InnerProduct: return ip_join(ps, tol);
        case Family::Epigraph: return epi_join(spec.profile, ps, tol);
        case Family::Hyperbolic: return hyp_join(ps, tol);
        case Family::Angle: {
            if (spec.cone.period) {
                std::vector<Angle> as;
                for (const Point& p : ps) as.emplace_back(p[0], spec.cone);
                auto j = angle_join(spec.cone, as);
                if (!j) return std::nullopt;
                return Point{j->value};
            }
            std::vector<double> vs;
            for (const Point& p : ps) vs.push_back(p[0]);
            auto j = line_join(spec.cone, vs);
            if (!j) return std::nullopt;
            return Point{*j};
        }
        case Family::Product: {
            Point out(static_cast<std::size_t>(spec.dim));
            std::size_t off = 0;
            for (const SpongeSpec& c : spec.components) {
                PointSet block;
                for (const Point& p : ps) block.push_back(detail::block_of(p, off, c.dim));
                auto j = spec_join(c, block, tol);
                if (!j) return std::nullopt;
                for (int i = 0; i < c.dim; ++i) out[off + i] = (*j)[i];
                off += c.dim;
            }
            return out;
        }
    }
    throw std::logic_error("unknown family");
}

/// Family meet; nullopt when the set is not left-bounded.
inline std::optional<Point> spec_meet(const SpongeSpec& spec, const PointSet& ps,
                                      double tol = 1e-9) {
    require_nonempty_uniform(ps);
    for (const Point& p : ps) require_spec_point(spec, p);
    switch (spec.family) {
        case Family::InnerProduct: return ip_meet(ps, tol);
        case Family::Epigraph: return epi_meet(spec.profile, ps, tol);
        case Family::Hyperbolic: return hyp_meet(ps, tol);
        case Family::Angle: {
            if (spec.cone.period) {
                std::vector<Angle> as;
                for (const Point& p : ps) as.emplace_back(p[0], spec.cone);
                auto m = angle_meet(spec.cone, as);
                if (!m) return std::nullopt;
                return Point{m->value};
            }
            std::vector<double> vs;
            for (const Point& p : ps) vs.push_back(p[0]);
            auto m = line_meet(spec.cone, vs);
            if (!m) return std::nullopt;
            return Point{*m};
        }
        case Family::Product: {
            Point out(static_cast<std::size_t>(spec.dim));
            std::size_t off = 0;
            for (const SpongeSpec& c : spec.components) {
                PointSet block;
                for (const Point& p : ps) block.push_back(detail::block_of(p, off, c.dim));
                auto m = spec_meet(c, block, tol);
                if (!m) return std::nullopt;
                for (int i = 0; i < c.dim; ++i) out[off + i] = (*m)[i];
                off += c.dim;
            }
            return out;
        }
    }
    throw std::logic_error("unknown family");
}

/// Meet of a pair, when one exists. Used by the generic descent routine.
inline std::optional<Point> spec_pair_meet(const SpongeSpec& spec, const Point& x,
                                           const Point& y, double tol = 1e-9) {
    switch (spec.family) {
        case Family::InnerProduct: return ip_meet(PointSet{x, y}, tol);
        case Family::Epigraph: return epi_meet_pair(spec.profile, x, y, tol);
        case Family::Hyperbolic:
            if (!hyp_pair_left_bounded(x, y)) return std::nullopt;
            return hyp_meet_pair(x, y);
        default: return spec_meet(spec, PointSet{x, y}, tol);
    }
}

/// A strictly monotone height functional for the family: comparable distinct
/// points have strictly increasing values along the relation. Serves as the
/// discriminator of the generic descent routine and as the tie-breaker of the
/// brute-force oracle. Not available for angle (cyclic) or product families.
inline std::optional<double> spec_height(const SpongeSpec& spec, const Point& x) {
    switch (spec.family) {
        case Family::InnerProduct: return norm(x);
        case Family::Epigraph: return x.h();
        case Family::Hyperbolic: return h_height(x);
        case Family::Angle: return std::nullopt;
        case Family::Product: return std::nullopt;
    }
    return std::nullopt;
}

/// Whether every finite set of valid points is guaranteed to be bounded on
/// the given side (used by the oracle to tell "grid too coarse" from a
/// genuinely unbounded set).
inline bool spec_guarantees_bound(const SpongeSpec& spec, bool right_side) {
    switch (spec.family) {
        case Family::InnerProduct: return !right_side;
        case Family::Epigraph: return true;
        case Family::Hyperbolic: return right_side;
        case Family::Angle: return false;
        case Family::Product: {
            for (const SpongeSpec& c : spec.components)
                if (!spec_guarantees_bound(c, right_side)) return false;
            return true;
        }
    }
    return false;
}

/// Projects a candidate back into the right-bound set of P by raising the
/// family's ascent coordinate (h, the norm direction for the inner product)
/// as little as possible. The result passes the exact relation against every
/// element of P. nullopt when no lift exists along that direction.
inline std::optional<Point> spec_lift_right_bound(const SpongeSpec& spec,
                                                  const PointSet& ps, const Point& like) {
    switch (spec.family) {
        case Family::Epigraph: {
            Point z = like;
            double h = -std::numeric_limits<double>::infinity();
            for (const Point& p : ps)
                h = std::max(h, p.h() + spec.profile(detail::perp_dist(p, z)));
            z.h() = h;
            for (int g = 0; g < 64; ++g) {
                bool ok = true;
                for (const Point& p : ps)
                    if (!epi_leq(spec.profile, p, z)) { ok = false; break; }
                if (ok) return z;
                z.h() = std::nextafter(z.h(), std::numeric_limits<double>::infinity());
            }
            return std::nullopt;
        }
        case Family::Hyperbolic: {
            Point z = like;
            double r2 = 0.0;
            for (const Point& p : ps) {
                double s = p.h() * p.h();
                for (std::size_t i = 0; i + 1 < p.dim(); ++i) {
                    double d = p[i] - z[i];
                    s += d * d;
                }
                r2 = std::max(r2, s);
            }
            z.h() = std::sqrt(r2);
            for (int g = 0; g < 64; ++g) {
                bool ok = true;
                for (const Point& p : ps)
                    if (!hyp_leq(p, z)) { ok = false; break; }
                if (ok) return z;
                z.h() = std::nextafter(z.h(), std::numeric_limits<double>::infinity());
            }
            return std::nullopt;
        }
        case Family::InnerProduct: {
            double n = norm(like);
            if (n <= 1e-12) return std::nullopt;
            Point dir = (1.0 / n) * like;
            double t = 0.0;
            bool all_zero = true;
            for (const Point& p : ps) {
                if (norm_sq(p) == 0.0) continue;
                all_zero = false;
                double d = dot(p, dir);
                if (d <= 0.0) return std::nullopt;
                t = std::max(t, norm_sq(p) / d);
            }
            if (all_zero) return Point(like.dim(), 0.0);
            Point z = t * dir;
            for (int g = 0; g < 64; ++g) {
                bool ok = true;
                for (const Point& p : ps)
                    if (!ip_leq(p, z)) { ok = false; break; }
                if (ok) return z;
                z = (1.0 + std::ldexp(1.0, -50)) * z;
            }
            return std::nullopt;
        }
        default: {
            Point z = like;
            for (const Point& p : ps)
                if (!spec_leq(spec, p, z)) return std::nullopt;
            return z;
        }
    }
}

/// Coordinates the descent may vary freely (the rest is determined by the
/// lift): the perp block for epigraph/hyperbolic, everything for the others.
inline std::size_t spec_free_dims(const SpongeSpec& spec) {
    switch (spec.family) {
        case Family::Epigraph:
        case Family::Hyperbolic:
            return static_cast<std::size_t>(spec.dim) - 1;
        default:
            return static_cast<std::size_t>(spec.dim);
    }
}

/// Right-bound seeds for the descent cross-check: a canonical witness plus
/// jittered centers re-lifted into the bound set by raising h. Empty result
/// means no seed could be constructed (set not right-bounded).
inline PointSet spec_right_bound_seeds(const SpongeSpec& spec, const PointSet& ps,
                                       int count, std::mt19937_64& rng) {
    require_nonempty_uniform(ps);
    PointSet seeds;
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    switch (spec.family) {
        case Family::Epigraph: {
            seeds.push_back(epi_right_bound_witness(spec.profile, ps));
            Point lo = ps.front(), hi = ps.front();
            for (const Point& p : ps)
                for (std::size_t i = 0; i + 1 < p.dim(); ++i) {
                    lo[i] = std::min(lo[i], p[i]);
                    hi[i] = std::max(hi[i], p[i]);
                }
            while (static_cast<int>(seeds.size()) < count) {
                Point z(ps.front().dim());
                for (std::size_t i = 0; i + 1 < z.dim(); ++i) {
                    double mid = 0.5 * (lo[i] + hi[i]);
                    double half = 0.6 * (hi[i] - lo[i]) + 0.1;
                    z[i] = mid + jitter(rng) * half;
                }
                double h = -std::numeric_limits<double>::infinity();
                for (const Point& p : ps)
                    h = std::max(h, p.h() + spec.profile(detail::perp_dist(p, z)));
                // Strictly interior lift: meets of boundary-tight seeds would
                // sit on the relation boundary themselves.
                z.h() = h + 1e-9 * (1.0 + std::abs(h));
                seeds.push_back(z);
            }
            return seeds;
        }
        case Family::Hyperbolic: {
            Point lo(ps.front().dim() - 1), hi(ps.front().dim() - 1);
            for (std::size_t i = 0; i + 1 < ps.front().dim(); ++i)
                lo[i] = hi[i] = ps.front()[i];
            for (const Point& p : ps)
                for (std::size_t i = 0; i + 1 < p.dim(); ++i) {
                    lo[i] = std::min(lo[i], p[i]);
                    hi[i] = std::max(hi[i], p[i]);
                }
            auto lift = [&](Point z) {
                double r2 = 0.0;
                for (const Point& p : ps) {
                    double s = p.h() * p.h();
                    for (std::size_t i = 0; i + 1 < p.dim(); ++i) {
                        double d = p[i] - z[i];
                        s += d * d;
                    }
                    r2 = std::max(r2, s);
                }
                z.h() = std::sqrt(r2) * (1.0 + 1e-9) + 1e-12;
                return z;
            };
            Point origin(ps.front().dim(), 0.0);
            seeds.push_back(lift(origin));
            while (static_cast<int>(seeds.size()) < count) {
                Point z(ps.front().dim(), 0.0);
                for (std::size_t i = 0; i + 1 < z.dim(); ++i) {
                    double mid = 0.5 * (lo[i] + hi[i]);
                    double half = 0.6 * (hi[i] - lo[i]) + 0.1;
                    z[i] = mid + jitter(rng) * half;
                }
                seeds.push_back(lift(z));
            }
            return seeds;
        }
        case Family::InnerProduct: {
            PointSet nonzero;
            for (const Point& p : ps)
                if (norm_sq(p) > 0.0) nonzero.push_back(p);
            if (nonzero.empty()) return PointSet{Point(ps.front().dim(), 0.0)};
            double scale = 0.0;
            for (const Point& p : nonzero) scale = std::max(scale, norm(p));
            Point w = min_norm_point(nonzero, 1e-12);
            if (norm(w) <= 1e-7 * scale) return {};
            auto lift = [&](Point dir) -> std::optional<Point> {
                double t = 0.0;
                for (const Point& p : nonzero) {
                    double d = dot(p, dir);
                    if (d <= 0.0) return std::nullopt;
                    t = std::max(t, norm_sq(p) / d);
                }
                Point z = (t * (1.0 + 1e-9)) * dir;
                for (int g = 0; g < 64; ++g) {
                    bool ok = true;
                    for (const Point& p : nonzero)
                        if (!ip_leq(p, z)) { ok = false; break; }
                    if (ok) return z;
                    z = (1.0 + std::ldexp(1.0, -48)) * z;
                }
                return std::nullopt;
            };
            Point dir = (1.0 / norm(w)) * w;
            if (auto z = lift(dir)) seeds.push_back(*z);
            int attempts = 0;
            while (static_cast<int>(seeds.size()) < count && attempts++ < 20 * count) {
                Point d2 = dir;
                for (std::size_t i = 0; i < d2.dim(); ++i) d2[i] += 0.35 * jitter(rng);
                double n = norm(d2);
                if (n <= 1e-12) continue;
                if (auto z = lift((1.0 / n) * d2)) seeds.push_back(*z);
            }
            return seeds;
        }
        default: {
            // Angle and product families: fall back to the exact join when it
            // exists; seeds are only needed for the descent cross-check.
            auto j = spec_join(spec, ps);
            if (j) seeds.push_back(*j);
            return seeds;
        }
    }
}

}  // namespace sponge
