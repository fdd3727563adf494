#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "point.hpp"
#include "report.hpp"

namespace sponge {

// Oriented additive groups on the line from a half-open positive cone
// C = [0, kappa), optionally quotiented by the subgroup L*Z (angles).

struct ConeSpec1D {
    double kappa = 0.5;
    std::optional<double> period;

    bool valid() const {
        if (!(kappa > 0.0)) return false;
        if (period && !(*period > 0.0)) return false;
        return true;
    }
    /// Analytic criterion for the quotient to stay an orientation.
    bool anti_h_holds() const { return !period || 2.0 * kappa <= *period; }
};

inline double canonical_angle(double v, double period) {
    double r = std::fmod(v, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;  // guard against period-epsilon artifacts
    return r;
}

/// Canonical representative of a residue class modulo the period.
struct Angle {
    double value = 0.0;
    Angle() = default;
    Angle(double v, const ConeSpec1D& spec)
        : value(spec.period ? canonical_angle(v, *spec.period) : v) {}
};

/// Line relation: x <= y < x + kappa.
inline bool line_leq(const ConeSpec1D& spec, double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("line relation needs finite reals");
    return x <= y && y < x + spec.kappa;
}

/// Quotient relation: (b - a) mod L in [0, kappa).
inline bool angle_leq(const ConeSpec1D& spec, const Angle& a, const Angle& b) {
    if (!spec.period) throw std::invalid_argument("angle relation needs a period");
    return canonical_angle(b.value - a.value, *spec.period) < spec.kappa;
}

/// Positive-cone conditions on a sampled 1D cone predicate:
/// membership of the identity and C with -C only at 0. Whether C is closed
/// under addition is reported as a diagnostic (it decides transitivity, not
/// validity).
inline AxiomReport cone_axioms_check(const std::function<bool(double)>& cone,
                                     int samples, double range = 8.0,
                                     std::uint64_t seed = 0x51b0a9d1ULL) {
    if (samples <= 0) throw std::invalid_argument("samples must be positive");
    AxiomReport rep;
    if (!cone(0.0)) rep.fail("identity-in-cone", {Point{0.0}});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-range, range);
    std::vector<double> xs = {0.25, -0.25, 0.3, 1.0, -1.0, range * 0.5};
    while (static_cast<int>(xs.size()) < samples) xs.push_back(uni(rng));

    bool sum_closed = true;
    std::vector<double> members;
    for (double x : xs) {
        if (x != 0.0 && cone(x) && cone(-x))
            rep.fail("antisymmetric-cone", {Point{x}}, "x and -x both in C");
        if (cone(x)) members.push_back(x);
    }
    for (std::size_t i = 0; i < members.size() && sum_closed; ++i)
        for (std::size_t j = 0; j < members.size(); ++j)
            if (!cone(members[i] + members[j])) { sum_closed = false; break; }
    rep.diagnose("cone-sum-closed", sum_closed);
    return rep;
}

/// For the half-open 1D cone modulo L, the quotient stays antisymmetric iff
/// 2*kappa <= L. On failure a witness pair q, r in C with q + r in L*Z is
/// searched on a grid.
inline AxiomReport check_antiH(const ConeSpec1D& spec) {
    if (!spec.period) throw std::invalid_argument("check_antiH needs a period");
    AxiomReport rep;
    const double L = *spec.period;
    if (spec.anti_h_holds()) return rep;
    const double lo = L - spec.kappa;  // q in (L - kappa, kappa), r = L - q
    const double hi = spec.kappa;
    const int n = 17;
    for (int i = 1; i < n; ++i) {
        double q = lo + (hi - lo) * i / n;
        double r = L - q;
        if (q > 0.0 && q < spec.kappa && r > 0.0 && r < spec.kappa) {
            rep.fail("anti-subgroup", {Point{q}, Point{r}},
                     "q + r lands in the subgroup but q does not");
            break;
        }
    }
    if (rep.passed())
        rep.fail("anti-subgroup", {Point{L / 2.0}, Point{L / 2.0}}, "2*kappa > period");
    return rep;
}

// ---------------------------------------------------------------------------
// Sampled checkers shared by the 1D operations and the plane fixtures.
// ---------------------------------------------------------------------------

/// Anti-subgroup condition on sampled pairs: every provided pair (q, r)
/// satisfies q, r in C and q + r in H; the condition requires q, r in H.
inline AxiomReport check_antiH_sampled(
    const std::function<bool(const Point&)>& in_cone,
    const std::function<bool(const Point&)>& in_subgroup,
    const std::vector<std::pair<Point, Point>>& pairs) {
    AxiomReport rep;
    for (const auto& [q, r] : pairs) {
        if (!in_cone(q) || !in_cone(r)) continue;  // not a test instance
        if (!in_subgroup(q) || !in_subgroup(r))
            rep.fail("anti-subgroup", {q, r});
    }
    return rep;
}

/// Sampled quotient condition: for every z there must be a subgroup element h
/// with R(z) and C*H intersecting inside R(h). Semi-decision: probes a finite
/// point grid and a finite candidate list, and records the resolution.
inline AxiomReport check_quotient_postulate_sampled(
    const std::function<bool(const Point&)>& in_cone,
    const std::function<bool(const Point&)>& in_cone_subgroup,
    const PointSet& zs, const PointSet& h_candidates, const PointSet& probes) {
    AxiomReport rep;
    for (const Point& z : zs) {
        bool found = false;
        for (const Point& h : h_candidates) {
            bool ok = true;
            for (const Point& g : probes) {
                if (in_cone(g - z) && in_cone_subgroup(g) && !in_cone(g - h)) {
                    ok = false;
                    break;
                }
            }
            if (ok) { found = true; break; }
        }
        if (!found) rep.fail("quotient-postulate", {z});
    }
    rep.note = "sampled check: " + std::to_string(probes.size()) + " probes, " +
               std::to_string(h_candidates.size()) + " subgroup candidates";
    return rep;
}

/// 1D instance of the quotient condition for the angle cone.
inline AxiomReport check_quotient_postulate(const ConeSpec1D& spec, int samples,
                                            std::uint64_t seed = 0x0a71e511ULL) {
    if (!spec.period) throw std::invalid_argument("check_quotient_postulate needs a period");
    if (samples <= 0) throw std::invalid_argument("samples must be positive");
    const double L = *spec.period;
    auto in_cone = [&](const Point& p) { return p[0] >= 0.0 && p[0] < spec.kappa; };
    auto in_cone_h = [&](const Point& p) {
        return canonical_angle(p[0], L) < spec.kappa;
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uz(0.0, L);
    PointSet zs = {Point{0.0}, Point{L * 0.5}, Point{L - spec.kappa * 0.5}};
    while (static_cast<int>(zs.size()) < std::max(3, samples / 32))
        zs.push_back(Point{uz(rng)});
    PointSet hs;
    for (int k = -2; k <= 2; ++k) hs.push_back(Point{k * L});
    const int res = std::max(24, samples);
    PointSet probes;
    for (int i = 0; i <= res; ++i)
        probes.push_back(Point{-2.0 * L + (4.0 * L + spec.kappa) * i / res});
    return check_quotient_postulate_sampled(in_cone, in_cone_h, zs, hs, probes);
}

/// Sampled refinement condition for a sub-cone C of the base line cone:
/// y in C and 0 <= x <= y (base relation) must give x in C and y - x in C,
/// together with 0 in C and 0 <= c for sampled c in C.
inline AxiomReport check_refinement(const ConeSpec1D& base,
                                    const std::function<bool(double)>& cone,
                                    int samples, double range = 4.0,
                                    std::uint64_t seed = 0xc0117e5ULL) {
    if (samples <= 0) throw std::invalid_argument("samples must be positive");
    AxiomReport rep;
    if (!cone(0.0)) rep.fail("identity-in-cone", {Point{0.0}});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, range);
    int tested = 0;
    for (int it = 0; it < samples * 20 && tested < samples; ++it) {
        double y = uni(rng);
        if (!cone(y)) continue;
        if (!line_leq(base, 0.0, y)) {
            rep.fail("cone-above-identity", {Point{y}});
            ++tested;
            continue;
        }
        std::uniform_real_distribution<double> ux(0.0, y);
        double x = ux(rng);
        if (!line_leq(base, 0.0, x) || !line_leq(base, x, y)) continue;
        ++tested;
        if (!cone(x) || !cone(y - x))
            rep.fail("refinement", {Point{x}, Point{y}},
                     !cone(x) ? "x not in C" : "y - x not in C");
    }
    rep.note = "sampled triples: " + std::to_string(tested);
    return rep;
}

/// Meet of a finite set of angles: the element of P below every other one,
/// when it exists. Candidates can be restricted to P itself for this
/// relation.
inline std::optional<Angle> angle_meet(const ConeSpec1D& spec,
                                       const std::vector<Angle>& ps) {
    if (!spec.period) throw std::invalid_argument("angle_meet needs a period");
    if (!spec.valid() || !spec.anti_h_holds())
        throw std::invalid_argument("invalid angle cone: need 0 < 2*kappa <= period");
    if (ps.empty()) throw std::invalid_argument("angle_meet of empty set");
    for (const Angle& m : ps) {
        bool ok = true;
        for (const Angle& p : ps)
            if (!angle_leq(spec, m, p)) { ok = false; break; }
        if (ok) return m;
    }
    return std::nullopt;
}

inline std::optional<Angle> angle_join(const ConeSpec1D& spec,
                                       const std::vector<Angle>& ps) {
    if (!spec.period) throw std::invalid_argument("angle_join needs a period");
    if (!spec.valid() || !spec.anti_h_holds())
        throw std::invalid_argument("invalid angle cone: need 0 < 2*kappa <= period");
    if (ps.empty()) throw std::invalid_argument("angle_join of empty set");
    for (const Angle& m : ps) {
        bool ok = true;
        for (const Angle& p : ps)
            if (!angle_leq(spec, p, m)) { ok = false; break; }
        if (ok) return m;
    }
    return std::nullopt;
}

/// Same candidate scan for the un-quotiented line cone.
inline std::optional<double> line_meet(const ConeSpec1D& spec,
                                       const std::vector<double>& ps) {
    if (ps.empty()) throw std::invalid_argument("line_meet of empty set");
    for (double m : ps) {
        bool ok = true;
        for (double p : ps)
            if (!line_leq(spec, m, p)) { ok = false; break; }
        if (ok) return m;
    }
    return std::nullopt;
}

inline std::optional<double> line_join(const ConeSpec1D& spec,
                                       const std::vector<double>& ps) {
    if (ps.empty()) throw std::invalid_argument("line_join of empty set");
    for (double m : ps) {
        bool ok = true;
        for (double p : ps)
            if (!line_leq(spec, p, m)) { ok = false; break; }
        if (ok) return m;
    }
    return std::nullopt;
}

}  // namespace sponge
