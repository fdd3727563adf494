#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "errors.hpp"
#include "point.hpp"

namespace sponge {

// ---------------------------------------------------------------------------
// Small dense linear solve, Gaussian elimination with partial pivoting.
// Returns false when the system is numerically singular.
// ---------------------------------------------------------------------------
inline bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& out) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-13) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * out[c];
        out[i] = s / a[i][i];
    }
    return true;
}

// ---------------------------------------------------------------------------
// Wolfe's minimum-norm-point algorithm over the convex hull of finitely many
// points. Maintains a corral of affinely independent points whose affine
// minimizer has nonnegative weights.
// ---------------------------------------------------------------------------
struct MinNormResult {
    Point point;
    std::vector<std::size_t> support;  // indices into the input set
    std::vector<double> weights;       // convex weights over `support`
    int iterations = 0;
    bool converged = true;
};

namespace detail {

// Affine minimizer of ||sum v_i p_i|| subject to sum v_i = 1, over the corral.
inline bool affine_minimizer(const PointSet& pts, const std::vector<std::size_t>& s,
                             std::vector<double>& v) {
    const std::size_t k = s.size();
    std::vector<std::vector<double>> m(k + 1, std::vector<double>(k + 1, 0.0));
    std::vector<double> rhs(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = dot(pts[s[i]], pts[s[j]]);
        m[i][k] = 1.0;
        m[k][i] = 1.0;
    }
    rhs[k] = 1.0;
    std::vector<double> sol;
    if (!solve_linear(m, rhs, sol)) return false;
    v.assign(sol.begin(), sol.begin() + k);
    return true;
}

inline Point combine(const PointSet& pts, const std::vector<std::size_t>& s,
                     const std::vector<double>& w) {
    Point x(pts.front().dim(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t d = 0; d < x.dim(); ++d) x[d] += w[i] * pts[s[i]][d];
    return x;
}

}  // namespace detail

inline MinNormResult min_norm_point_full(const PointSet& input, double tol = 1e-9) {
    require_nonempty_uniform(input);
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    const PointSet pts = input;
    const std::size_t n = pts.size();
    const std::size_t dim = pts.front().dim();

    MinNormResult res;
    std::size_t init = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (norm_sq(pts[i]) < norm_sq(pts[init])) init = i;

    std::vector<std::size_t> s{init};
    std::vector<double> w{1.0};
    Point x = pts[init];

    const int cap = std::max<int>(64, static_cast<int>(10 * n * dim));
    for (int iter = 0; iter < cap; ++iter) {
        res.iterations = iter;
        const double xx = norm_sq(x);
        if (xx <= 1e-28) {
            x = Point(dim, 0.0);
            break;
        }
        std::size_t best = 0;
        double bestv = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double v = dot(x, pts[i]);
            if (v < bestv) { bestv = v; best = i; }
        }
        // Duality gap bound: min over the hull of ||z||^2 >= 2*bestv - ||x||^2.
        if (xx - bestv <= 0.5 * tol) break;
        if (std::find(s.begin(), s.end(), best) != s.end()) break;  // numerical stall
        s.push_back(best);
        w.push_back(0.0);

        for (int minor = 0; minor < 64; ++minor) {
            std::vector<double> v;
            if (!detail::affine_minimizer(pts, s, v)) {
                s.pop_back();
                w.pop_back();
                minor = 64;
                break;
            }
            double vmin = *std::min_element(v.begin(), v.end());
            if (vmin >= -1e-12) {
                w = v;
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (v[i] < 1e-12 && w[i] > v[i])
                    theta = std::min(theta, w[i] / (w[i] - v[i]));
            for (std::size_t i = 0; i < s.size(); ++i)
                w[i] = (1.0 - theta) * w[i] + theta * v[i];
            for (std::size_t i = s.size(); i-- > 0;) {
                if (w[i] <= 1e-12) {
                    s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
                }
            }
        }
        // Renormalize and rebuild x from the corral.
        double sum = 0.0;
        for (double wi : w) sum += wi;
        for (double& wi : w) wi /= sum;
        x = detail::combine(pts, s, w);
    }

    if (s.size() == 1 && w.size() == 1 && w[0] == 1.0) x = pts[s[0]];
    res.point = std::move(x);
    res.support = std::move(s);
    res.weights = std::move(w);
    return res;
}

inline Point min_norm_point(const PointSet& input, double tol = 1e-9) {
    return min_norm_point_full(input, tol).point;
}

// ---------------------------------------------------------------------------
// Dykstra's cyclic projection onto an intersection of halfspaces
// {y : dot(normal, y) >= offset}. Started from the origin it converges to the
// minimum-norm point of the intersection when it is nonempty.
// ---------------------------------------------------------------------------
struct Halfspace {
    Point normal;
    double offset;
};

inline Point dykstra_min_norm(const std::vector<Halfspace>& hs, double tol = 1e-9,
                              int max_cycles = 200000,
                              double diverge_radius = std::numeric_limits<double>::infinity()) {
    if (hs.empty()) throw std::invalid_argument("no halfspaces");
    const std::size_t dim = hs.front().normal.dim();
    Point x(dim, 0.0);
    std::vector<Point> corr(hs.size(), Point(dim, 0.0));

    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        Point prev = x;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            Point y = x + corr[i];
            double viol = hs[i].offset - dot(hs[i].normal, y);
            Point projected = viol > 0.0
                                  ? y + (viol / norm_sq(hs[i].normal)) * hs[i].normal
                                  : y;
            corr[i] = y - projected;
            x = projected;
        }
        if (norm(x) > diverge_radius)
            throw non_convergence("projection iterates left the certified radius");
        if (dist(x, prev) < tol) return x;
    }
    throw non_convergence("cyclic projection did not converge (tolerance too tight?)");
}

// ---------------------------------------------------------------------------
// Golden-section search for a unimodal function on [a, b].
// ---------------------------------------------------------------------------
inline double golden_section_min(const std::function<double(double)>& f, double a,
                                 double b, double tol = 1e-12, int max_iter = 400) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    double mid = 0.5 * (a + b);
    double fm = f(mid);
    if (f1 < fm && f1 <= f2) return x1;
    if (f2 < fm) return x2;
    return mid;
}

// ---------------------------------------------------------------------------
// Exact minimizer of  c |-> max_i (||c - a_i||^2 + w_i)  by a Welzl-style
// recursion. All quadratics share the same curvature, so this is the
// smallest-enclosing-ball problem under the power distance; the minimizer is
// supported by at most dim+1 active sites and lies in their convex hull.
// ---------------------------------------------------------------------------
struct PowerBall {
    Point center;
    double value = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> support;
    bool ok = false;
};

namespace detail {

inline double power_value(const Point& c, const Point& a, double w) {
    return dist_sq(c, a) + w;
}

inline PowerBall power_basis(const PointSet& a, const std::vector<double>& w,
                             const std::vector<std::size_t>& r) {
    PowerBall ball;
    if (r.empty()) {
        ball.value = -std::numeric_limits<double>::infinity();
        return ball;  // ok=false: everything violates it
    }
    const std::size_t k = r.size();
    if (k == 1) {
        ball.center = a[r[0]];
        ball.value = w[r[0]];
        ball.support = r;
        ball.ok = true;
        return ball;
    }
    // All sites of r active and the center in their affine hull:
    //   c = a_0 + sum_l beta_l (a_l - a_0),
    //   2 (c, a_j - a_0) = q_j - q_0  with  q_i = ||a_i||^2 + w_i.
    const Point& a0 = a[r[0]];
    const double q0 = norm_sq(a0) + w[r[0]];
    std::vector<Point> d;
    std::vector<double> rhs;
    for (std::size_t j = 1; j < k; ++j) {
        d.push_back(a[r[j]] - a0);
        rhs.push_back((norm_sq(a[r[j]]) + w[r[j]]) - q0 - 2.0 * dot(a0, d.back()));
    }
    std::vector<std::vector<double>> m(k - 1, std::vector<double>(k - 1, 0.0));
    for (std::size_t j = 0; j + 1 < k; ++j)
        for (std::size_t l = 0; l + 1 < k; ++l) m[j][l] = 2.0 * dot(d[l], d[j]);
    std::vector<double> beta;
    if (!solve_linear(m, rhs, beta)) return ball;  // degenerate basis
    Point c = a0;
    for (std::size_t l = 0; l + 1 < k; ++l) c = c + beta[l] * d[l];
    ball.center = c;
    ball.value = -std::numeric_limits<double>::infinity();
    for (std::size_t i : r) ball.value = std::max(ball.value, power_value(c, a[i], w[i]));
    ball.support = r;
    ball.ok = true;
    return ball;
}

inline PowerBall power_welzl_rec(const PointSet& a, const std::vector<double>& w,
                                 std::vector<std::size_t>& order, std::size_t end,
                                 std::vector<std::size_t>& r, std::size_t max_basis) {
    if (end == 0 || r.size() == max_basis) return power_basis(a, w, r);
    std::size_t p = order[end - 1];
    PowerBall ball = power_welzl_rec(a, w, order, end - 1, r, max_basis);
    double scale = std::max(1.0, std::abs(ball.value));
    if (ball.ok && power_value(ball.center, a[p], w[p]) <= ball.value + 1e-12 * scale)
        return ball;
    r.push_back(p);
    PowerBall forced = power_welzl_rec(a, w, order, end - 1, r, max_basis);
    r.pop_back();
    if (!forced.ok) return ball;  // degenerate; keep the unforced solution
    return forced;
}

}  // namespace detail

inline PowerBall power_welzl(const PointSet& sites, const std::vector<double>& offsets,
                             std::uint64_t shuffle_seed = 0x5eed5eedULL) {
    require_nonempty_uniform(sites);
    if (sites.size() != offsets.size())
        throw std::invalid_argument("sites/offsets size mismatch");
    std::vector<std::size_t> order(sites.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> r;
    PowerBall ball = detail::power_welzl_rec(sites, offsets, order, order.size(), r,
                                             sites.front().dim() + 1);
    if (!ball.ok) throw non_convergence("degenerate power-distance basis");
    // Report the value over the full site set.
    ball.value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sites.size(); ++i)
        ball.value = std::max(ball.value, detail::power_value(ball.center, sites[i], offsets[i]));
    return ball;
}

// ---------------------------------------------------------------------------
// Multistart subgradient descent with a Polyak-style step on an adaptive
// target level, followed by a compass refinement. Fallback for convex
// minimax objectives that have no exact combinatorial solver here.
// ---------------------------------------------------------------------------
inline Point minimize_convex(const std::function<double(const Point&)>& g,
                             const std::function<Point(const Point&)>& subgrad,
                             const PointSet& starts, int max_iter = 2000,
                             double tol = 1e-9) {
    if (starts.empty()) throw std::invalid_argument("no starts");
    Point best = starts.front();
    double best_val = g(best);

    for (const Point& s0 : starts) {
        Point x = s0;
        double fx = g(x);
        double local_best = fx;
        Point local_point = x;
        double delta = std::max(1.0, std::abs(fx)) * 0.1;
        int stall = 0;
        for (int it = 0; it < max_iter && delta > tol * 1e-3; ++it) {
            Point sg = subgrad(x);
            double ns = norm_sq(sg);
            if (ns <= 1e-30) break;
            double step = (fx - (local_best - delta)) / ns;
            x = x - step * sg;
            fx = g(x);
            if (fx < local_best - 1e-15) {
                local_best = fx;
                local_point = x;
                stall = 0;
            } else if (++stall >= 30) {
                delta *= 0.5;
                x = local_point;
                fx = local_best;
                stall = 0;
            }
        }
        if (local_best < best_val) {
            best_val = local_best;
            best = local_point;
        }
    }

    // Compass refinement over +-e_i and diagonal directions.
    const std::size_t d = best.dim();
    std::vector<Point> dirs;
    if (d <= 3) {
        std::vector<int> sig(d, -1);
        while (true) {
            Point dir(d, 0.0);
            bool nonzero = false;
            for (std::size_t i = 0; i < d; ++i) {
                dir[i] = sig[i];
                if (sig[i] != 0) nonzero = true;
            }
            if (nonzero) dirs.push_back((1.0 / norm(dir)) * dir);
            std::size_t i = 0;
            for (; i < d; ++i) {
                if (sig[i] < 1) { ++sig[i]; break; }
                sig[i] = -1;
            }
            if (i == d) break;
        }
    } else {
        for (std::size_t i = 0; i < d; ++i) {
            Point e(d, 0.0);
            e[i] = 1.0;
            dirs.push_back(e);
            dirs.push_back(-e);
        }
    }
    double step = std::max(1e-3, 0.01 * (1.0 + norm(best)));
    while (step > tol * 0.25) {
        bool improved = false;
        for (const Point& dir : dirs) {
            Point cand = best + step * dir;
            double v = g(cand);
            if (v < best_val - 1e-18) {
                best_val = v;
                best = cand;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace sponge
