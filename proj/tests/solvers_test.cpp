#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sponge/solvers.hpp"
#include "test_support.hpp"

using namespace sponge;
using testsup::random_point;

TEST_CASE("min-norm point on hand-checked hulls") {
    CHECK(approx_equal(min_norm_point({Point{2, 0}, Point{0, 2}}), Point{1, 1}, 1e-9));
    CHECK(min_norm_point({Point{3, 4}}) == Point{3, 4});
    CHECK(approx_equal(min_norm_point({Point{1, 1}, Point{2, 2}, Point{1, 2}}),
                       Point{1, 1}, 1e-9));
    // Hull through the origin collapses to zero.
    CHECK(norm(min_norm_point({Point{-1, 0}, Point{1, 0}})) <= 1e-12);
}

TEST_CASE("min-norm certificate recombines to the returned point") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        PointSet ps;
        for (int i = 0; i < 5; ++i) ps.push_back(random_point(rng, 3));
        MinNormResult r = min_norm_point_full(ps, 1e-10);
        REQUIRE(r.support.size() == r.weights.size());
        Point rebuilt(3, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < r.support.size(); ++i) {
            CHECK(r.weights[i] >= -1e-12);
            total += r.weights[i];
            rebuilt = rebuilt + r.weights[i] * ps[r.support[i]];
        }
        CHECK(total == Catch::Approx(1.0).margin(1e-9));
        CHECK(approx_equal(rebuilt, r.point, 1e-9));
    }
}

TEST_CASE("min-norm point beats a dense segment scan") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 30; ++it) {
        PointSet ps;
        for (int i = 0; i < 4; ++i) ps.push_back(random_point(rng, 2));
        Point z = min_norm_point(ps, 1e-10);
        // No random hull sample may be shorter.
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int s = 0; s < 500; ++s) {
            double w0 = uni(rng), w1 = uni(rng), w2 = uni(rng), w3 = uni(rng);
            double t = w0 + w1 + w2 + w3;
            Point hull = (w0 / t) * ps[0] + (w1 / t) * ps[1] + (w2 / t) * ps[2] +
                         (w3 / t) * ps[3];
            CHECK(norm_sq(hull) >= norm_sq(z) - 1e-7);
        }
    }
}

TEST_CASE("cyclic projection finds the min-norm point of halfspace systems") {
    // {y1 >= 1} & {y2 >= 1}: corner (1,1).
    std::vector<Halfspace> hs = {{Point{1, 0}, 1.0}, {Point{0, 1}, 1.0}};
    CHECK(approx_equal(dykstra_min_norm(hs, 1e-12), Point{1, 1}, 1e-9));
    // A single halfspace projects the origin onto its boundary.
    std::vector<Halfspace> one = {{Point{2, 0}, 4.0}};
    CHECK(approx_equal(dykstra_min_norm(one, 1e-12), Point{2, 0}, 1e-9));
}

TEST_CASE("golden section minimizes unimodal brackets") {
    double t = golden_section_min([](double x) { return (x - 0.3) * (x - 0.3); }, -1.0, 2.0);
    CHECK(t == Catch::Approx(0.3).margin(1e-9));
    t = golden_section_min([](double x) { return std::max(x * x, (1.0 - x) * (1.0 - x)); },
                           0.0, 1.0);
    CHECK(t == Catch::Approx(0.5).margin(1e-9));
}

namespace {

double power_objective(const PointSet& sites, const std::vector<double>& w,
                       const Point& c) {
    double m = -1e300;
    for (std::size_t i = 0; i < sites.size(); ++i)
        m = std::max(m, dist_sq(c, sites[i]) + w[i]);
    return m;
}

}  // namespace

TEST_CASE("power-distance solver matches a grid scan") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uw(-1.0, 1.0);
    for (int it = 0; it < 40; ++it) {
        PointSet sites;
        std::vector<double> w;
        int n = 2 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            sites.push_back(random_point(rng, 2, -1.0, 1.0));
            w.push_back(uw(rng));
        }
        PowerBall ball = power_welzl(sites, w, rng());
        double best = 1e300;
        for (double x = -1.5; x <= 1.5; x += 0.01)
            for (double y = -1.5; y <= 1.5; y += 0.01)
                best = std::min(best, power_objective(sites, w, Point{x, y}));
        CHECK(ball.value <= best + 1e-4);
        CHECK(power_objective(sites, w, ball.center) == Catch::Approx(ball.value).margin(1e-12));
    }
}

TEST_CASE("power-distance solver with zero offsets is the smallest enclosing ball") {
    PointSet sites = {Point{-1, 0}, Point{1, 0}, Point{0, 1}};
    std::vector<double> w = {0.0, 0.0, 0.0};
    PowerBall ball = power_welzl(sites, w);
    CHECK(approx_equal(ball.center, Point{0, 0}, 1e-9));
    CHECK(ball.value == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("generic convex minimizer approximates a smooth quadratic") {
    auto g = [](const Point& c) {
        return (c[0] - 0.25) * (c[0] - 0.25) + 2.0 * (c[1] + 0.5) * (c[1] + 0.5);
    };
    auto sg = [](const Point& c) {
        return Point{2.0 * (c[0] - 0.25), 4.0 * (c[1] + 0.5)};
    };
    Point r = minimize_convex(g, sg, {Point{1, 1}, Point{-1, -1}}, 4000, 1e-10);
    CHECK(approx_equal(r, Point{0.25, -0.5}, 1e-5));
}
