#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sponge/core.hpp"
#include "sponge/groups.hpp"
#include "test_support.hpp"

using namespace sponge;

namespace {
const double pi = 3.14159265358979323846;
const ConeSpec1D half_circle{pi, 2.0 * pi};
const ConeSpec1D unit_box{0.5, std::nullopt};
const ConeSpec1D torus_half{0.5, 1.0};
}  // namespace

TEST_CASE("cone axiom checks") {
    auto half_open = [](double t) { return t >= 0.0 && t < 0.5; };
    AxiomReport r1 = cone_axioms_check(half_open, 300, 2.0);
    CHECK(r1.passed());
    bool sum_closed = true;
    for (auto& [name, ok] : r1.diagnostics)
        if (name == "cone-sum-closed") sum_closed = ok;
    CHECK_FALSE(sum_closed);  // 0.3 + 0.3 leaves [0, 0.5): not transitive

    auto trivial = [](double t) { return t == 0.0; };
    CHECK(cone_axioms_check(trivial, 300).passed());

    auto ray = [](double t) { return t >= 0.0; };
    AxiomReport r3 = cone_axioms_check(ray, 300);
    CHECK(r3.passed());
    for (auto& [name, ok] : r3.diagnostics)
        if (name == "cone-sum-closed") CHECK(ok);  // the standard total order
}

TEST_CASE("line relation") {
    CHECK(line_leq(unit_box, 0.1, 0.4));
    CHECK(line_leq(unit_box, 0.7, 0.7));
    CHECK_FALSE(line_leq(unit_box, 0.1, 0.7));
    CHECK_FALSE(line_leq(unit_box, 0.4, 0.1));
}

TEST_CASE("angle relation wraps around the period") {
    Angle a(6.1, half_circle), b(0.2, half_circle);
    CHECK(angle_leq(half_circle, a, b));       // (0.2 - 6.1) mod 2pi ~ 0.383
    CHECK_FALSE(angle_leq(half_circle, b, a)); // 5.9 not below pi
    CHECK(angle_leq(half_circle, b, b));
}

TEST_CASE("anti-subgroup condition is the analytic inequality") {
    CHECK(check_antiH(torus_half).passed());
    CHECK(check_antiH(ConeSpec1D{0.5, 2.0}).passed());
    AxiomReport bad = check_antiH(ConeSpec1D{0.7, 1.0});
    CHECK_FALSE(bad.passed());
    REQUIRE_FALSE(bad.violations.empty());
    REQUIRE(bad.violations.front().witnesses.size() == 2);
    double q = bad.violations.front().witnesses[0][0];
    double r = bad.violations.front().witnesses[1][0];
    CHECK(q >= 0.0);
    CHECK(q < 0.7);
    CHECK(r >= 0.0);
    CHECK(r < 0.7);
    CHECK(q + r == Catch::Approx(1.0).margin(1e-12));  // lands in the subgroup
}

TEST_CASE("quotient condition holds for valid 1D cones") {
    CHECK(check_quotient_postulate(torus_half, 128).passed());
    CHECK(check_quotient_postulate(ConeSpec1D{1.0, 2.0}, 128).passed());  // kappa = L/2
    CHECK(check_quotient_postulate(half_circle, 128).passed());
}

TEST_CASE("refinement condition") {
    ConeSpec1D base_total{std::numeric_limits<double>::infinity(), std::nullopt};
    auto half = [](double t) { return t >= 0.0 && t < 0.5; };
    CHECK(check_refinement(base_total, half, 400).passed());

    auto trivial = [](double t) { return t == 0.0; };
    CHECK(check_refinement(base_total, trivial, 400).passed());

    ConeSpec1D base_unit{1.0, std::nullopt};
    auto gapped = [](double t) {
        return (t >= 0.0 && t < 0.25) || (t >= 0.5 && t < 0.75);
    };
    CHECK_FALSE(check_refinement(base_unit, gapped, 800).passed());
}

TEST_CASE("angle meet and join by candidate scan") {
    std::vector<Angle> ps = {Angle(0.2, half_circle), Angle(6.1, half_circle)};
    auto m = angle_meet(half_circle, ps);
    auto j = angle_join(half_circle, ps);
    REQUIRE(m.has_value());
    REQUIRE(j.has_value());
    CHECK(m->value == Catch::Approx(6.1).margin(1e-12));
    CHECK(j->value == Catch::Approx(0.2).margin(1e-12));

    std::vector<Angle> single = {Angle(1.234, half_circle)};
    CHECK(angle_meet(half_circle, single)->value == Catch::Approx(1.234));

    std::vector<Angle> spread = {Angle(0.0, half_circle), Angle(2.5, half_circle),
                                 Angle(4.5, half_circle)};
    CHECK_FALSE(angle_meet(half_circle, spread).has_value());
    CHECK_FALSE(angle_join(half_circle, spread).has_value());
}

TEST_CASE("angle meet certified against a fine grid of left bounds") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        PointSet arc = testsup::angle_arc_set(rng, half_circle, 4);
        std::vector<Angle> as;
        for (const Point& p : arc) as.emplace_back(p[0], half_circle);
        auto m = angle_meet(half_circle, as);
        REQUIRE(m.has_value());
        // Every grid angle below all of P is below the meet.
        const double L = 2.0 * pi;
        for (int g = 0; g < 720; ++g) {
            Angle u(L * g / 720.0, half_circle);
            bool lb = true;
            for (const Angle& p : as)
                if (!angle_leq(half_circle, u, p)) { lb = false; break; }
            if (lb) CHECK(angle_leq(half_circle, u, *m));
        }
    }
}

TEST_CASE("translation invariance and inversion antitone") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * pi);
    for (int it = 0; it < 2000; ++it) {
        double a = uni(rng), b = uni(rng), t = uni(rng);
        Angle aa(a, half_circle), bb(b, half_circle);
        Angle at(a + t, half_circle), bt(b + t, half_circle);
        CHECK(angle_leq(half_circle, aa, bb) == angle_leq(half_circle, at, bt));
        Angle na(-a, half_circle), nb(-b, half_circle);
        CHECK(angle_leq(half_circle, aa, bb) == angle_leq(half_circle, nb, na));
    }
}

TEST_CASE("canonical projection is monotone") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-8.0, 8.0);
    ConeSpec1D line{0.5, std::nullopt};
    for (int it = 0; it < 2000; ++it) {
        double x = uni(rng), y = uni(rng);
        if (line_leq(line, x, y))
            CHECK(angle_leq(torus_half, Angle(x, torus_half), Angle(y, torus_half)));
    }
}

TEST_CASE("product of two half-cones reproduces the box and torus examples") {
    auto torus2 = std::vector<SpongeSpec>{SpongeSpec::angle(torus_half),
                                          SpongeSpec::angle(torus_half)};
    PointSet ps = {Point{0.1, 0.2}, Point{0.3, 0.1}};
    Point j = product_join(torus2, ps);
    CHECK(approx_equal(j, Point{0.3, 0.2}, 1e-12));
    CHECK(product_meet(torus2, ps) == Point{0.1, 0.1});

    CHECK(product_join(torus2, PointSet{Point{0.9, 0.05}}) == Point{0.9, 0.05});

    auto circle2 = std::vector<SpongeSpec>{SpongeSpec::angle(half_circle),
                                           SpongeSpec::angle(half_circle)};
    PointSet spread = {Point{0.0, 0.1}, Point{2.5, 0.2}, Point{4.5, 0.15}};
    try {
        product_join(circle2, spread);
        FAIL("expected component_unbounded");
    } catch (const component_unbounded& e) {
        CHECK(e.block == 0);
    }

    // The un-quotiented box relation agrees componentwise.
    auto box2 = std::vector<SpongeSpec>{SpongeSpec::angle(unit_box),
                                        SpongeSpec::angle(unit_box)};
    auto spec2 = SpongeSpec::product({SpongeSpec::angle(unit_box), SpongeSpec::angle(unit_box)});
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int it = 0; it < 500; ++it) {
        Point x{uni(rng), uni(rng)}, y{uni(rng), uni(rng)};
        bool expected = x[0] <= y[0] && y[0] < x[0] + 0.5 && x[1] <= y[1] && y[1] < x[1] + 0.5;
        CHECK(spec_leq(spec2, x, y) == expected);
    }
    (void)box2;
}

TEST_CASE("plane fixtures: grid subgroup passes, diagonal fails, antidiagonal splits") {
    // Cone C = [0, 1/2)^2 in the plane.
    auto in_cone = [](const Point& p) {
        return p[0] >= 0.0 && p[0] < 0.5 && p[1] >= 0.0 && p[1] < 0.5;
    };
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uc(0.0, 0.5);

    SECTION("grid subgroup satisfies both conditions") {
        auto in_grid = [](const Point& p) {
            return std::abs(p[0] - std::round(p[0])) < 1e-12 &&
                   std::abs(p[1] - std::round(p[1])) < 1e-12;
        };
        // Pairs q, r in C with q + r on the grid force q = r = 0.
        std::vector<std::pair<Point, Point>> pairs;
        for (int i = 0; i < 400; ++i) {
            Point q{uc(rng), uc(rng)};
            for (int gx = 0; gx <= 1; ++gx)
                for (int gy = 0; gy <= 1; ++gy) {
                    Point r{gx - q[0], gy - q[1]};
                    pairs.emplace_back(q, r);
                }
        }
        pairs.emplace_back(Point{0.0, 0.0}, Point{0.0, 0.0});
        CHECK(check_antiH_sampled(in_cone, in_grid, pairs).passed());

        auto in_cone_grid = [&](const Point& p) {
            double fx = p[0] - std::floor(p[0]);
            double fy = p[1] - std::floor(p[1]);
            return fx < 0.5 && fy < 0.5;
        };
        PointSet zs, hs, probes;
        std::uniform_real_distribution<double> uz(-1.0, 1.0);
        for (int i = 0; i < 12; ++i) zs.push_back(Point{uz(rng), uz(rng)});
        for (int gx = -2; gx <= 2; ++gx)
            for (int gy = -2; gy <= 2; ++gy) hs.push_back(Point{double(gx), double(gy)});
        for (int i = 0; i < 4000; ++i) probes.push_back(Point{3.0 * uz(rng), 3.0 * uz(rng)});
        CHECK(check_quotient_postulate_sampled(in_cone, in_cone_grid, zs, hs, probes).passed());
    }

    SECTION("diagonal line fails the anti-subgroup condition") {
        auto in_diag = [](const Point& p) { return std::abs(p[0] - p[1]) < 1e-12; };
        std::vector<std::pair<Point, Point>> pairs;
        std::uniform_real_distribution<double> ut(0.0, 0.8);
        for (int i = 0; i < 400; ++i) {
            double t = ut(rng);
            Point q{uc(rng), uc(rng)};
            pairs.emplace_back(q, Point{t - q[0], t - q[1]});
        }
        CHECK_FALSE(check_antiH_sampled(in_cone, in_diag, pairs).passed());
    }

    SECTION("antidiagonal passes anti-subgroup and fails the quotient condition") {
        auto in_anti = [](const Point& p) { return std::abs(p[0] + p[1]) < 1e-12; };
        std::vector<std::pair<Point, Point>> pairs;
        std::uniform_real_distribution<double> ut(-0.8, 0.8);
        for (int i = 0; i < 400; ++i) {
            double t = ut(rng);
            Point q{uc(rng), uc(rng)};
            pairs.emplace_back(q, Point{t - q[0], -t - q[1]});
        }
        pairs.emplace_back(Point{0.0, 0.0}, Point{0.0, 0.0});
        CHECK(check_antiH_sampled(in_cone, in_anti, pairs).passed());

        // C*H is the band 0 <= x + y < 1.
        auto in_band = [](const Point& p) { return p[0] + p[1] >= 0.0 && p[0] + p[1] < 1.0; };
        PointSet zs = {Point{0.25, 0.0}};
        PointSet hs, probes;
        for (int k = -40; k <= 40; ++k) hs.push_back(Point{k * 0.025, -k * 0.025});
        std::uniform_real_distribution<double> up(-1.0, 1.5);
        for (int i = 0; i < 6000; ++i) probes.push_back(Point{up(rng), up(rng)});
        CHECK_FALSE(check_quotient_postulate_sampled(in_cone, in_band, zs, hs, probes).passed());
    }
}
