// Command-line front end: join/meet of point sets, spec validation, sponge
// morphology on fields, cone boundary sampling, axiom checks, and the
// brute-force oracle comparison.
//
// Exit codes: 0 ok, 1 input error, 2 unbounded, 3 validation failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sponge/sponge.hpp"
#include "sponge/spec_json.hpp"

using namespace sponge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnbounded = 2;
constexpr int kExitValidation = 3;

void print_report(const std::string& name, const AxiomReport& rep) {
    std::cout << (rep.passed() ? "PASS " : "FAIL ") << name;
    if (!rep.note.empty()) std::cout << " (" << rep.note << ")";
    std::cout << "\n";
    for (const auto& v : rep.violations) {
        std::cout << "  violated " << v.axiom;
        if (!v.detail.empty()) std::cout << ": " << v.detail;
        for (const Point& w : v.witnesses) std::cout << "  [" << format_point_sig12(w) << "]";
        std::cout << "\n";
    }
    for (const auto& [what, ok] : rep.diagnostics)
        std::cout << "  note: " << what << " = " << (ok ? "yes" : "no") << "\n";
}

int run_extremum(const std::string& points_path, const std::string& spec_path,
                 double tol, bool join_side) {
    SpongeSpec spec = parse_sponge_spec_file(spec_path);
    PointSet ps = read_points_csv_file(points_path);
    std::optional<Point> r =
        join_side ? spec_join(spec, ps, tol) : spec_meet(spec, ps, tol);
    if (!r) {
        std::cout << "UNBOUNDED\n";
        return kExitUnbounded;
    }
    std::cout << format_point_sig12(*r) << "\n";
    return kExitOk;
}

// Validation must accept specs that fail their family's axioms (that is the
// point of the command), so the JSON is walked leniently instead of going
// through the strict SpongeSpec constructors.
bool validate_json(const nlohmann::json& j, int samples, std::uint64_t seed,
                   const std::string& prefix) {
    const std::string family = j.at("family").get<std::string>();
    std::mt19937_64 rng(seed);
    if (family == "epigraph") {
        Profile f = parse_profile(j.at("profile"));
        AxiomReport rep = validate_profile(f, j.at("dim").get<int>(), samples, seed);
        print_report(prefix + "epigraph profile", rep);
        return rep.passed();
    }
    if (family == "angle") {
        ConeSpec1D cone;
        cone.kappa = j.at("kappa").get<double>();
        if (j.contains("period") && !j.at("period").is_null())
            cone.period = j.at("period").get<double>();
        bool ok = true;
        if (cone.period) {
            AxiomReport anti = check_antiH(cone);
            print_report(prefix + "anti-subgroup condition", anti);
            ok = anti.passed();
            if (ok) {
                AxiomReport quo = check_quotient_postulate(cone, samples, seed);
                print_report(prefix + "quotient condition", quo);
                ok = quo.passed();
            }
        }
        auto pred = [&](double t) { return t >= 0.0 && t < cone.kappa; };
        AxiomReport ca = cone_axioms_check(pred, samples, 4.0 * cone.kappa, seed);
        print_report(prefix + "cone conditions", ca);
        return ok && ca.passed();
    }
    if (family == "product") {
        bool ok = true;
        int i = 0;
        for (const auto& c : j.at("components"))
            ok = validate_json(c, samples, seed, prefix + "component " +
                                                     std::to_string(i++) + ": ") && ok;
        return ok;
    }
    SpongeSpec spec = parse_sponge_spec(j);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    PointSet sample;
    for (int i = 0; i < std::max(8, samples / 8); ++i) {
        Point p(static_cast<std::size_t>(spec.dim));
        for (int d = 0; d < spec.dim; ++d) p[d] = uni(rng);
        if (spec.family == Family::Hyperbolic) p.h() = std::abs(p.h()) + 0.05;
        sample.push_back(p);
    }
    AxiomReport rep = check_orientation(spec, sample);
    print_report(prefix + "orientation axioms", rep);
    return rep.passed();
}

int run_validate(const std::string& spec_path, int samples, std::uint64_t seed) {
    std::ifstream in(spec_path);
    if (!in) throw std::invalid_argument("cannot open '" + spec_path + "'");
    nlohmann::json j;
    in >> j;
    return validate_json(j, samples, seed, "") ? kExitOk : kExitValidation;
}

int run_axioms(const std::string& spec_path, const std::string& points_path,
               const std::string& witness_path, double tol) {
    SpongeSpec spec = parse_sponge_spec_file(spec_path);
    PointSet ps = read_points_csv_file(points_path);
    bool ok = true;

    AxiomReport orient = check_orientation(spec, ps);
    print_report("orientation", orient);
    ok = ok && orient.passed();

    try {
        AxiomReport abs = check_absorption(spec, ps, tol);
        print_report("absorption", abs);
        ok = ok && abs.passed();
    } catch (const join_unavailable&) {
        std::cout << "SKIP absorption (set has no join)\n";
    }

    if (!witness_path.empty()) {
        PointSet w = read_points_csv_file(witness_path);
        AxiomReport pp = check_part_preservation(spec, ps, w.front(), tol);
        print_report("part preservation", pp);
        ok = ok && pp.passed();
    }
    return ok ? kExitOk : kExitValidation;
}

int run_oracle(const std::string& spec_path, const std::string& points_path,
               const std::string& side, double step, double tol) {
    SpongeSpec spec = parse_sponge_spec_file(spec_path);
    PointSet ps = read_points_csv_file(points_path);
    const bool join_side = side == "join";
    Side s = join_side ? Side::Right : Side::Left;

    std::optional<Point> exact =
        join_side ? spec_join(spec, ps, tol) : spec_meet(spec, ps, tol);
    GridSpec grid = certified_box(spec, ps, s, step);
    std::optional<Point> scanned =
        brute_force_extremum(spec, ps, grid, join_side ? Side::Right : Side::Left);

    std::cout << "exact:  " << (exact ? format_point_sig12(*exact) : "UNBOUNDED") << "\n";
    std::cout << "oracle: " << (scanned ? format_point_sig12(*scanned) : "UNBOUNDED") << "\n";
    if (exact.has_value() != scanned.has_value()) {
        std::cout << "DISAGREE (existence)\n";
        return kExitValidation;
    }
    if (!exact) {
        std::cout << "AGREE (both unbounded)\n";
        return kExitOk;
    }
    double diff = max_abs_diff(*exact, *scanned);
    std::cout << "max-abs difference: " << format_double_sig12(diff) << "\n";
    if (diff > 5.0 * step) {
        std::cout << "DISAGREE (beyond 5*step)\n";
        return kExitValidation;
    }
    std::cout << "AGREE (within 5*step)\n";
    return kExitOk;
}

int run_morph(const std::string& field_path, const std::string& se_path,
              const std::string& spec_path, const std::string& op,
              const std::string& out_path, const std::string& boundary,
              const std::string& on_unbounded, double tol, int threads) {
    SpongeSpec spec = parse_sponge_spec_file(spec_path);
    Field field = read_field_file(field_path);
    StructuringElement se = parse_structuring_element_file(se_path);
    if (!se.contains_origin())
        std::cerr << "warning: structuring element does not contain (0,0)\n";

    BoundaryPolicy bp = BoundaryPolicy::Shrink;
    if (boundary == "clamp") bp = BoundaryPolicy::Clamp;
    else if (boundary == "shrink") bp = BoundaryPolicy::Shrink;
    else if (boundary == "error") bp = BoundaryPolicy::Error;
    else throw std::invalid_argument("unknown boundary policy '" + boundary + "'");

    std::optional<UnboundedPolicy> up;
    if (on_unbounded == "error") up = UnboundedPolicy::Error;
    else if (on_unbounded == "passthrough") up = UnboundedPolicy::Passthrough;
    else if (!on_unbounded.empty() && on_unbounded != "default")
        throw std::invalid_argument("unknown unbounded policy '" + on_unbounded + "'");

    auto t0 = std::chrono::steady_clock::now();
    MorphResult r;
    if (op == "dilate") r = dilate_stats(field, se, spec, bp, up, tol, threads);
    else if (op == "erode") r = erode_stats(field, se, spec, bp, up, tol, threads);
    else if (op == "open") {
        r = erode_stats(field, se, spec, bp, up, tol, threads);
        MorphResult r2 = dilate_stats(r.field, se, spec, bp, up, tol, threads);
        r2.unbounded_pixels += r.unbounded_pixels;
        r = std::move(r2);
    } else if (op == "close") {
        r = dilate_stats(field, se, spec, bp, up, tol, threads);
        MorphResult r2 = erode_stats(r.field, se, spec, bp, up, tol, threads);
        r2.unbounded_pixels += r.unbounded_pixels;
        r = std::move(r2);
    } else {
        throw std::invalid_argument("unknown op '" + op + "' (dilate|erode|open|close)");
    }
    auto t1 = std::chrono::steady_clock::now();
    write_field_file(out_path, r.field);

    double secs = std::chrono::duration<double>(t1 - t0).count();
    std::cout << "pixels=" << field.width * field.height
              << " unbounded=" << r.unbounded_pixels << " elapsed="
              << format_double_sig12(secs) << "s\n";
    return kExitOk;
}

int run_cones(const std::string& spec_path, const std::string& point_path,
              int resolution, std::uint64_t seed) {
    SpongeSpec spec = parse_sponge_spec_file(spec_path);
    PointSet ps = read_points_csv_file(point_path);
    const Point& x = ps.front();
    require_spec_point(spec, x);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double pi = 3.14159265358979323846;

    auto emit = [&](char tag, const Point& p) {
        std::cout << tag;
        for (std::size_t i = 0; i < p.dim(); ++i) std::cout << ',' << format_double(p[i]);
        std::cout << "\n";
    };
    auto unit_dir = [&](std::size_t dim) {
        Point d(dim);
        double n = 0.0;
        while (n < 1e-6) {
            for (std::size_t i = 0; i < dim; ++i) d[i] = uni(rng);
            n = norm(d);
        }
        return (1.0 / n) * d;
    };

    switch (spec.family) {
        case Family::InnerProduct: {
            if (norm_sq(x) == 0.0) {
                std::cout << "R,EVERYWHERE\n";
                emit('L', x);  // L(0) = {0}
                return kExitOk;
            }
            // L(x): sphere centered x/2, radius ||x||/2. R(x): hyperplane (x,y)=(x,x).
            for (int i = 0; i < resolution; ++i) {
                if (x.dim() == 2) {
                    double th = 2.0 * pi * i / resolution;
                    Point z{0.5 * x[0] + 0.5 * norm(x) * std::cos(th),
                            0.5 * x[1] + 0.5 * norm(x) * std::sin(th)};
                    emit('L', z);
                } else {
                    emit('L', 0.5 * x + (0.5 * norm(x)) * unit_dir(x.dim()));
                }
            }
            for (int i = 0; i < resolution; ++i) {
                Point d = unit_dir(x.dim());
                Point t = d - (dot(d, x) / norm_sq(x)) * x;  // tangent to the plane
                emit('R', x + (4.0 * norm(x) * uni(rng)) * t);
            }
            break;
        }
        case Family::Hyperbolic: {
            // L(x) boundary: hemisphere ||z - x_perp|| = x_h (upper half).
            for (int i = 1; i < resolution; ++i) {
                if (x.dim() == 2) {
                    double th = pi * i / resolution;
                    Point z{x[0] + x.h() * std::cos(th), x.h() * std::sin(th)};
                    emit('L', z);
                } else {
                    Point d = unit_dir(x.dim());
                    d.h() = std::abs(d.h());
                    if (d.h() < 1e-9) continue;
                    Point z = x;
                    z.h() = 0.0;
                    emit('L', z + (x.h() / norm(d)) * d);
                }
            }
            // R(x) boundary: y_h = sqrt(||x_perp - y_perp||^2 + x_h^2).
            for (int i = 0; i <= resolution; ++i) {
                Point y = x;
                double span = 4.0 * x.h();
                if (x.dim() == 2) {
                    y[0] = x[0] - span + 2.0 * span * i / resolution;
                } else {
                    Point d = unit_dir(x.dim() - 1);
                    for (std::size_t k = 0; k + 1 < x.dim(); ++k)
                        y[k] = x[k] + span * uni(rng) * d[k];
                }
                double s = x.h() * x.h();
                for (std::size_t k = 0; k + 1 < x.dim(); ++k) {
                    double dd = x[k] - y[k];
                    s += dd * dd;
                }
                y.h() = std::sqrt(s);
                emit('R', y);
            }
            break;
        }
        case Family::Epigraph: {
            // Boundaries of x - C_f and x + C_f.
            for (int i = 0; i <= resolution; ++i) {
                double d = 3.0 * i / resolution;
                Point u = x.dim() == 2 ? Point{1.0} : unit_dir(x.dim() - 1);
                Point zl = x, zr = x;
                for (std::size_t k = 0; k + 1 < x.dim(); ++k) {
                    zl[k] = x[k] - d * u[k];
                    zr[k] = x[k] + d * u[k];
                }
                zl.h() = x.h() - spec.profile(d);
                zr.h() = x.h() + spec.profile(d);
                emit('L', zl);
                emit('R', zr);
            }
            break;
        }
        case Family::Angle: {
            for (int i = 0; i <= resolution; ++i) {
                double t = spec.cone.kappa * i / resolution;
                double lo = x[0] - t, hi = x[0] + t;
                if (spec.cone.period) {
                    lo = canonical_angle(lo, *spec.cone.period);
                    hi = canonical_angle(hi, *spec.cone.period);
                }
                emit('L', Point{lo});
                if (i < resolution) emit('R', Point{hi});
            }
            break;
        }
        case Family::Product:
            throw std::invalid_argument("cone sampling is per-family; pick a component");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sponge join/meet toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 20240801ULL;
    double tol = 1e-9;
    app.add_option("--seed", seed, "seed for randomized sampling");
    app.add_option("--tol", tol, "solver tolerance");

    std::string points, specfile, witness, side = "join";
    double grid_step = 0.01;
    int samples = 256, resolution = 64, threads = 0;
    std::string field_in, field_out = "out.field", se_file, op = "dilate";
    std::string boundary = "shrink", on_unbounded = "default";

    auto* cjoin = app.add_subcommand("join", "join of a point set");
    cjoin->add_option("points", points, "CSV point set")->required();
    cjoin->add_option("--spec", specfile, "sponge spec JSON")->required();

    auto* cmeet = app.add_subcommand("meet", "meet of a point set");
    cmeet->add_option("points", points, "CSV point set")->required();
    cmeet->add_option("--spec", specfile, "sponge spec JSON")->required();

    auto* cval = app.add_subcommand("validate", "validate a sponge spec");
    cval->add_option("--spec", specfile, "sponge spec JSON")->required();
    cval->add_option("--samples", samples, "sampling effort");

    auto* cax = app.add_subcommand("axioms", "run the core axiom checkers on a set");
    cax->add_option("points", points, "CSV point set")->required();
    cax->add_option("--spec", specfile, "sponge spec JSON")->required();
    cax->add_option("--witness", witness, "CSV point for part preservation");

    auto* cor = app.add_subcommand("oracle", "compare a solver against the grid oracle");
    cor->add_option("points", points, "CSV point set")->required();
    cor->add_option("--spec", specfile, "sponge spec JSON")->required();
    cor->add_option("--side", side, "join|meet")->check(CLI::IsMember({"join", "meet"}));
    cor->add_option("--grid-step", grid_step, "oracle grid step");

    auto* cmor = app.add_subcommand("morph", "morphological filtering of a field");
    cmor->add_option("field", field_in, "input FIELD v1 file")->required();
    cmor->add_option("--se", se_file, "structuring element JSON")->required();
    cmor->add_option("--spec", specfile, "sponge spec JSON")->required();
    cmor->add_option("--op", op, "dilate|erode|open|close");
    cmor->add_option("--out", field_out, "output field file");
    cmor->add_option("--boundary", boundary, "clamp|shrink|error");
    cmor->add_option("--on-unbounded", on_unbounded, "error|passthrough|default");
    cmor->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* ccon = app.add_subcommand("cones", "sample left/right cone boundaries");
    ccon->add_option("point", points, "CSV file with the base point")->required();
    ccon->add_option("--spec", specfile, "sponge spec JSON")->required();
    ccon->add_option("--resolution", resolution, "samples per cone");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(cjoin)) return run_extremum(points, specfile, tol, true);
        if (app.got_subcommand(cmeet)) return run_extremum(points, specfile, tol, false);
        if (app.got_subcommand(cval)) return run_validate(specfile, samples, seed);
        if (app.got_subcommand(cax)) return run_axioms(specfile, points, witness, tol);
        if (app.got_subcommand(cor)) return run_oracle(specfile, points, side, grid_step, tol);
        if (app.got_subcommand(cmor))
            return run_morph(field_in, se_file, specfile, op, field_out, boundary,
                             on_unbounded, tol, threads);
        if (app.got_subcommand(ccon)) return run_cones(specfile, points, resolution, seed);
    } catch (const boundary_ambiguous& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const no_left_bound&) {
        std::cout << "UNBOUNDED\n";
        return kExitUnbounded;
    } catch (const join_unavailable&) {
        std::cout << "UNBOUNDED\n";
        return kExitUnbounded;
    } catch (const component_unbounded& e) {
        std::cout << "UNBOUNDED (" << e.what() << ")\n";
        return kExitUnbounded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
