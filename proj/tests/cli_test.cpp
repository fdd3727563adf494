#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sstream>
#include <cmath>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string cli() {
    const char* p = std::getenv("SPONGE_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string data(const std::string& name) {
    const char* p = std::getenv("SPONGE_TEST_DATA");
    REQUIRE(p != nullptr);
    return std::string(p) + "/" + name;
}

RunResult run(const std::string& args) {
    std::string cmd = cli() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[512];
    while (fgets(buf, sizeof(buf), pipe)) out += buf;
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("meet of the hyperbolic pair prints 12 significant digits") {
    RunResult r = run("meet " + data("points_hyp_pair.csv") + " --spec " + data("spec_hyp2.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.5 0.866025403784\n");
}

TEST_CASE("singleton input echoes the point") {
    RunResult r = run("meet " + data("points_single2.csv") + " --spec " + data("spec_ip2.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.3 0.4\n");
    RunResult j = run("join " + data("points_single2.csv") + " --spec " + data("spec_ip2.json"));
    CHECK(j.exit_code == 0);
    CHECK(j.out == "0.3 0.4\n");
}

TEST_CASE("unbounded sets exit with code 2") {
    RunResult r =
        run("meet " + data("points_hyp_unbounded.csv") + " --spec " + data("spec_hyp2.json"));
    CHECK(r.exit_code == 2);
    CHECK(contains(r.out, "UNBOUNDED"));
}

TEST_CASE("join of the quarter-turn pair") {
    RunResult r = run("join " + data("points_ip_join.csv") + " --spec " + data("spec_ip2.json"));
    CHECK(r.exit_code == 0);
    CHECK((contains(r.out, "1 1") || contains(r.out, "0.999999999")));
}

TEST_CASE("parse errors exit with code 1") {
    RunResult r = run("meet /nonexistent.csv --spec " + data("spec_ip2.json"));
    CHECK(r.exit_code == 1);
    RunResult r2 = run("meet " + data("points_single2.csv") + " --spec /nonexistent.json");
    CHECK(r2.exit_code == 1);
}

TEST_CASE("validate: epigraph truth table and angle conditions") {
    RunResult good = run("validate --spec " + data("spec_epi_p2_d3.json"));
    CHECK(good.exit_code == 0);
    CHECK(contains(good.out, "PASS"));

    RunResult bad = run("validate --spec " + data("spec_epi_p1_d3.json"));
    CHECK(bad.exit_code == 3);
    CHECK(contains(bad.out, "square-superadditive"));

    RunResult angle_ok = run("validate --spec " + data("spec_angle_good.json"));
    CHECK(angle_ok.exit_code == 0);

    RunResult angle_bad = run("validate --spec " + data("spec_angle_bad.json"));
    CHECK(angle_bad.exit_code == 3);
    CHECK(contains(angle_bad.out, "anti-subgroup"));
}

TEST_CASE("axioms subcommand runs the core checkers") {
    RunResult r = run("axioms " + data("points_ip_example.csv") + " --spec " +
                      data("spec_ip2.json"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "orientation"));
}

TEST_CASE("oracle subcommand compares solver and scan") {
    RunResult r = run("oracle " + data("points_ip_join.csv") + " --spec " +
                      data("spec_ip2.json") + " --side join --grid-step 0.05");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "AGREE"));
}

TEST_CASE("cones subcommand emits tagged samples") {
    RunResult r = run("cones " + data("points_single2.csv") + " --spec " +
                      data("spec_ip2.json") + " --resolution 16");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "L,"));
    CHECK(contains(r.out, "R,"));

    // The origin sees everything on its right.
    std::string zero = data("points_zero2.csv");
    RunResult rz = run("cones " + zero + " --spec " + data("spec_ip2.json"));
    CHECK(rz.exit_code == 0);
    CHECK(contains(rz.out, "R,EVERYWHERE"));

    // Hyperbolic left-cone boundary samples sit on the half circle
    // ||z - x_perp|| = x_h for x = (0,1).
    RunResult rh = run("cones " + data("points_hyp_base.csv") + " --spec " +
                       data("spec_hyp2.json") + " --resolution 8");
    CHECK(rh.exit_code == 0);
    std::istringstream lines(rh.out);
    std::string line;
    int checked = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("L,", 0) != 0) continue;
        double a = 0, b = 0;
        REQUIRE(std::sscanf(line.c_str(), "L,%lf,%lf", &a, &b) == 2);
        CHECK(std::abs(std::hypot(a - 0.0, b) - 1.0) < 1e-9);
        CHECK(b > 0.0);
        ++checked;
    }
    CHECK(checked >= 5);
}

TEST_CASE("commands are deterministic given the seed") {
    std::string cmd = "--seed 7 cones " + data("points_single2.csv") + " --spec " +
                      data("spec_ip2.json") + " --resolution 32";
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("morph identity round-trips byte-identically") {
    std::string in_field = data("smoke.field");
    std::string out_field = "/tmp/sponge_cli_identity.field";
    RunResult r = run("morph " + in_field + " --se " + data("se_identity.json") +
                      " --spec " + data("spec_ip2.json") + " --op dilate --out " + out_field);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "unbounded=0"));

    FILE* a = fopen(in_field.c_str(), "rb");
    FILE* b = fopen(out_field.c_str(), "rb");
    REQUIRE(a != nullptr);
    REQUIRE(b != nullptr);
    std::string sa, sb;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), a)) > 0) sa.append(buf, n);
    while ((n = fread(buf, 1, sizeof(buf), b)) > 0) sb.append(buf, n);
    fclose(a);
    fclose(b);
    CHECK(sa == sb);
}
