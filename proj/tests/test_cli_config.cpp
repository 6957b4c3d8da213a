#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "expanso/config.hpp"
#include "expanso/parallel.hpp"

using namespace expanso;
namespace fs = std::filesystem;

#ifndef EXPANSO_CLI_PATH
#define EXPANSO_CLI_PATH ""
#endif

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(EXPANSO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("config round-trip: parse(serialize(cfg)) == cfg") {
    SUBCASE("catalog system") {
        ExperimentConfig cfg;
        cfg.system = "doubling";
        cfg.space = "default";
        cfg.horizon = 18;
        cfg.c = {0.1, 0.2};
        cfg.refinements = {2, 4};
        cfg.seed = 99;
        cfg.bilateral = false;
        cfg.centers = 32;
        cfg.out = "results";
        CHECK(parse_config(serialize_config(cfg)) == cfg);
    }
    SUBCASE("inline affine with per-step offsets") {
        ExperimentConfig cfg;
        InlineSystem sys;
        sys.kind = "affine";
        sys.cycle = {{1.0, 1.0}};
        sys.offset_mode = "linear-in-n";
        cfg.inline_system = sys;
        InlineSpace sp;
        sp.kind = "euclidean-window";
        sp.window = {{-20.0, 20.0}};
        sp.spacing = 0.01;
        cfg.inline_space = sp;
        cfg.c = {0.5};
        CHECK(parse_config(serialize_config(cfg)) == cfg);
    }
    SUBCASE("inline matrix and alternation") {
        ExperimentConfig cfg;
        InlineSystem cat;
        cat.kind = "mod1-matrix";
        cat.matrix = {{2.0, 1.0}, {1.0, 1.0}};
        InlineSystem idmap;
        idmap.kind = "affine";
        idmap.cycle = {{1.0, 0.0}};
        InlineSystem alt;
        alt.kind = "alternation";
        alt.maps = {cat, cat};
        cfg.inline_system = alt;
        InlineSpace sp;
        sp.kind = "torus-mod1";
        sp.window = {{0.0, 1.0}, {0.0, 1.0}};
        sp.spacing = 1.0 / 32.0;
        cfg.inline_space = sp;
        CHECK(parse_config(serialize_config(cfg)) == cfg);
        (void)idmap;
    }
}

TEST_CASE("config validation errors carry positions and field paths") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    try {
        parse_config("{\n  \"schema\": 1,\n  \"c\": [0.1,,]\n}");
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_WITH_AS(parse_config(R"({"c": [0.1]})"),
                         doctest::Contains("schema"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"schema": 2})"),
                         doctest::Contains("unsupported"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"schema": 1, "c": [-1.0]})"),
                         doctest::Contains("config.c"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"schema": 1, "horizon": 0})"),
                         doctest::Contains("horizon"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"schema": 1, "system": {"kind": "affine", "cycle": []}})"),
        doctest::Contains("cycle"), ConfigError);
}

TEST_CASE("resolve: inline translation system behaves like the catalog entry") {
    ExperimentConfig cfg;
    InlineSystem sys;
    sys.kind = "affine";
    sys.cycle = {{1.0, 1.0}};
    sys.offset_mode = "linear-in-n";
    cfg.inline_system = sys;
    InlineSpace sp;
    sp.kind = "euclidean-window";
    sp.window = {{-20.0, 20.0}};
    sp.spacing = 0.01;
    cfg.inline_space = sp;
    const RunSetup run = resolve_config(cfg);
    CHECK(run.seq->invertible());
    CHECK(compose(*run.seq, 1, 4, Point{0.0})[0] == doctest::Approx(10.0));

    const MapSequence reference = find_entry("example3.2").build();
    for (int n = 1; n <= 6; ++n) {
        CHECK(run.seq->apply(n, Point{0.25})[0] ==
              doctest::Approx(reference.apply(n, Point{0.25})[0]));
    }
}

TEST_CASE("resolve: defaults come from the catalog entry") {
    ExperimentConfig cfg;
    cfg.system = "doubling";
    const RunSetup run = resolve_config(cfg);
    CHECK(run.horizon == 20);
    CHECK(run.c_list == find_entry("doubling").default_c);
    CHECK_FALSE(run.bilateral);
    CHECK(run.space->size() == 512);

    cfg.bilateral = true; // doubling has no inverse rule
    CHECK_THROWS_AS(resolve_config(cfg), ConfigError);
}

TEST_CASE("cli: classify writes report.json and balls.csv") {
    const fs::path dir = fresh_dir("expanso_cli_classify");
    REQUIRE(run_cli("classify --system doubling --c 0.2 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "balls.csv"));
    const std::string csv = slurp(dir / "balls.csv");
    CHECK(csv.rfind("center,c,bilateral,spacing,cardinality,interior_measure\n", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos); // LF endings only
}

TEST_CASE("cli: lattice translation report carries n=1 at c=0.5") {
    const fs::path dir = fresh_dir("expanso_cli_lattice");
    REQUIRE(run_cli("classify --system example3.2 --space lattice --out " + dir.string()) == 0);
    const std::string report = slurp(dir / "report.json");
    CHECK(report.find("\"n_expansive\": 1") != std::string::npos);
    CHECK(report.find("\"c\": 0.5") != std::string::npos);
}

TEST_CASE("cli: flags override config fields") {
    const fs::path dir = fresh_dir("expanso_cli_override");
    std::ofstream(dir / "cfg.json") << R"({"schema":1,"system":"doubling","c":[0.1]})";
    REQUIRE(run_cli("classify --config " + (dir / "cfg.json").string() +
                    " --c 0.2 --out " + dir.string()) == 0);
    const std::string report = slurp(dir / "report.json");
    CHECK(report.find("\"c\": 0.2") != std::string::npos);
    CHECK(report.find("\"c\": 0.1") == std::string::npos);
}

TEST_CASE("worker cap: EXPANSO_THREADS and explicit requests") {
    setenv("EXPANSO_THREADS", "3", 1);
    CHECK(resolve_workers(0) == 3);
    unsetenv("EXPANSO_THREADS");
    CHECK(resolve_workers(2) == 2);
    CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("cli: byte-identical outputs for identical config and seed") {
    const fs::path d1 = fresh_dir("expanso_cli_rep1");
    const fs::path d2 = fresh_dir("expanso_cli_rep2");
    const std::string args = "classify --system catmap --c 0.1 --seed 31 --out ";
    REQUIRE(run_cli(args + d1.string()) == 0);
    REQUIRE(run_cli(args + d2.string()) == 0);
    CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
    CHECK(slurp(d1 / "balls.csv") == slurp(d2 / "balls.csv"));
}

TEST_CASE("cli: exit codes") {
    const fs::path dir = fresh_dir("expanso_cli_exit");
    // invalid config: unknown system
    CHECK(run_cli("classify --system nope --out " + dir.string()) == 2);
    // invalid config file
    std::ofstream(dir / "bad.json") << "{ not json";
    CHECK(run_cli("classify --config " + (dir / "bad.json").string()) == 2);
    // ball center outside the window
    CHECK(run_cli("ball --system contraction --center 5.0 --out " + dir.string()) == 2);
    // verify single passing check
    CHECK(run_cli("verify --only T3.13 --out " + dir.string()) == 0);
    // injected bug flips it to a failure
    CHECK(run_cli("verify --only T3.13 --inject-bug T3.13 --out " + dir.string()) == 1);
}

TEST_CASE("cli: ball and orbit dumps") {
    const fs::path dir = fresh_dir("expanso_cli_ball");
    REQUIRE(run_cli("ball --system doubling --c 0.2 --center 0.5 --refinements 2 4 --out " +
                    dir.string()) == 0);
    const std::string ball = slurp(dir / "ball.csv");
    CHECK(ball.rfind("spacing,member,max_orbit_distance\n", 0) == 0);
    // doubling balls are singletons at every refinement: header + 3 rows
    CHECK(std::count(ball.begin(), ball.end(), '\n') == 4);

    REQUIRE(run_cli("orbit --system example3.2 --center 0 --horizon 4 --out " + dir.string()) ==
            0);
    const std::string orbit = slurp(dir / "orbit.csv");
    CHECK(orbit.find("4,10,0") != std::string::npos); // phi_1^4(0) = 10
}
