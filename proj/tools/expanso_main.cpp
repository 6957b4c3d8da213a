// expanso: classify non-autonomous systems, run the property suite, dump
// dynamical balls and orbits. One JSON config drives everything; flags
// override config fields.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "expanso/catalog.hpp"
#include "expanso/classify.hpp"
#include "expanso/config.hpp"
#include "expanso/csv.hpp"
#include "expanso/verify.hpp"

namespace fs = std::filesystem;
using namespace expanso;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string system;
    std::string space;
    std::vector<double> c;
    int horizon = 0;
    std::vector<int> refinements;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int bilateral = -1; // -1 unset, 0 off, 1 on
    int centers = 0;
    std::string out;
};

ExperimentConfig load_config(const CliOverrides& ov) {
    ExperimentConfig cfg;
    if (!ov.config_path.empty()) {
        std::ifstream in(ov.config_path);
        if (!in) throw ConfigError("cannot open config file: " + ov.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config(ss.str());
    }
    if (!ov.system.empty()) cfg.system = ov.system;
    if (!ov.space.empty()) cfg.space = ov.space;
    if (!ov.c.empty()) cfg.c = ov.c;
    if (ov.horizon > 0) cfg.horizon = ov.horizon;
    if (!ov.refinements.empty()) cfg.refinements = ov.refinements;
    if (ov.seed_set) cfg.seed = ov.seed;
    if (ov.bilateral >= 0) cfg.bilateral = (ov.bilateral == 1);
    if (ov.centers > 0) cfg.centers = ov.centers;
    if (!ov.out.empty()) cfg.out = ov.out;
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

Point parse_center(const std::string& text) {
    Point p;
    std::stringstream ss(text);
    std::string tok;
    std::size_t d = 0;
    while (std::getline(ss, tok, ',')) {
        if (d >= kMaxDim) throw ConfigError("center: too many coordinates");
        p[d++] = std::stod(tok);
    }
    p.dim = static_cast<std::uint8_t>(d);
    if (d == 0) throw ConfigError("center: expected comma-separated coordinates");
    return p;
}

ClassifyParams params_from(const RunSetup& run) {
    ClassifyParams cp;
    cp.refinements = run.refinements;
    cp.max_centers = run.centers;
    cp.seed = run.seed;
    return cp;
}

int cmd_classify(const CliOverrides& ov) {
    const ExperimentConfig cfg = load_config(ov);
    const RunSetup run = resolve_config(cfg);
    const ClassifyParams cp = params_from(run);

    std::vector<bool> variants{false};
    if (run.bilateral) variants.push_back(true);

    std::vector<ClassificationReport> reports;
    std::string csv = "center,c,bilateral,spacing,cardinality,interior_measure\n";
    for (bool bilateral : variants) {
        const OrbitTable table = build_orbit_table(run.seq, run.space, run.horizon, bilateral);
        for (double c : run.c_list) {
            reports.push_back(classify_report(table, c, cp));

            const auto centers = sample_centers(*run.space, cp.max_centers);
            const auto measures = measure_check(table, c, cp);
            for (auto ci : centers) {
                const Point center = run.space->point(ci);
                // base level straight from the table, refinements by rescan
                const DynamicalBall ball = dynamical_ball(table, center, c, bilateral);
                csv += fmt_point_field(center) + "," + fmt_double(c) + "," +
                       (bilateral ? "1" : "0") + "," + fmt_double(run.space->spacing()) + "," +
                       std::to_string(ball.members.indices.size()) + "," +
                       fmt_double(measures.at(ci)) + "\n";
                if (!run.space->flags().countable_model) {
                    for (int f : run.refinements) {
                        const SampledSpace fine = refine(*run.space, f);
                        const auto members = ball_members_direct(*run.seq, fine, center, c,
                                                                 run.horizon, bilateral);
                        csv += fmt_point_field(center) + "," + fmt_double(c) + "," +
                               (bilateral ? "1" : "0") + "," + fmt_double(fine.spacing()) + "," +
                               std::to_string(members.size()) + ",\n";
                    }
                }
            }
        }
    }

    write_file(fs::path(cfg.out) / "report.json", report_to_json(reports));
    write_file(fs::path(cfg.out) / "balls.csv", csv);

    for (const auto& rep : reports) {
        std::cout << rep.system << " c=" << rep.c << (rep.bilateral ? " bilateral" : " forward")
                  << ": n="
                  << (rep.verdicts.n_expansive ? std::to_string(*rep.verdicts.n_expansive)
                                               : std::string("none"))
                  << " aleph0=" << (rep.verdicts.aleph0_proxy ? "true" : "false") << " cw="
                  << (rep.verdicts.cw_expansive
                          ? (*rep.verdicts.cw_expansive ? "true" : "false")
                          : "n/a")
                  << " meagre=" << (rep.verdicts.meagre_expansive ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_verify(const CliOverrides& ov, const std::string& only, const std::string& inject_bug,
               const std::vector<std::string>& entries) {
    const ExperimentConfig cfg = load_config(ov);
    SuiteParams sp;
    sp.seed = cfg.seed ? cfg.seed : SuiteParams{}.seed;
    sp.only = only;
    sp.inject_bug = inject_bug;
    sp.entries = entries;
    const auto results = run_suite(sp);
    write_file(fs::path(cfg.out) / "verify_report.json", suite_to_json(results));
    std::cout << suite_table(results);
    return suite_ok(results) ? 0 : 1;
}

int cmd_ball(const CliOverrides& ov, const std::string& center_text) {
    const ExperimentConfig cfg = load_config(ov);
    const RunSetup run = resolve_config(cfg);
    const Point center = parse_center(center_text);
    if (center.size() != run.space->dimension())
        throw ConfigError("center: expected " + std::to_string(run.space->dimension()) +
                          " coordinates");
    if (!run.space->contains(center)) throw ConfigError("center: outside the space window");

    const double c = run.c_list.front();
    std::string csv = "spacing,member,max_orbit_distance\n";
    auto emit_level = [&](const SampledSpace& sp) {
        const auto members =
            ball_members_direct(*run.seq, sp, center, c, run.horizon, run.bilateral);
        // recompute the worst orbit distance per member for the report
        const OrbitTable table = build_orbit_table(
            run.seq, std::make_shared<SampledSpace>(sp), run.horizon, run.bilateral);
        const OrbitRow crow = orbit_of(table, center);
        const int nf = std::min(run.horizon, crow.escape_forward - 1);
        const int nb = run.bilateral ? std::min(run.horizon, crow.escape_backward - 1) : 0;
        for (auto m : members) {
            double worst = 0.0;
            for (int i = 0; i <= nf; ++i)
                worst = std::max(worst, distance(sp.metric(), crow.forward[i],
                                                 table.forward(m, i)));
            for (int i = 1; i <= nb; ++i)
                worst = std::max(worst, distance(sp.metric(), crow.backward[i - 1],
                                                 table.backward(m, i)));
            csv += fmt_double(sp.spacing()) + "," + fmt_point_field(sp.point(m)) + "," +
                   fmt_double(worst) + "\n";
        }
    };
    emit_level(*run.space);
    if (!run.space->flags().countable_model) {
        for (int f : run.refinements) emit_level(refine(*run.space, f));
    }
    write_file(fs::path(cfg.out) / "ball.csv", csv);
    std::cout << "wrote " << (fs::path(cfg.out) / "ball.csv").string() << "\n";
    return 0;
}

int cmd_orbit(const CliOverrides& ov, const std::string& center_text) {
    const ExperimentConfig cfg = load_config(ov);
    const RunSetup run = resolve_config(cfg);
    const Point center = parse_center(center_text);
    if (center.size() != run.space->dimension())
        throw ConfigError("center: expected " + std::to_string(run.space->dimension()) +
                          " coordinates");
    if (!run.space->contains(center)) throw ConfigError("center: outside the space window");

    std::string csv = "index,point,escaped\n";
    const OrbitTable table = build_orbit_table(run.seq, run.space, run.horizon, run.bilateral);
    const OrbitRow row = orbit_of(table, center);
    if (run.bilateral) {
        for (int i = run.horizon; i >= 1; --i) {
            csv += std::to_string(-i) + "," + fmt_point_field(row.backward[i - 1]) + "," +
                   (row.escape_backward <= i ? "1" : "0") + "\n";
        }
    }
    for (int i = 0; i <= run.horizon; ++i) {
        csv += std::to_string(i) + "," + fmt_point_field(row.forward[i]) + "," +
               (row.escape_forward <= i ? "1" : "0") + "\n";
    }
    write_file(fs::path(cfg.out) / "orbit.csv", csv);
    std::cout << "wrote " << (fs::path(cfg.out) / "orbit.csv").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"expanso: a numerical laboratory for expansiveness of "
                 "non-autonomous discrete dynamical systems"};
    app.require_subcommand(1);

    CliOverrides ov;
    auto add_common = [&](CLI::App* cmd, bool with_system = true) {
        cmd->add_option("--config", ov.config_path, "JSON experiment config");
        if (with_system) {
            cmd->add_option("--system", ov.system, "catalog system name");
            cmd->add_option("--space", ov.space, "space recipe name (e.g. window, lattice)");
            cmd->add_option("--c", ov.c, "ball radii");
            cmd->add_option("--horizon", ov.horizon, "orbit horizon N");
            cmd->add_option("--refinements", ov.refinements, "grid refinement factors");
            cmd->add_option_function<std::uint64_t>(
                "--seed", [&](std::uint64_t s) { ov.seed = s; ov.seed_set = true; }, "RNG seed");
            cmd->add_flag_function(
                "--bilateral,!--no-bilateral",
                [&](std::int64_t v) { ov.bilateral = v > 0 ? 1 : 0; },
                "use bilateral (two-sided) orbits");
            cmd->add_option("--centers", ov.centers, "number of sampled ball centers");
        }
        cmd->add_option("--out", ov.out, "output directory");
    };

    auto* classify = app.add_subcommand("classify", "classify a system and write report.json");
    add_common(classify);

    auto* verify = app.add_subcommand("verify", "run the property suite");
    std::string only, inject_bug;
    std::vector<std::string> entries;
    add_common(verify, false);
    verify->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { ov.seed = s; ov.seed_set = true; }, "RNG seed");
    verify->add_option("--only", only, "run a single check id (e.g. T3.10)");
    verify->add_option("--entries", entries, "restrict checks to a catalog subset");
    verify->add_option("--inject-bug", inject_bug, "flip one check's verdict (harness self-test)")
        ->group(""); // hidden

    auto* ball = app.add_subcommand("ball", "dump dynamical ball members per refinement");
    std::string ball_center;
    add_common(ball);
    ball->add_option("--center", ball_center, "center coordinates, comma separated")->required();

    auto* orbit = app.add_subcommand("orbit", "dump the orbit of a point");
    std::string orbit_center;
    add_common(orbit);
    orbit->add_option("--center", orbit_center, "center coordinates, comma separated")->required();

    auto* catalog = app.add_subcommand("catalog", "catalog inspection");
    auto* list = catalog->add_subcommand("list", "list catalog system names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (classify->parsed()) return cmd_classify(ov);
        if (verify->parsed()) return cmd_verify(ov, only, inject_bug, entries);
        if (ball->parsed()) return cmd_ball(ov, ball_center);
        if (orbit->parsed()) return cmd_orbit(ov, orbit_center);
        if (catalog->parsed() && list->parsed()) {
            for (const auto& name : catalog_names()) std::cout << name << "\n";
            return 0;
        }
        std::cerr << "catalog: expected a subcommand (list)\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
