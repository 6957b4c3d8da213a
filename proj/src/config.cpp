#include "expanso/config.hpp"

#include <cmath>

#include <json.hpp>

namespace expanso {

using nlohmann::ordered_json;

namespace {

// Translate a byte offset from the JSON parser into line:column.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

ordered_json inline_system_to_json(const InlineSystem& s) {
    ordered_json j;
    j["kind"] = s.kind;
    if (s.kind == "affine") {
        ordered_json cyc = ordered_json::array();
        for (const auto& a : s.cycle) cyc.push_back({{"scale", a.scale}, {"offset", a.offset}});
        j["cycle"] = cyc;
        j["offset_mode"] = s.offset_mode;
    } else if (s.kind == "mod1-matrix") {
        j["matrix"] = s.matrix;
    } else if (s.kind == "alternation") {
        ordered_json maps = ordered_json::array();
        for (const auto& m : s.maps) maps.push_back(inline_system_to_json(m));
        j["maps"] = maps;
    }
    return j;
}

InlineSystem inline_system_from_json(const ordered_json& j) {
    InlineSystem s;
    if (!j.contains("kind")) throw ConfigError("system: inline spec needs \"kind\"");
    s.kind = j.at("kind").get<std::string>();
    if (s.kind == "affine") {
        if (!j.contains("cycle") || !j.at("cycle").is_array() || j.at("cycle").empty())
            throw ConfigError("system: affine spec needs a non-empty \"cycle\" array");
        for (const auto& a : j.at("cycle")) {
            InlineAffine af;
            af.scale = a.value("scale", 1.0);
            af.offset = a.value("offset", 0.0);
            s.cycle.push_back(af);
        }
        s.offset_mode = j.value("offset_mode", std::string("constant"));
        if (s.offset_mode != "constant" && s.offset_mode != "linear-in-n")
            throw ConfigError("system.offset_mode: must be \"constant\" or \"linear-in-n\"");
    } else if (s.kind == "mod1-matrix") {
        if (!j.contains("matrix")) throw ConfigError("system: mod1-matrix spec needs \"matrix\"");
        s.matrix = j.at("matrix").get<std::vector<std::vector<double>>>();
        const std::size_t d = s.matrix.size();
        if (d == 0 || d > kMaxDim) throw ConfigError("system.matrix: bad dimension");
        for (const auto& row : s.matrix)
            if (row.size() != d) throw ConfigError("system.matrix: must be square");
    } else if (s.kind == "alternation") {
        if (!j.contains("maps") || !j.at("maps").is_array() || j.at("maps").empty())
            throw ConfigError("system: alternation spec needs a non-empty \"maps\" array");
        for (const auto& m : j.at("maps")) s.maps.push_back(inline_system_from_json(m));
    } else {
        throw ConfigError("system.kind: unknown inline system kind \"" + s.kind + "\"");
    }
    return s;
}

int system_dimension(const InlineSystem& s) {
    if (s.kind == "affine") return 1;
    if (s.kind == "mod1-matrix") return static_cast<int>(s.matrix.size());
    return system_dimension(s.maps.front());
}

// One step of an inline spec, interpreted at sequence index n.
Point apply_inline(const InlineSystem& s, int n, const Point& x, bool inverse) {
    if (s.kind == "affine") {
        const auto& a = s.cycle[static_cast<std::size_t>((n - 1) % static_cast<int>(s.cycle.size()))];
        const double b = s.offset_mode == "linear-in-n" ? a.offset * n : a.offset;
        if (!inverse) return Point{a.scale * x[0] + b};
        return Point{(x[0] - b) / a.scale};
    }
    if (s.kind == "mod1-matrix") {
        const std::size_t d = s.matrix.size();
        Point out = Point::zeros(d);
        if (!inverse) {
            for (std::size_t i = 0; i < d; ++i) {
                double v = 0.0;
                for (std::size_t k = 0; k < d; ++k) v += s.matrix[i][k] * x[k];
                out[i] = wrap01(v);
            }
            return out;
        }
        // 2x2 unimodular inverse; larger matrices are forward-only.
        const double det = s.matrix[0][0] * s.matrix[1][1] - s.matrix[0][1] * s.matrix[1][0];
        out[0] = wrap01((s.matrix[1][1] * x[0] - s.matrix[0][1] * x[1]) / det);
        out[1] = wrap01((-s.matrix[1][0] * x[0] + s.matrix[0][0] * x[1]) / det);
        return out;
    }
    const auto& sub = s.maps[static_cast<std::size_t>((n - 1) % static_cast<int>(s.maps.size()))];
    return apply_inline(sub, 1, x, inverse);
}

bool inline_invertible(const InlineSystem& s) {
    if (s.kind == "affine") {
        for (const auto& a : s.cycle)
            if (a.scale == 0.0) return false;
        return true;
    }
    if (s.kind == "mod1-matrix") {
        if (s.matrix.size() != 2) return false;
        const double det = s.matrix[0][0] * s.matrix[1][1] - s.matrix[0][1] * s.matrix[1][0];
        return std::fabs(std::fabs(det) - 1.0) < 1e-12;
    }
    for (const auto& m : s.maps)
        if (!inline_invertible(m)) return false;
    return true;
}

MapSequence build_inline_system(const InlineSystem& spec) {
    const int dim = system_dimension(spec);
    const InlineSystem s = spec;
    RuleFn fwd = [s](int n, const Point& x) { return apply_inline(s, n, x, false); };
    RuleFn inv;
    if (inline_invertible(spec))
        inv = [s](int n, const Point& x) { return apply_inline(s, n, x, true); };
    return MapSequence("inline-" + spec.kind, dim, std::move(fwd), std::move(inv), false);
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_col(json_text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }

    ExperimentConfig cfg;
    if (!j.contains("schema") || !j.at("schema").is_number_integer())
        throw ConfigError("config: missing integer field \"schema\"");
    cfg.schema = j.at("schema").get<int>();
    if (cfg.schema != 1)
        throw ConfigError("config.schema: unsupported version " + std::to_string(cfg.schema));

    if (j.contains("system")) {
        if (j.at("system").is_string()) {
            cfg.system = j.at("system").get<std::string>();
        } else if (j.at("system").is_object()) {
            cfg.inline_system = inline_system_from_json(j.at("system"));
        } else {
            throw ConfigError("config.system: must be a catalog name or an inline object");
        }
    }
    if (j.contains("space")) {
        if (j.at("space").is_string()) {
            cfg.space = j.at("space").get<std::string>();
        } else if (j.at("space").is_object()) {
            const auto& js = j.at("space");
            InlineSpace sp;
            sp.kind = js.value("kind", std::string("euclidean-window"));
            if (js.contains("window")) {
                for (const auto& w : js.at("window")) {
                    if (!w.is_array() || w.size() != 2)
                        throw ConfigError("config.space.window: entries must be [lo, hi]");
                    sp.window.emplace_back(w[0].get<double>(), w[1].get<double>());
                }
            }
            sp.spacing = js.value("spacing", 0.0);
            if (sp.spacing <= 0.0) throw ConfigError("config.space.spacing: must be > 0");
            cfg.inline_space = sp;
        } else {
            throw ConfigError("config.space: must be a recipe name or an inline object");
        }
    }
    if (j.contains("horizon")) {
        cfg.horizon = j.at("horizon").get<int>();
        if (*cfg.horizon < 1) throw ConfigError("config.horizon: must be >= 1");
    }
    if (j.contains("c")) {
        cfg.c = j.at("c").get<std::vector<double>>();
        for (double v : cfg.c)
            if (v <= 0.0) throw ConfigError("config.c: values must be > 0");
    }
    if (j.contains("refinements")) {
        cfg.refinements = j.at("refinements").get<std::vector<int>>();
        for (int f : cfg.refinements)
            if (f < 2) throw ConfigError("config.refinements: factors must be >= 2");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("bilateral")) cfg.bilateral = j.at("bilateral").get<bool>();
    if (j.contains("centers")) {
        cfg.centers = j.at("centers").get<int>();
        if (cfg.centers < 1) throw ConfigError("config.centers: must be >= 1");
    }
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    ordered_json j;
    j["schema"] = cfg.schema;
    if (cfg.inline_system) {
        j["system"] = inline_system_to_json(*cfg.inline_system);
    } else if (!cfg.system.empty()) {
        j["system"] = cfg.system;
    }
    if (cfg.inline_space) {
        ordered_json js;
        js["kind"] = cfg.inline_space->kind;
        ordered_json w = ordered_json::array();
        for (const auto& [lo, hi] : cfg.inline_space->window) w.push_back({lo, hi});
        js["window"] = w;
        js["spacing"] = cfg.inline_space->spacing;
        j["space"] = js;
    } else if (!cfg.space.empty()) {
        j["space"] = cfg.space;
    }
    if (cfg.horizon) j["horizon"] = *cfg.horizon;
    if (!cfg.c.empty()) j["c"] = cfg.c;
    j["refinements"] = cfg.refinements;
    j["seed"] = cfg.seed;
    if (cfg.bilateral) j["bilateral"] = *cfg.bilateral;
    j["centers"] = cfg.centers;
    j["out"] = cfg.out;
    return j.dump(2) + "\n";
}

RunSetup resolve_config(const ExperimentConfig& cfg) {
    RunSetup run;
    run.refinements = cfg.refinements;
    run.seed = cfg.seed;
    run.centers = static_cast<std::size_t>(cfg.centers);

    if (cfg.inline_system) {
        if (!cfg.inline_space)
            throw ConfigError("config: inline systems need an explicit inline space");
        run.seq = std::make_shared<MapSequence>(build_inline_system(*cfg.inline_system));
        run.system_name = run.seq->name();
        run.horizon = cfg.horizon.value_or(10);
        run.c_list = cfg.c.empty() ? std::vector<double>{0.1} : cfg.c;
    } else {
        if (cfg.system.empty()) throw ConfigError("config: missing \"system\"");
        const CatalogEntry& entry = find_entry(cfg.system);
        run.seq = std::make_shared<MapSequence>(entry.build());
        run.system_name = entry.name;
        run.horizon = cfg.horizon.value_or(entry.default_horizon);
        run.c_list = cfg.c.empty() ? entry.default_c : cfg.c;
        if (!cfg.inline_space) {
            const SpaceRecipe& rec = entry.recipe(cfg.space);
            run.space = std::make_shared<SampledSpace>(build_space(rec));
            run.space_name = rec.name;
        }
        if (cfg.bilateral.value_or(false) && !run.seq->invertible())
            throw ConfigError("config.bilateral: system has no inverse rule");
        run.bilateral = cfg.bilateral.value_or(entry.bilateral_default && run.seq->invertible());
    }

    if (cfg.inline_space) {
        SpaceRecipe rec;
        rec.name = "inline";
        rec.kind = metric_kind_from_string(cfg.inline_space->kind);
        rec.window = cfg.inline_space->window;
        rec.spacing = cfg.inline_space->spacing;
        run.space = std::make_shared<SampledSpace>(build_space(rec));
        run.space_name = "inline";
    }
    if (cfg.inline_system) {
        run.bilateral = cfg.bilateral.value_or(run.seq->invertible());
        if (run.bilateral && !run.seq->invertible())
            throw ConfigError("config.bilateral: system has no inverse rule");
    }
    if (run.seq->dimension() != static_cast<int>(run.space->dimension()))
        throw ConfigError("config: system dimension " + std::to_string(run.seq->dimension()) +
                          " does not match space dimension " +
                          std::to_string(run.space->dimension()));
    return run;
}

std::string report_to_json(const std::vector<ClassificationReport>& reports) {
    ordered_json j;
    j["schema"] = 1;
    ordered_json arr = ordered_json::array();
    for (const auto& rep : reports) {
        ordered_json r;
        r["system"] = rep.system;
        r["space"] = rep.space;
        r["c"] = rep.c;
        r["horizon"] = rep.horizon;
        r["bilateral"] = rep.bilateral;
        ordered_json v;
        if (rep.verdicts.n_expansive) v["n_expansive"] = *rep.verdicts.n_expansive;
        else v["n_expansive"] = nullptr;
        v["aleph0_proxy"] = rep.verdicts.aleph0_proxy;
        if (rep.verdicts.cw_expansive) v["cw_expansive"] = *rep.verdicts.cw_expansive;
        else v["cw_expansive"] = nullptr;
        v["meagre_expansive"] = rep.verdicts.meagre_expansive;
        r["verdicts"] = v;
        ordered_json ev;
        ev["spacings"] = rep.scaling.spacings;
        ev["cardinalities"] = rep.scaling.cardinalities;
        ev["growth_exponent"] = rep.scaling.growth_exponent;
        r["scaling"] = ev;
        r["max_interior_measure"] = rep.max_interior_measure;
        if (!rep.meagre_witness.empty()) r["meagre_witness"] = rep.meagre_witness;
        if (!rep.cw_witness.empty()) r["cw_witness"] = rep.cw_witness;
        r["centers_sampled"] = rep.centers_sampled;
        r["truncated_centers"] = rep.truncated_centers;
        r["notes"] = rep.notes;
        arr.push_back(r);
    }
    j["reports"] = arr;
    return j.dump(2) + "\n";
}

} // namespace expanso
