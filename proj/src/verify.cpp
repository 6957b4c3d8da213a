#include "expanso/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "expanso/catalog.hpp"
#include "expanso/classify.hpp"
#include "expanso/parallel.hpp"

namespace expanso {

namespace {

struct Instance {
    std::string label;
    SeqPtr seq;
    SpacePtr space;
    int horizon = 10;
    bool bilateral = false;
    std::vector<double> c_list;
    bool equicontinuous = false;
};

Instance instance_of(const CatalogEntry& e, const std::string& recipe_name = "") {
    Instance ins;
    const SpaceRecipe& rec = e.recipe(recipe_name);
    ins.label = e.name + (recipe_name.empty() ? "" : ":" + recipe_name);
    auto seq = std::make_shared<MapSequence>(e.build());
    ins.seq = seq;
    ins.space = std::make_shared<SampledSpace>(build_space(rec));
    ins.horizon = e.default_horizon;
    ins.bilateral = e.bilateral_default && seq->invertible();
    ins.c_list = e.default_c;
    ins.equicontinuous = seq->equicontinuous();
    return ins;
}

bool enabled(const SuiteParams& sp, const std::string& entry_name) {
    if (sp.entries.empty()) return true;
    return std::find(sp.entries.begin(), sp.entries.end(), entry_name) != sp.entries.end();
}

struct Flags {
    std::vector<double> c_list;
    std::vector<bool> n_c, aleph0_c, meagre_c;

    bool n_exists() const { return std::any_of(n_c.begin(), n_c.end(), [](bool b) { return b; }); }
    bool aleph0_exists() const {
        return std::any_of(aleph0_c.begin(), aleph0_c.end(), [](bool b) { return b; });
    }
    bool meagre_exists() const {
        return std::any_of(meagre_c.begin(), meagre_c.end(), [](bool b) { return b; });
    }
};

ClassifyParams suite_classify_params(const SuiteParams& sp, const PointSet* mask = nullptr) {
    ClassifyParams cp;
    cp.max_centers = 48;
    cp.seed = sp.seed;
    cp.workers = 1; // checks already run in parallel
    cp.mask = mask;
    return cp;
}

Flags eval_flags(const Instance& ins, const SuiteParams& sp, const PointSet* mask = nullptr) {
    const ClassifyParams cp = suite_classify_params(sp, mask);
    const OrbitTable table = build_orbit_table(ins.seq, ins.space, ins.horizon,
                                               ins.bilateral, cp.workers);
    Flags f;
    f.c_list = ins.c_list;
    for (double c : ins.c_list) {
        ScalingEvidence ev;
        const auto n = classify_n_expansive(table, c, cp, &ev);
        f.n_c.push_back(n.has_value());
        f.aleph0_c.push_back(ins.space->flags().countable_model ||
                             ev.growth_exponent < cp.growth_threshold);
        f.meagre_c.push_back(classify_meagre(table, c, cp));
    }
    return f;
}

bool cw_flag(const Instance& ins, double c, const SuiteParams& sp) {
    const ClassifyParams cp = suite_classify_params(sp);
    const OrbitTable table =
        build_orbit_table(ins.seq, ins.space, ins.horizon, ins.bilateral, cp.workers);
    return classify_cw(table, c, cp);
}

struct CheckDef {
    std::string id;
    std::string title;
    std::function<CheckResult(const SuiteParams&)> run;
};

CheckResult finish(const std::string& id, const std::string& title, int exercised,
                   const std::vector<std::string>& violations) {
    CheckResult r;
    r.id = id;
    r.title = title;
    r.instances = exercised;
    if (exercised == 0) {
        r.status = "hypothesis-not-met";
    } else if (violations.empty()) {
        r.status = "pass";
    } else {
        r.status = "fail";
        std::string w;
        for (const auto& v : violations) {
            if (!w.empty()) w += " | ";
            w += v;
        }
        r.witness = w;
    }
    return r;
}

// ---- conjugacy cases shared by T3.3 / T3.4 / T4.1 --------------------------

struct ConjCase {
    Instance ins;
    MapFn h, h_inv;
    std::string desc;
};

std::vector<ConjCase> conjugacy_cases(const SuiteParams& sp) {
    std::vector<ConjCase> cases;
    if (enabled(sp, "doubling")) {
        ConjCase c;
        c.ins = instance_of(find_entry("doubling"));
        c.h = [](const Point& p) { return Point{wrap01(p[0] + 0.25)}; };
        c.h_inv = [](const Point& p) { return Point{wrap01(p[0] - 0.25)}; };
        c.desc = "doubling ~ quarter-turn rotation";
        cases.push_back(std::move(c));
    }
    if (enabled(sp, "example3.2")) {
        ConjCase c;
        c.ins = instance_of(find_entry("example3.2"), "lattice");
        c.h = [](const Point& p) { return Point{-p[0]}; };
        c.h_inv = [](const Point& p) { return Point{-p[0]}; };
        c.desc = "translation lattice ~ negation";
        cases.push_back(std::move(c));
    }
    if (enabled(sp, "catmap")) {
        ConjCase c;
        c.ins = instance_of(find_entry("catmap"));
        c.h = [](const Point& p) { return Point{wrap01(p[0] + 0.25), wrap01(p[1] + 0.25)}; };
        c.h_inv = [](const Point& p) { return Point{wrap01(p[0] - 0.25), wrap01(p[1] - 0.25)}; };
        c.desc = "catmap ~ torus translation";
        cases.push_back(std::move(c));
    }
    return cases;
}

CheckResult conjugacy_check(const std::string& id, const std::string& title,
                            const std::function<bool(const Flags&)>& flag,
                            const SuiteParams& sp) {
    std::vector<std::string> bad;
    int exercised = 0;
    for (auto& cc : conjugacy_cases(sp)) {
        Instance conj = cc.ins;
        conj.label += "~conjugate";
        conj.seq = std::make_shared<MapSequence>(
            conjugate(*cc.ins.seq, cc.h, cc.h_inv, *cc.ins.space));
        const Flags a = eval_flags(cc.ins, sp);
        const Flags b = eval_flags(conj, sp);
        ++exercised;
        if (flag(a) != flag(b)) {
            bad.push_back(cc.desc + ": " + (flag(a) ? "true" : "false") + " vs conjugate " +
                          (flag(b) ? "true" : "false"));
        }
    }
    return finish(id, title, exercised, bad);
}

// ---- iterate cases shared by T3.5 / T4.3 -----------------------------------

std::vector<Instance> iterate_base_instances(const SuiteParams& sp) {
    std::vector<Instance> out;
    if (enabled(sp, "doubling")) out.push_back(instance_of(find_entry("doubling")));
    if (enabled(sp, "rotation")) out.push_back(instance_of(find_entry("rotation")));
    if (enabled(sp, "example3.2"))
        out.push_back(instance_of(find_entry("example3.2"), "lattice"));
    if (enabled(sp, "catmap")) out.push_back(instance_of(find_entry("catmap")));
    return out;
}

CheckResult iterate_check(const std::string& id, const std::string& title,
                          const std::function<bool(const Flags&)>& flag,
                          const SuiteParams& sp) {
    std::vector<std::string> bad;
    int exercised = 0;
    for (const Instance& base : iterate_base_instances(sp)) {
        const Flags fb = eval_flags(base, sp);
        for (int k : {2, 3}) {
            Instance it = base;
            it.label += "^" + std::to_string(k);
            it.seq = std::make_shared<MapSequence>(kth_iterate(*base.seq, k));
            it.horizon = std::max(1, base.horizon / k);
            const Flags fi = eval_flags(it, sp);
            ++exercised;
            if (flag(fb) != flag(fi)) {
                bad.push_back(base.label + " k=" + std::to_string(k) + ": " +
                              (flag(fb) ? "true" : "false") + " vs iterate " +
                              (flag(fi) ? "true" : "false"));
            }
        }
    }
    return finish(id, title, exercised, bad);
}

std::vector<std::string> locally_connected_entries() {
    return {"example3.1", "example3.2", "example4.1", "doubling",
            "catmap",     "rotation",   "contraction", "interval-square"};
}

} // namespace

static std::vector<CheckDef> registry() {
    std::vector<CheckDef> reg;

    reg.push_back({"T3.1",
                   "generator cover consistency: ball-bounded systems give "
                   "intersection cardinality within the bound",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       if (enabled(sp, "catmap")) {
                           Instance ins = instance_of(find_entry("catmap"));
                           ins.bilateral = true;
                           const auto table = build_orbit_table(ins.seq, ins.space, ins.horizon,
                                                                true, 1);
                           const auto cover = generator_check(table, 0.05, 100, 8, sp.seed);
                           ++exercised;
                           if (cover.max_intersection_cardinality > 1)
                               bad.push_back("catmap: max cardinality " +
                                             std::to_string(cover.max_intersection_cardinality));
                       }
                       if (enabled(sp, "example3.2")) {
                           Instance ins = instance_of(find_entry("example3.2"), "lattice");
                           const auto table = build_orbit_table(ins.seq, ins.space, ins.horizon,
                                                                true, 1);
                           const auto cover = generator_check(table, 0.5, 50, 5, sp.seed);
                           ++exercised;
                           if (cover.max_intersection_cardinality > 1)
                               bad.push_back("example3.2:lattice: max cardinality " +
                                             std::to_string(cover.max_intersection_cardinality));
                       }
                       return finish("T3.1", "generator cover consistency", exercised, bad);
                   }});

    reg.push_back({"T3.3", "uniform conjugacy preserves the n-expansive verdict",
                   [](const SuiteParams& sp) {
                       return conjugacy_check("T3.3",
                                              "uniform conjugacy preserves the n-expansive verdict",
                                              [](const Flags& f) { return f.n_exists(); }, sp);
                   }});

    reg.push_back({"T3.4", "uniform conjugacy preserves the countable-ball verdict",
                   [](const SuiteParams& sp) {
                       return conjugacy_check(
                           "T3.4", "uniform conjugacy preserves the countable-ball verdict",
                           [](const Flags& f) { return f.aleph0_exists(); }, sp);
                   }});

    reg.push_back({"T3.5", "k-th iterate equivalence for n/countable verdicts (k=2,3)",
                   [](const SuiteParams& sp) {
                       return iterate_check(
                           "T3.5", "k-th iterate equivalence for n/countable verdicts (k=2,3)",
                           [](const Flags& f) { return f.n_exists() && f.aleph0_exists(); }, sp);
                   }});

    reg.push_back({"T3.6", "inverse system equivalence (bilateral balls)",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       for (const char* name :
                            {"catmap", "rotation", "example4.1", "interval-square"}) {
                           if (!enabled(sp, name)) continue;
                           Instance ins = instance_of(find_entry(name));
                           if (!ins.seq->invertible() || !ins.space->flags().compact) continue;
                           ins.bilateral = true;
                           Instance inv = ins;
                           inv.label += "-inverse";
                           inv.seq = std::make_shared<MapSequence>(inverse_system(*ins.seq));
                           const Flags a = eval_flags(ins, sp);
                           const Flags b = eval_flags(inv, sp);
                           ++exercised;
                           if (a.n_exists() != b.n_exists() ||
                               a.aleph0_exists() != b.aleph0_exists()) {
                               bad.push_back(std::string(name) + ": flags differ from inverse");
                           }
                       }
                       if (enabled(sp, "example3.2")) {
                           Instance ins = instance_of(find_entry("example3.2"), "lattice");
                           ins.bilateral = true;
                           Instance inv = ins;
                           inv.seq = std::make_shared<MapSequence>(inverse_system(*ins.seq));
                           const Flags a = eval_flags(ins, sp);
                           const Flags b = eval_flags(inv, sp);
                           ++exercised;
                           if (a.n_exists() != b.n_exists())
                               bad.push_back("example3.2:lattice: flags differ from inverse");
                       }
                       return finish("T3.6", "inverse system equivalence (bilateral balls)",
                                     exercised, bad);
                   }});

    reg.push_back({"T3.7", "restriction to an invariant subset is at least as strong",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       if (enabled(sp, "example3.2")) {
                           // translations restricted from the R window to its
                           // integer sublattice (the lattice recipe is that
                           // restricted model).
                           Instance full = instance_of(find_entry("example3.2"), "window");
                           std::vector<std::uint32_t> sub;
                           for (std::size_t i = 0; i < full.space->size(); ++i) {
                               const double x = full.space->point(i)[0];
                               if (std::fabs(x - std::round(x)) < 1e-9)
                                   sub.push_back(static_cast<std::uint32_t>(i));
                           }
                           const PointSet subset = make_point_set(full.space, sub);
                           restrict_system(*full.seq, subset, full.horizon); // must validate
                           const Flags ff = eval_flags(full, sp);
                           const Flags fr =
                               eval_flags(instance_of(find_entry("example3.2"), "lattice"), sp);
                           ++exercised;
                           if (ff.n_exists() && !fr.n_exists())
                               bad.push_back("example3.2: restriction weaker than full system");
                       }
                       if (enabled(sp, "doubling")) {
                           // doubling restricted to the coarse dyadic subgrid.
                           Instance full = instance_of(find_entry("doubling"));
                           std::vector<std::uint32_t> sub;
                           for (std::size_t i = 0; i < full.space->size(); i += 8)
                               sub.push_back(static_cast<std::uint32_t>(i));
                           const PointSet subset = make_point_set(full.space, sub);
                           restrict_system(*full.seq, subset, full.horizon);
                           Instance coarse = full;
                           coarse.label += "|coarse";
                           coarse.space = std::make_shared<SampledSpace>(
                               build_grid({{0.0, 1.0}}, 1.0 / 64.0, MetricKind::circle_mod1));
                           const Flags ff = eval_flags(full, sp);
                           const Flags fr = eval_flags(coarse, sp);
                           ++exercised;
                           if (ff.n_exists() && !fr.n_exists())
                               bad.push_back("doubling: restriction weaker than full system");
                       }
                       return finish("T3.7",
                                     "restriction to an invariant subset is at least as strong",
                                     exercised, bad);
                   }});

    reg.push_back({"T3.8", "finite products of n-expansive systems stay n-expansive",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       auto run_case = [&](const Instance& factor, const std::string& desc) {
                           Instance prod;
                           prod.label = desc;
                           prod.seq = std::make_shared<MapSequence>(
                               product_system(*factor.seq, *factor.seq));
                           prod.space = std::make_shared<SampledSpace>(
                               product_space(*factor.space, *factor.space));
                           prod.horizon = factor.horizon;
                           prod.bilateral = factor.bilateral;
                           prod.c_list = factor.c_list;
                           const Flags f1 = eval_flags(factor, sp);
                           const Flags fp = eval_flags(prod, sp);
                           ++exercised;
                           if (f1.n_exists() && !fp.n_exists())
                               bad.push_back(desc + ": product lost n-expansiveness");
                       };
                       if (enabled(sp, "example3.2"))
                           run_case(instance_of(find_entry("example3.2"), "lattice"),
                                    "lattice x lattice");
                       if (enabled(sp, "doubling")) {
                           Instance d = instance_of(find_entry("doubling"));
                           d.space = std::make_shared<SampledSpace>(
                               build_grid({{0.0, 1.0}}, 1.0 / 128.0, MetricKind::circle_mod1));
                           run_case(d, "doubling x doubling");
                       }
                       return finish("T3.8",
                                     "finite products of n-expansive systems stay n-expansive",
                                     exercised, bad);
                   }});

    reg.push_back({"T3.9", "fixed-point set of n-expansive compact systems is finite "
                           "(stable cardinality under refinement)",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       for (const char* name : {"doubling", "catmap"}) {
                           if (!enabled(sp, name)) continue;
                           Instance ins = instance_of(find_entry(name));
                           const auto t0 = build_orbit_table(ins.seq, ins.space, ins.horizon,
                                                             false, 1);
                           auto refined = std::make_shared<SampledSpace>(refine(*ins.space, 2));
                           const auto t1 = build_orbit_table(ins.seq, refined, ins.horizon,
                                                             false, 1);
                           const auto f0 = fixed_points(t0).indices.size();
                           const auto f1 = fixed_points(t1).indices.size();
                           ++exercised;
                           if (f0 != f1)
                               bad.push_back(std::string(name) + ": |Fix| " + std::to_string(f0) +
                                             " -> " + std::to_string(f1) + " under refinement");
                       }
                       return finish("T3.9", "fixed-point set stays finite under refinement",
                                     exercised, bad);
                   }});

    reg.push_back({"T3.10", "countable-ball verdict implies continuum-wise verdict",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       for (const auto& name : locally_connected_entries()) {
                           if (!enabled(sp, name)) continue;
                           Instance ins = instance_of(find_entry(name));
                           if (!ins.space->flags().locally_connected ||
                               ins.space->flags().has_isolated_points)
                               continue;
                           const Flags f = eval_flags(ins, sp);
                           for (std::size_t i = 0; i < f.c_list.size(); ++i) {
                               if (!f.aleph0_c[i]) continue;
                               ++exercised;
                               if (!cw_flag(ins, f.c_list[i], sp)) {
                                   bad.push_back(ins.label + " c=" + std::to_string(f.c_list[i]) +
                                                 ": countable but not continuum-wise");
                               }
                           }
                       }
                       return finish("T3.10", "countable-ball verdict implies continuum-wise",
                                     exercised, bad);
                   }});

    reg.push_back({"T3.11", "equicontinuous sequences on uncountable models are never "
                            "countable-ball expansive",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       for (const char* name : {"rotation", "example3.2", "contraction"}) {
                           if (!enabled(sp, name)) continue;
                           Instance ins = std::string(name) == "example3.2"
                                              ? instance_of(find_entry(name), "window")
                                              : instance_of(find_entry(name));
                           if (!ins.equicontinuous || !ins.space->flags().uncountable_model)
                               continue;
                           const Flags f = eval_flags(ins, sp);
                           ++exercised;
                           if (f.aleph0_exists())
                               bad.push_back(ins.label + ": reported countable-ball expansive");
                       }
                       return finish("T3.11", "equicontinuous on uncountable model: never "
                                              "countable-ball expansive",
                                     exercised, bad);
                   }});

    reg.push_back({"T3.12", "verdict invariance under deleting up to five points",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       for (const char* name : {"example3.2", "example3.1"}) {
                           if (!enabled(sp, name)) continue;
                           Instance ins = instance_of(find_entry(name), "lattice");
                           const Flags base = eval_flags(ins, sp);
                           CounterRng rng = CounterRng(sp.seed).split("t312-deletions");
                           std::vector<char> deleted(ins.space->size(), 0);
                           for (int k = 0; k < 5; ++k)
                               deleted[rng.next_index(ins.space->size())] = 1;
                           std::vector<std::uint32_t> kept;
                           for (std::size_t i = 0; i < ins.space->size(); ++i)
                               if (!deleted[i]) kept.push_back(static_cast<std::uint32_t>(i));
                           const PointSet mask = make_point_set(ins.space, kept);
                           const Flags f = eval_flags(ins, sp, &mask);
                           ++exercised;
                           if (base.n_exists() != f.n_exists())
                               bad.push_back(ins.label + ": verdict changed after deletions");
                       }
                       return finish("T3.12", "verdict invariance under deleting <= 5 points",
                                     exercised, bad);
                   }});

    reg.push_back({"T3.13", "monotone interval homeomorphism sequences are never "
                            "countable-ball expansive",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       if (enabled(sp, "interval-square")) {
                           Instance ins = instance_of(find_entry("interval-square"));
                           const Flags f = eval_flags(ins, sp);
                           ++exercised;
                           if (f.aleph0_exists())
                               bad.push_back("interval-square: reported countable-ball expansive");
                       }
                       if (enabled(sp, "interval-square")) {
                           // Alternating increasing/decreasing interval
                           // homeomorphisms: x^2 at odd steps, 1-x at even.
                           Instance ins = instance_of(find_entry("interval-square"));
                           ins.label = "interval-square-flip";
                           ins.seq = std::make_shared<MapSequence>(MapSequence(
                               "interval-square-flip", 1,
                               [](int n, const Point& x) {
                                   return n % 2 == 1 ? Point{x[0] * x[0]} : Point{1.0 - x[0]};
                               },
                               [](int n, const Point& x) {
                                   return n % 2 == 1 ? Point{std::sqrt(std::max(0.0, x[0]))}
                                                     : Point{1.0 - x[0]};
                               },
                               false));
                           const Flags f = eval_flags(ins, sp);
                           ++exercised;
                           if (f.aleph0_exists())
                               bad.push_back("interval-square-flip: reported countable-ball "
                                             "expansive");
                       }
                       return finish("T3.13", "monotone interval sequences: never countable-ball "
                                              "expansive",
                                     exercised, bad);
                   }});

    reg.push_back({"T4.1", "uniform conjugacy preserves the meagre verdict",
                   [](const SuiteParams& sp) {
                       return conjugacy_check("T4.1",
                                              "uniform conjugacy preserves the meagre verdict",
                                              [](const Flags& f) { return f.meagre_exists(); },
                                              sp);
                   }});

    reg.push_back({"T4.3", "k-th iterate equivalence for the meagre verdict (k=2,3)",
                   [](const SuiteParams& sp) {
                       return iterate_check(
                           "T4.3", "k-th iterate equivalence for the meagre verdict (k=2,3)",
                           [](const Flags& f) { return f.meagre_exists(); }, sp);
                   }});

    reg.push_back({"T4.4", "continuum-wise verdict implies meagre verdict",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       for (const auto& name : locally_connected_entries()) {
                           if (!enabled(sp, name)) continue;
                           Instance ins = instance_of(find_entry(name));
                           if (!ins.space->flags().locally_connected ||
                               ins.space->flags().has_isolated_points)
                               continue;
                           const Flags f = eval_flags(ins, sp);
                           for (std::size_t i = 0; i < f.c_list.size(); ++i) {
                               if (!cw_flag(ins, f.c_list[i], sp)) continue;
                               ++exercised;
                               if (!f.meagre_c[i]) {
                                   bad.push_back(ins.label + " c=" + std::to_string(f.c_list[i]) +
                                                 ": continuum-wise but not meagre");
                               }
                           }
                       }
                       return finish("T4.4", "continuum-wise implies meagre", exercised, bad);
                   }});

    reg.push_back({"T4.5", "equicontinuous homeomorphism sequences are never meagre-expansive",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       const std::vector<std::pair<std::string, std::string>> cases = {
                           {"rotation", ""},
                           {"example3.2", "window"},
                           {"example3.2", "lattice"},
                           {"contraction", ""}};
                       for (const auto& [name, recipe] : cases) {
                           if (!enabled(sp, name)) continue;
                           Instance ins = instance_of(find_entry(name), recipe);
                           if (!ins.equicontinuous || !ins.seq->invertible()) continue;
                           const Flags f = eval_flags(ins, sp);
                           ++exercised;
                           if (f.meagre_exists())
                               bad.push_back(ins.label + ": reported meagre-expansive");
                       }
                       return finish("T4.5", "equicontinuous homeomorphisms: never meagre",
                                     exercised, bad);
                   }});

    reg.push_back({"R4.2", "fixed-point set of meagre systems has empty interior "
                           "(zero counting measure)",
                   [](const SuiteParams& sp) {
                       std::vector<std::string> bad;
                       int exercised = 0;
                       for (const char* name : {"doubling", "catmap", "example4.1"}) {
                           if (!enabled(sp, name)) continue;
                           Instance ins = instance_of(find_entry(name));
                           const auto table = build_orbit_table(ins.seq, ins.space, ins.horizon,
                                                                false, 1);
                           const PointSet fix = fixed_points(table);
                           const auto interior = interior_at_resolution(*ins.space, fix.indices, 2);
                           ++exercised;
                           if (!interior.empty())
                               bad.push_back(std::string(name) + ": Fix has interior measure " +
                                             std::to_string(static_cast<double>(interior.size()) /
                                                            static_cast<double>(ins.space->size())));
                       }
                       return finish("R4.2", "Fix of meagre systems has empty interior",
                                     exercised, bad);
                   }});

    return reg;
}

std::vector<std::string> suite_check_ids() {
    std::vector<std::string> ids;
    for (const auto& def : registry()) ids.push_back(def.id);
    return ids;
}

std::vector<CheckResult> run_suite(const SuiteParams& params) {
    for (const auto& name : params.entries) find_entry(name); // reject unknown names
    const auto reg = registry();
    std::vector<const CheckDef*> selected;
    for (const auto& def : reg) {
        if (params.only.empty() || params.only == def.id) selected.push_back(&def);
    }
    if (!params.only.empty() && selected.empty())
        throw std::invalid_argument("unknown check id: " + params.only);

    std::vector<CheckResult> results(selected.size());
    parallel_for(selected.size(), [&](std::size_t i) {
        try {
            results[i] = selected[i]->run(params);
        } catch (const std::exception& e) {
            results[i] = CheckResult{selected[i]->id, selected[i]->title, "fail", 0,
                                     std::string("exception: ") + e.what()};
        }
    }, params.workers);

    if (!params.inject_bug.empty()) {
        for (auto& r : results) {
            if (r.id == params.inject_bug) {
                r.status = (r.status == "fail") ? "pass" : "fail";
                r.witness = "verdict flipped by the --inject-bug harness self-test hook";
            }
        }
    }
    return results;
}

bool suite_ok(const std::vector<CheckResult>& results) {
    return std::none_of(results.begin(), results.end(),
                        [](const CheckResult& r) { return r.status == "fail"; });
}

std::string suite_to_json(const std::vector<CheckResult>& results) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        arr.push_back({{"id", r.id},
                       {"status", r.status},
                       {"instances", r.instances},
                       {"witness", r.witness}});
    }
    return arr.dump(2) + "\n";
}

std::string suite_table(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    os << "check   status              instances  description\n";
    for (const auto& r : results) {
        os << r.id;
        for (std::size_t i = r.id.size(); i < 8; ++i) os << ' ';
        os << r.status;
        for (std::size_t i = r.status.size(); i < 20; ++i) os << ' ';
        std::string inst = std::to_string(r.instances);
        os << inst;
        for (std::size_t i = inst.size(); i < 11; ++i) os << ' ';
        os << r.title << "\n";
        if (r.status == "fail" && !r.witness.empty()) os << "        witness: " << r.witness << "\n";
    }
    return os.str();
}

} // namespace expanso
