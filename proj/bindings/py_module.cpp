// Python surface for the laboratory: grids, catalog systems, orbits,
// dynamical balls, classification reports and the property suite.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expanso/balls.hpp"
#include "expanso/catalog.hpp"
#include "expanso/classify.hpp"
#include "expanso/config.hpp"
#include "expanso/verify.hpp"

namespace py = pybind11;
using namespace expanso;

namespace {

Point to_point(const std::vector<double>& xs) {
    if (xs.empty() || xs.size() > kMaxDim) throw std::invalid_argument("bad point dimension");
    Point p;
    p.dim = static_cast<std::uint8_t>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) p[i] = xs[i];
    return p;
}

std::vector<double> from_point(const Point& p) {
    return {p.coord.begin(), p.coord.begin() + p.size()};
}

struct PySystem {
    SeqPtr seq;
    SpacePtr space;
    int horizon;
    bool bilateral;
    std::vector<double> default_c;
};

PySystem make_system(const std::string& name, const std::string& space_recipe, int horizon,
                     py::object bilateral) {
    const CatalogEntry& e = find_entry(name);
    PySystem s;
    s.seq = std::make_shared<MapSequence>(e.build());
    s.space = std::make_shared<SampledSpace>(build_space(e.recipe(space_recipe)));
    s.horizon = horizon > 0 ? horizon : e.default_horizon;
    s.bilateral = bilateral.is_none() ? (e.bilateral_default && s.seq->invertible())
                                      : bilateral.cast<bool>();
    s.default_c = e.default_c;
    return s;
}

py::dict flags_dict(const SpaceFlags& f) {
    py::dict d;
    d["compact"] = f.compact;
    d["locally_connected"] = f.locally_connected;
    d["has_isolated_points"] = f.has_isolated_points;
    d["countable_model"] = f.countable_model;
    d["uncountable_model"] = f.uncountable_model;
    return d;
}

py::dict report_dict(const ClassificationReport& rep) {
    py::dict d;
    d["system"] = rep.system;
    d["space"] = rep.space;
    d["c"] = rep.c;
    d["horizon"] = rep.horizon;
    d["bilateral"] = rep.bilateral;
    py::dict v;
    v["n_expansive"] = rep.verdicts.n_expansive ? py::cast(*rep.verdicts.n_expansive)
                                                : py::none().cast<py::object>();
    v["aleph0_proxy"] = rep.verdicts.aleph0_proxy;
    v["cw_expansive"] = rep.verdicts.cw_expansive ? py::cast(*rep.verdicts.cw_expansive)
                                                  : py::none().cast<py::object>();
    v["meagre_expansive"] = rep.verdicts.meagre_expansive;
    d["verdicts"] = v;
    d["spacings"] = rep.scaling.spacings;
    d["cardinalities"] = rep.scaling.cardinalities;
    d["growth_exponent"] = rep.scaling.growth_exponent;
    d["max_interior_measure"] = rep.max_interior_measure;
    d["centers_sampled"] = rep.centers_sampled;
    d["truncated_centers"] = rep.truncated_centers;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical laboratory for expansiveness of non-autonomous discrete "
              "dynamical systems";

    py::class_<SampledSpace, std::shared_ptr<SampledSpace>>(m, "SampledSpace")
        .def("__len__", &SampledSpace::size)
        .def_property_readonly("dimension", &SampledSpace::dimension)
        .def_property_readonly("spacing", &SampledSpace::spacing)
        .def_property_readonly("flags", [](const SampledSpace& s) { return flags_dict(s.flags()); })
        .def("point", [](const SampledSpace& s, std::size_t i) { return from_point(s.point(i)); })
        .def("describe", &SampledSpace::describe)
        .def("__repr__", [](const SampledSpace& s) { return "<SampledSpace " + s.describe() + ">"; });

    m.def(
        "build_grid",
        [](const std::vector<std::pair<double, double>>& window, double spacing,
           const std::string& kind) {
            return std::make_shared<SampledSpace>(
                build_grid(window, spacing, metric_kind_from_string(kind)));
        },
        py::arg("window"), py::arg("spacing"), py::arg("kind"),
        "Uniform grid over a window; kind is one of euclidean-window, circle-mod1, "
        "torus-mod1, integer-lattice");

    m.def(
        "refine",
        [](const std::shared_ptr<SampledSpace>& s, int factor) {
            return std::make_shared<SampledSpace>(refine(*s, factor));
        },
        py::arg("space"), py::arg("factor"));

    m.def(
        "grid_distance",
        [](const std::shared_ptr<SampledSpace>& s, const std::vector<double>& a,
           const std::vector<double>& b) {
            return distance(s->metric(), to_point(a), to_point(b));
        },
        py::arg("space"), py::arg("a"), py::arg("b"));

    m.def("catalog_names", &catalog_names);

    py::class_<PySystem>(m, "System")
        .def_property_readonly(
            "space", [](const PySystem& s) { return std::make_shared<SampledSpace>(*s.space); })
        .def_property_readonly("horizon", [](const PySystem& s) { return s.horizon; })
        .def_property_readonly("bilateral", [](const PySystem& s) { return s.bilateral; })
        .def_property_readonly("default_c", [](const PySystem& s) { return s.default_c; })
        .def(
            "apply",
            [](const PySystem& s, int n, const std::vector<double>& x) {
                return from_point(s.seq->apply(n, to_point(x)));
            },
            py::arg("n"), py::arg("x"), "apply the n-th map (n >= 1)")
        .def(
            "compose",
            [](const PySystem& s, int i, int j, const std::vector<double>& x) {
                return from_point(compose(*s.seq, i, j, to_point(x)));
            },
            py::arg("i"), py::arg("j"), py::arg("x"),
            "phi_i^j(x); identity when i > j")
        .def(
            "orbit",
            [](const PySystem& s, const std::vector<double>& x) {
                const OrbitTable table =
                    build_orbit_table(s.seq, s.space, s.horizon, s.bilateral);
                const OrbitRow row = orbit_of(table, to_point(x));
                py::list out;
                for (const auto& p : row.forward) out.append(from_point(p));
                return out;
            },
            py::arg("x"), "forward orbit x, phi_1^1(x), ..., phi_1^N(x)")
        .def(
            "ball",
            [](const PySystem& s, const std::vector<double>& center, double c) {
                const OrbitTable table =
                    build_orbit_table(s.seq, s.space, s.horizon, s.bilateral);
                const DynamicalBall ball =
                    dynamical_ball(table, to_point(center), c, s.bilateral);
                py::list out;
                for (auto m : ball.members.indices) out.append(from_point(s.space->point(m)));
                return out;
            },
            py::arg("center"), py::arg("c"), "members of the dynamical ball S_c(center)")
        .def(
            "ball_scaling",
            [](const PySystem& s, const std::vector<double>& center, double c,
               const std::vector<int>& factors) {
                const ScalingEvidence ev = ball_scaling(*s.seq, *s.space, to_point(center), c,
                                                        factors, s.horizon, s.bilateral);
                py::dict d;
                d["spacings"] = ev.spacings;
                d["cardinalities"] = ev.cardinalities;
                d["growth_exponent"] = ev.growth_exponent;
                return d;
            },
            py::arg("center"), py::arg("c"), py::arg("factors"))
        .def(
            "classify",
            [](const PySystem& s, double c, std::uint64_t seed) {
                const OrbitTable table =
                    build_orbit_table(s.seq, s.space, s.horizon, s.bilateral);
                ClassifyParams cp;
                cp.seed = seed;
                return report_dict(classify_report(table, c, cp));
            },
            py::arg("c"), py::arg("seed") = 0)
        .def(
            "fixed_points",
            [](const PySystem& s) {
                const OrbitTable table =
                    build_orbit_table(s.seq, s.space, s.horizon, false);
                py::list out;
                for (auto i : fixed_points(table).indices)
                    out.append(from_point(s.space->point(i)));
                return out;
            });

    m.def("system", &make_system, py::arg("name"), py::arg("space") = "",
          py::arg("horizon") = 0, py::arg("bilateral") = py::none(),
          "build a catalog system with one of its space recipes");

    m.def(
        "verify",
        [](const std::string& only, std::uint64_t seed, int workers) {
            SuiteParams sp;
            sp.seed = seed;
            sp.workers = workers;
            sp.only = only;
            py::list out;
            for (const auto& r : run_suite(sp)) {
                py::dict d;
                d["id"] = r.id;
                d["title"] = r.title;
                d["status"] = r.status;
                d["instances"] = r.instances;
                d["witness"] = r.witness;
                out.append(d);
            }
            return out;
        },
        py::arg("only") = "", py::arg("seed") = SuiteParams{}.seed, py::arg("workers") = 0,
        "run the property suite (optionally a single check id)");
}
