#include "expanso/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace expanso {

SampledSpace build_space(const SpaceRecipe& recipe) {
    SampledSpace sp = build_grid(recipe.window, recipe.spacing, recipe.kind);
    if (recipe.models_noncompact) {
        SpaceFlags f = sp.flags();
        f.compact = false;
        return sp.with_flags(f);
    }
    return sp;
}

const SpaceRecipe& CatalogEntry::recipe(const std::string& name_or_empty) const {
    if (name_or_empty.empty()) return recipes.front();
    for (const auto& r : recipes)
        if (r.name == name_or_empty) return r;
    throw std::invalid_argument("catalog entry '" + name + "' has no space recipe '" +
                                name_or_empty + "'");
}

namespace {

Point map1(double v) { return Point{v}; }

// Alternating powers of the doubling and halving maps on R:
// phi_1 = g, phi_2 = h, phi_3 = g^2, phi_4 = h^2, ... with g(x)=2x, h(x)=x/2.
double ex31_scale(int n) {
    const int k = (n + 1) / 2;
    return (n % 2 == 1) ? std::ldexp(1.0, k) : std::ldexp(1.0, -k);
}

// Hyperbolic toral automorphism [[2,1],[1,1]]; exact on dyadic grids since
// every intermediate value stays a dyadic rational representable in double.
Point cat_forward(const Point& z) {
    return Point{wrap01(2.0 * z[0] + z[1]), wrap01(z[0] + z[1])};
}
Point cat_backward(const Point& z) {
    return Point{wrap01(z[0] - z[1]), wrap01(-z[0] + 2.0 * z[1])};
}

} // namespace

CatalogEntry example_3_1() {
    CatalogEntry e;
    e.name = "example3.1";
    e.summary = "alternating powers of doubling and halving on a window of R; "
                "every point returns after each even step";
    e.build = [] {
        return MapSequence(
            "example3.1", 1,
            [](int n, const Point& x) { return map1(x[0] * ex31_scale(n)); },
            [](int n, const Point& x) { return map1(x[0] / ex31_scale(n)); },
            /*equicontinuous=*/false);
    };
    e.recipes = {
        {"window", MetricKind::euclidean_window, {{-8.0, 8.0}}, 0.01, true},
        {"lattice", MetricKind::integer_lattice, {{-50.0, 50.0}}, 1.0, false},
    };
    e.default_c = {0.5};
    e.default_horizon = 20;
    e.bilateral_default = true;
    e.expectations = {
        {"lattice", 0.5, 1, true, std::nullopt, false},
    };
    return e;
}

CatalogEntry example_3_2() {
    CatalogEntry e;
    e.name = "example3.2";
    e.summary = "translation sequence x -> x + n; a single orbit bound on Z, "
                "interval-sized balls on the R window";
    e.build = [] {
        return MapSequence(
            "example3.2", 1,
            [](int n, const Point& x) { return map1(x[0] + n); },
            [](int n, const Point& x) { return map1(x[0] - n); },
            /*equicontinuous=*/true);
    };
    e.recipes = {
        {"window", MetricKind::euclidean_window, {{-20.0, 20.0}}, 0.01, true},
        {"lattice", MetricKind::integer_lattice, {{-50.0, 50.0}}, 1.0, false},
    };
    e.default_c = {0.5};
    e.default_horizon = 20;
    e.bilateral_default = true;
    e.expectations = {
        {"window", 0.5, std::nullopt, false, false, false},
        {"lattice", 0.5, 1, true, std::nullopt, false},
    };
    return e;
}

CatalogEntry example_4_1() {
    CatalogEntry e;
    e.name = "example4.1";
    e.summary = "T^3 = S^1 x T^2 with the cat map on the T^2 factor at odd "
                "steps and the identity at even steps";
    e.build = [] {
        auto g1 = [](const Point& p) {
            const Point z = cat_forward(Point{p[1], p[2]});
            return Point{wrap01(p[0]), z[0], z[1]};
        };
        auto g1inv = [](const Point& p) {
            const Point z = cat_backward(Point{p[1], p[2]});
            return Point{wrap01(p[0]), z[0], z[1]};
        };
        return MapSequence(
            "example4.1", 3,
            [g1](int n, const Point& x) { return n % 2 == 1 ? g1(x) : x; },
            [g1inv](int n, const Point& x) { return n % 2 == 1 ? g1inv(x) : x; },
            /*equicontinuous=*/false);
    };
    e.recipes = {
        {"default", MetricKind::torus_mod1, {{0, 1}, {0, 1}, {0, 1}}, 1.0 / 64.0, false},
        {"coarse", MetricKind::torus_mod1, {{0, 1}, {0, 1}, {0, 1}}, 1.0 / 16.0, false},
    };
    e.default_c = {0.1};
    e.default_horizon = 10;
    e.bilateral_default = true;
    e.expectations = {
        {"default", 0.1, std::nullopt, false, false, true},
    };
    return e;
}

std::vector<CatalogEntry> reference_systems() {
    std::vector<CatalogEntry> out;

    {
        CatalogEntry e;
        e.name = "doubling";
        e.summary = "angle doubling on the circle (positive control: every "
                    "variant of expansiveness holds)";
        e.build = [] {
            return MapSequence(
                "doubling", 1,
                [](int, const Point& x) { return map1(wrap01(2.0 * x[0])); },
                nullptr, false);
        };
        e.recipes = {{"default", MetricKind::circle_mod1, {{0, 1}}, 1.0 / 512.0, false}};
        e.default_c = {0.1, 0.2};
        e.default_horizon = 20;
        e.bilateral_default = false;
        e.expectations = {{"default", 0.2, 1, true, true, true}};
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "catmap";
        e.summary = "autonomous hyperbolic toral automorphism on T^2";
        e.build = [] {
            return MapSequence(
                "catmap", 2,
                [](int, const Point& x) { return cat_forward(x); },
                [](int, const Point& x) { return cat_backward(x); },
                false);
        };
        e.recipes = {
            {"default", MetricKind::torus_mod1, {{0, 1}, {0, 1}}, 1.0 / 128.0, false},
            {"coarse", MetricKind::torus_mod1, {{0, 1}, {0, 1}}, 1.0 / 16.0, false},
        };
        e.default_c = {0.05, 0.1};
        e.default_horizon = 10;
        e.bilateral_default = true;
        e.expectations = {{"default", 0.1, 1, true, true, true}};
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "rotation";
        e.summary = "irrational rotation sequence (equicontinuous isometries; "
                    "negative control)";
        const double alpha = 0.6180339887498949; // (sqrt(5)-1)/2
        e.build = [alpha] {
            return MapSequence(
                "rotation", 1,
                [alpha](int, const Point& x) { return map1(wrap01(x[0] + alpha)); },
                [alpha](int, const Point& x) { return map1(wrap01(x[0] - alpha)); },
                true);
        };
        e.recipes = {{"default", MetricKind::circle_mod1, {{0, 1}}, 1.0 / 256.0, false}};
        e.default_c = {0.1, 0.2};
        e.default_horizon = 40;
        e.bilateral_default = true;
        e.expectations = {{"default", 0.1, std::nullopt, false, false, false}};
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "contraction";
        e.summary = "x -> x/2 on a window (orbits collapse to the origin)";
        e.build = [] {
            return MapSequence(
                "contraction", 1,
                [](int, const Point& x) { return map1(0.5 * x[0]); },
                [](int, const Point& x) { return map1(2.0 * x[0]); },
                true);
        };
        e.recipes = {{"default", MetricKind::euclidean_window, {{-1.0, 1.0}}, 0.01, false}};
        e.default_c = {0.1, 0.2};
        e.default_horizon = 20;
        e.bilateral_default = true;
        e.expectations = {{"default", 0.2, std::nullopt, false, false, false}};
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "interval-square";
        e.summary = "x -> x^2 on [0,1], a strictly increasing interval "
                    "homeomorphism sequence";
        e.build = [] {
            return MapSequence(
                "interval-square", 1,
                [](int, const Point& x) { return map1(x[0] * x[0]); },
                [](int, const Point& x) { return map1(std::sqrt(std::max(0.0, x[0]))); },
                false);
        };
        e.recipes = {{"default", MetricKind::euclidean_window, {{0.0, 1.0}}, 0.01, false}};
        e.default_c = {0.1, 0.2};
        e.default_horizon = 20;
        e.bilateral_default = true;
        e.expectations = {{"default", 0.2, std::nullopt, false, false, false}};
        out.push_back(e);
    }
    return out;
}

const std::vector<CatalogEntry>& full_catalog() {
    static const std::vector<CatalogEntry> catalog = [] {
        std::vector<CatalogEntry> all{example_3_1(), example_3_2(), example_4_1()};
        for (auto& e : reference_systems()) all.push_back(std::move(e));
        return all;
    }();
    return catalog;
}

const CatalogEntry& find_entry(const std::string& name) {
    for (const auto& e : full_catalog())
        if (e.name == name) return e;
    throw std::invalid_argument("unknown catalog system: " + name);
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& e : full_catalog()) names.push_back(e.name);
    return names;
}

} // namespace expanso
