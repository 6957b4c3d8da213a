// Built-in systems: the three worked examples plus reference controls, each
// with space recipes, default parameters and documented expected verdicts.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "expanso/space.hpp"
#include "expanso/system.hpp"

namespace expanso {

struct SpaceRecipe {
    std::string name; // stable CLI identifier, e.g. "window", "lattice"
    MetricKind kind = MetricKind::euclidean_window;
    std::vector<std::pair<double, double>> window;
    double spacing = 0.0;
    bool models_noncompact = false; // windowed model of R: clear the compact flag
};

SampledSpace build_space(const SpaceRecipe& recipe);

struct ExpectedVerdicts {
    std::string recipe;
    double c = 0.0;
    std::optional<int> n_expansive;
    bool aleph0 = false;
    std::optional<bool> cw;
    bool meagre = false;
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::function<MapSequence()> build;
    std::vector<SpaceRecipe> recipes; // first entry is the default
    std::vector<double> default_c;
    int default_horizon = 10;
    bool bilateral_default = false;
    std::vector<ExpectedVerdicts> expectations;

    const SpaceRecipe& recipe(const std::string& name_or_empty) const;
};

CatalogEntry example_3_1();
CatalogEntry example_3_2();
CatalogEntry example_4_1();
std::vector<CatalogEntry> reference_systems();

const std::vector<CatalogEntry>& full_catalog();
const CatalogEntry& find_entry(const std::string& name);
std::vector<std::string> catalog_names();

} // namespace expanso
