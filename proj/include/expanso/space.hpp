// Finite epsilon-nets of metric spaces: uniform grids on windows, circles,
// tori and integer lattices, together with the exact metrics on them and the
// topology metadata flags that classifier hypotheses consume.
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "expanso/point.hpp"

namespace expanso {

enum class MetricKind {
    euclidean_window, // bounded window of R^d, euclidean metric
    circle_mod1,      // R/Z, wrap-around metric
    torus_mod1,       // (R/Z)^d, sup of per-coordinate wrap metrics
    integer_lattice,  // windowed Z^d, euclidean metric
    product_max,      // max of component metrics (Tychonoff product)
};

std::string to_string(MetricKind k);
MetricKind metric_kind_from_string(const std::string& s);

struct MetricFn {
    MetricKind kind = MetricKind::euclidean_window;
    int dimension = 1;
    std::vector<MetricFn> components; // product_max only

    double operator()(const Point& a, const Point& b) const;
};

// Reduce to [0,1); values within 1e-12 of 1 snap to 0.
double wrap01(double x);
// Wrap-around distance on R/Z, always <= 0.5.
double wrap_dist(double a, double b);

double distance(const MetricFn& m, const Point& a, const Point& b);

struct SpaceFlags {
    bool compact = false;
    bool locally_connected = false;
    bool has_isolated_points = false;
    bool countable_model = false;
    bool uncountable_model = false;
};

struct Axis {
    double lo = 0.0;   // window lower bound (escape boundary for non-wrap axes)
    double hi = 0.0;   // window upper bound
    double step = 0.0; // grid spacing along this axis
    int count = 0;     // number of grid points
    bool wrap = false; // circle/torus coordinate

    double coord(int idx) const { return wrap ? idx * step : lo + idx * step; }
};

class SampledSpace;
using SpacePtr = std::shared_ptr<const SampledSpace>;

class SampledSpace {
public:
    SampledSpace(std::vector<Axis> axes, MetricFn metric, SpaceFlags flags);

    std::size_t size() const { return total_; }
    std::size_t dimension() const { return axes_.size(); }
    const std::vector<Axis>& axes() const { return axes_; }
    const MetricFn& metric() const { return metric_; }
    const SpaceFlags& flags() const { return flags_; }
    // Smallest axis step; tolerance and neighbourhood scales derive from it.
    double spacing() const { return spacing_; }

    Point point(std::size_t flat) const;
    void multi_index(std::size_t flat, int* out) const;
    std::size_t flat_index(const int* multi) const;

    // Exact grid point holding this coordinate tuple, if any.
    std::optional<std::size_t> locate(const Point& p, double tol = 1e-9) const;
    // True when p lies inside the window (wrap axes never exclude).
    bool contains(const Point& p, double tol = 1e-9) const;

    SampledSpace with_flags(SpaceFlags f) const;

    std::string describe() const;

private:
    std::vector<Axis> axes_;
    MetricFn metric_;
    SpaceFlags flags_;
    std::size_t total_ = 1;
    double spacing_ = 0.0;
};

// Uniform grid over the given per-dimension window. For circle/torus kinds the
// window is implicitly [0,1) per coordinate and the step is regularised to
// 1/round(1/spacing) so the net wraps evenly.
SampledSpace build_grid(const std::vector<std::pair<double, double>>& window,
                        double spacing, MetricKind kind);

// Same window, spacing divided by factor; the old points are a subset of the
// new ones. Integer lattices are already exact and refuse to refine.
SampledSpace refine(const SampledSpace& space, int factor);

// Product space with the sup metric over the two factors.
SampledSpace product_space(const SampledSpace& a, const SampledSpace& b);

struct PointSet {
    SpacePtr space;
    std::vector<std::uint32_t> indices; // strictly increasing

    bool contains(std::uint32_t idx) const;
};

PointSet make_point_set(SpacePtr space, std::vector<std::uint32_t> indices);

} // namespace expanso
