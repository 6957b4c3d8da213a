#include "expanso/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace expanso {

std::string to_string(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p[i]);
        s.append(buf, end);
        if (i + 1 < p.size()) s += ", ";
    }
    s += ")";
    return s;
}

std::string to_string(MetricKind k) {
    switch (k) {
        case MetricKind::euclidean_window: return "euclidean-window";
        case MetricKind::circle_mod1: return "circle-mod1";
        case MetricKind::torus_mod1: return "torus-mod1";
        case MetricKind::integer_lattice: return "integer-lattice";
        case MetricKind::product_max: return "product-max";
    }
    return "?";
}

MetricKind metric_kind_from_string(const std::string& s) {
    if (s == "euclidean-window") return MetricKind::euclidean_window;
    if (s == "circle-mod1") return MetricKind::circle_mod1;
    if (s == "torus-mod1") return MetricKind::torus_mod1;
    if (s == "integer-lattice") return MetricKind::integer_lattice;
    if (s == "product-max") return MetricKind::product_max;
    throw std::invalid_argument("unknown metric kind: " + s);
}

double wrap01(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    if (1.0 - r < 1e-12) r = 0.0;
    return r;
}

double wrap_dist(double a, double b) {
    double t = std::fabs(wrap01(a) - wrap01(b));
    return std::min(t, 1.0 - t);
}

static double euclid(const Point& a, const Point& b, std::size_t n) {
    if (n == 1) return std::fabs(a[0] - b[0]);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double MetricFn::operator()(const Point& a, const Point& b) const {
    return distance(*this, a, b);
}

double distance(const MetricFn& m, const Point& a, const Point& b) {
    if (a.size() != static_cast<std::size_t>(m.dimension) ||
        b.size() != static_cast<std::size_t>(m.dimension)) {
        throw std::invalid_argument("distance: dimension mismatch");
    }
    switch (m.kind) {
        case MetricKind::euclidean_window:
        case MetricKind::integer_lattice:
            return euclid(a, b, a.size());
        case MetricKind::circle_mod1:
            return wrap_dist(a[0], b[0]);
        case MetricKind::torus_mod1: {
            double d = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
                d = std::max(d, wrap_dist(a[i], b[i]));
            return d;
        }
        case MetricKind::product_max: {
            double d = 0.0;
            std::size_t off = 0;
            for (const auto& comp : m.components) {
                const auto n = static_cast<std::size_t>(comp.dimension);
                d = std::max(d, distance(comp, slice(a, off, n), slice(b, off, n)));
                off += n;
            }
            return d;
        }
    }
    return 0.0;
}

SampledSpace::SampledSpace(std::vector<Axis> axes, MetricFn metric, SpaceFlags flags)
    : axes_(std::move(axes)), metric_(std::move(metric)), flags_(flags) {
    if (axes_.empty()) throw std::invalid_argument("space needs at least one axis");
    if (axes_.size() > kMaxDim) throw std::invalid_argument("dimension too large");
    spacing_ = axes_[0].step;
    for (const auto& ax : axes_) {
        if (ax.count < 1) throw std::invalid_argument("axis with no points");
        total_ *= static_cast<std::size_t>(ax.count);
        spacing_ = std::min(spacing_, ax.step);
    }
}

Point SampledSpace::point(std::size_t flat) const {
    int multi[kMaxDim];
    multi_index(flat, multi);
    Point p = Point::zeros(axes_.size());
    for (std::size_t d = 0; d < axes_.size(); ++d) p[d] = axes_[d].coord(multi[d]);
    return p;
}

void SampledSpace::multi_index(std::size_t flat, int* out) const {
    for (std::size_t d = axes_.size(); d-- > 0;) {
        const auto c = static_cast<std::size_t>(axes_[d].count);
        out[d] = static_cast<int>(flat % c);
        flat /= c;
    }
}

std::size_t SampledSpace::flat_index(const int* multi) const {
    std::size_t flat = 0;
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        flat = flat * static_cast<std::size_t>(axes_[d].count) +
               static_cast<std::size_t>(multi[d]);
    }
    return flat;
}

std::optional<std::size_t> SampledSpace::locate(const Point& p, double tol) const {
    if (p.size() != axes_.size()) return std::nullopt;
    int multi[kMaxDim];
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        const Axis& ax = axes_[d];
        const double x = ax.wrap ? wrap01(p[d]) : p[d];
        double rel = (x - (ax.wrap ? 0.0 : ax.lo)) / ax.step;
        long idx = std::lround(rel);
        if (ax.wrap) {
            idx %= ax.count;
            if (idx < 0) idx += ax.count;
            if (wrap_dist(x, ax.coord(static_cast<int>(idx))) > tol) return std::nullopt;
        } else {
            if (idx < 0 || idx >= ax.count) return std::nullopt;
            if (std::fabs(x - ax.coord(static_cast<int>(idx))) > tol) return std::nullopt;
        }
        multi[d] = static_cast<int>(idx);
    }
    return flat_index(multi);
}

bool SampledSpace::contains(const Point& p, double tol) const {
    if (p.size() != axes_.size()) return false;
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        const Axis& ax = axes_[d];
        if (ax.wrap) continue;
        if (p[d] < ax.lo - tol || p[d] > ax.hi + tol) return false;
    }
    return true;
}

SampledSpace SampledSpace::with_flags(SpaceFlags f) const {
    return SampledSpace(axes_, metric_, f);
}

std::string SampledSpace::describe() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s dim=%zu points=%zu spacing=%g",
                  to_string(metric_.kind).c_str(), dimension(), size(), spacing());
    return buf;
}

SampledSpace build_grid(const std::vector<std::pair<double, double>>& window,
                        double spacing, MetricKind kind) {
    if (spacing <= 0.0) throw std::invalid_argument("build_grid: spacing must be > 0");
    if (window.empty()) throw std::invalid_argument("build_grid: empty window");
    if (kind == MetricKind::product_max)
        throw std::invalid_argument("build_grid: product spaces come from product_space()");

    const bool wrap = (kind == MetricKind::circle_mod1 || kind == MetricKind::torus_mod1);
    if (kind == MetricKind::circle_mod1 && window.size() != 1)
        throw std::invalid_argument("build_grid: circle-mod1 is one-dimensional");

    std::vector<Axis> axes;
    axes.reserve(window.size());
    for (const auto& [lo, hi] : window) {
        Axis ax;
        ax.wrap = wrap;
        if (wrap) {
            const int count = static_cast<int>(std::floor(1.0 / spacing + 1e-9));
            if (count < 1) throw std::invalid_argument("build_grid: spacing exceeds circle");
            ax.lo = 0.0;
            ax.hi = 1.0;
            ax.count = count;
            ax.step = 1.0 / count;
        } else {
            if (!(hi > lo)) throw std::invalid_argument("build_grid: window must have hi > lo");
            if (!std::isfinite(lo) || !std::isfinite(hi))
                throw std::invalid_argument("build_grid: window bounds must be finite");
            const int count = static_cast<int>(std::floor((hi - lo) / spacing + 1e-9)) + 1;
            if (count < 2) throw std::invalid_argument("build_grid: spacing larger than window extent");
            ax.lo = lo;
            ax.hi = hi;
            ax.count = count;
            ax.step = spacing;
        }
        axes.push_back(ax);
    }

    MetricFn metric;
    metric.kind = kind;
    metric.dimension = static_cast<int>(window.size());

    SpaceFlags flags;
    switch (kind) {
        case MetricKind::circle_mod1:
        case MetricKind::torus_mod1:
        case MetricKind::euclidean_window:
            flags.compact = true;
            flags.locally_connected = true;
            flags.has_isolated_points = false;
            flags.uncountable_model = true;
            break;
        case MetricKind::integer_lattice:
            flags.compact = true; // a windowed lattice is a finite set
            flags.locally_connected = false;
            flags.has_isolated_points = true;
            flags.countable_model = true;
            break;
        default:
            break;
    }
    return SampledSpace(std::move(axes), std::move(metric), flags);
}

SampledSpace refine(const SampledSpace& space, int factor) {
    if (factor < 2) throw std::invalid_argument("refine: factor must be >= 2");
    if (space.metric().kind == MetricKind::integer_lattice)
        throw std::invalid_argument("refine: integer lattices are exact, not refinable");

    std::vector<Axis> axes = space.axes();
    for (Axis& ax : axes) {
        ax.step /= factor;
        ax.count = ax.wrap ? ax.count * factor : (ax.count - 1) * factor + 1;
    }
    return SampledSpace(std::move(axes), space.metric(), space.flags());
}

SampledSpace product_space(const SampledSpace& a, const SampledSpace& b) {
    std::vector<Axis> axes = a.axes();
    axes.insert(axes.end(), b.axes().begin(), b.axes().end());

    MetricFn metric;
    metric.kind = MetricKind::product_max;
    metric.dimension = static_cast<int>(axes.size());
    metric.components = {a.metric(), b.metric()};

    SpaceFlags f;
    const SpaceFlags& fa = a.flags();
    const SpaceFlags& fb = b.flags();
    f.compact = fa.compact && fb.compact;
    f.locally_connected = fa.locally_connected && fb.locally_connected;
    f.has_isolated_points = fa.has_isolated_points || fb.has_isolated_points;
    f.countable_model = fa.countable_model && fb.countable_model;
    f.uncountable_model = fa.uncountable_model || fb.uncountable_model;
    return SampledSpace(std::move(axes), std::move(metric), f);
}

bool PointSet::contains(std::uint32_t idx) const {
    return std::binary_search(indices.begin(), indices.end(), idx);
}

PointSet make_point_set(SpacePtr space, std::vector<std::uint32_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (std::uint32_t i : indices) {
        if (i >= space->size()) throw std::invalid_argument("point set index out of range");
    }
    return PointSet{std::move(space), std::move(indices)};
}

} // namespace expanso
