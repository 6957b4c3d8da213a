#include "expanso/balls.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expanso {

namespace {

// Candidate enumeration: any y with d(x,y) <= r satisfies, per axis,
// |offset| <= r cells (euclidean, sup and wrap metrics alike), so a box
// around the center's multi-index covers the metric ball.
struct Box {
    int radius[kMaxDim];
    int center[kMaxDim];
};

Box candidate_box(const SampledSpace& sp, const Point& center, double r) {
    Box box;
    const auto& axes = sp.axes();
    for (std::size_t d = 0; d < axes.size(); ++d) {
        const Axis& ax = axes[d];
        const double x = ax.wrap ? wrap01(center[d]) : center[d];
        box.center[d] = static_cast<int>(std::lround((x - (ax.wrap ? 0.0 : ax.lo)) / ax.step));
        if (ax.wrap) {
            box.center[d] = ((box.center[d] % ax.count) + ax.count) % ax.count;
        } else {
            box.center[d] = std::clamp(box.center[d], 0, ax.count - 1);
        }
        int rad = static_cast<int>(std::floor(r / ax.step)) + 1;
        if (ax.wrap) rad = std::min(rad, ax.count / 2);
        box.radius[d] = rad;
    }
    return box;
}

// Visit flat indices of all grid points in the box (clamped / wrapped).
template <typename Fn>
void for_each_in_box(const SampledSpace& sp, const Box& box, Fn&& fn) {
    const auto& axes = sp.axes();
    const std::size_t dim = axes.size();
    int lo[kMaxDim], hi[kMaxDim], cur[kMaxDim];
    for (std::size_t d = 0; d < dim; ++d) {
        if (axes[d].wrap && 2 * box.radius[d] + 1 >= axes[d].count) {
            lo[d] = 0;
            hi[d] = axes[d].count - 1;
        } else if (axes[d].wrap) {
            lo[d] = box.center[d] - box.radius[d];
            hi[d] = box.center[d] + box.radius[d];
        } else {
            lo[d] = std::max(0, box.center[d] - box.radius[d]);
            hi[d] = std::min(axes[d].count - 1, box.center[d] + box.radius[d]);
        }
        cur[d] = lo[d];
    }
    int multi[kMaxDim];
    while (true) {
        for (std::size_t d = 0; d < dim; ++d) {
            multi[d] = cur[d];
            if (axes[d].wrap) multi[d] = ((multi[d] % axes[d].count) + axes[d].count) % axes[d].count;
        }
        fn(sp.flat_index(multi));
        std::size_t d = dim;
        while (d-- > 0) {
            if (++cur[d] <= hi[d]) break;
            cur[d] = lo[d];
            if (d == 0) return;
        }
    }
}

} // namespace

DynamicalBall dynamical_ball(const OrbitTable& table, const Point& center, double c,
                             bool bilateral, const PointSet* mask) {
    if (c <= 0.0) throw std::invalid_argument("dynamical_ball: c must be > 0");
    if (bilateral && !table.bilateral())
        throw std::invalid_argument("dynamical_ball: bilateral ball needs a bilateral table");

    const SampledSpace& sp = table.space();
    const MetricFn& metric = sp.metric();
    const int N = table.horizon();
    const double bound = c + kBallTol;

    const OrbitRow row = orbit_of(table, center);
    const int nf = std::min(N, row.escape_forward - 1);
    const int nb = bilateral ? std::min(N, row.escape_backward - 1) : 0;
    if (nf < 0) throw std::invalid_argument("dynamical_ball: center outside window");

    DynamicalBall ball;
    ball.center = center;
    ball.c = c;
    ball.bilateral = bilateral;
    ball.horizon_forward = nf;
    ball.horizon_backward = nb;
    ball.truncated = (nf < N) || (bilateral && nb < N);

    std::vector<std::uint32_t> members;
    const Box box = candidate_box(sp, center, bound);
    for_each_in_box(sp, box, [&](std::size_t idx) {
        if (mask && !mask->contains(static_cast<std::uint32_t>(idx))) return;
        if (table.escape_forward(idx) <= nf) return;
        if (bilateral && table.escape_backward(idx) <= nb) return;
        for (int i = 0; i <= nf; ++i) {
            if (distance(metric, row.forward[static_cast<std::size_t>(i)],
                         table.forward(idx, i)) > bound)
                return;
        }
        if (bilateral) {
            for (int i = 1; i <= nb; ++i) {
                if (distance(metric, row.backward[static_cast<std::size_t>(i - 1)],
                             table.backward(idx, i)) > bound)
                    return;
            }
        }
        members.push_back(static_cast<std::uint32_t>(idx));
    });
    std::sort(members.begin(), members.end());
    ball.members = PointSet{table.space_ptr(), std::move(members)};
    return ball;
}

std::vector<std::uint32_t> ball_members_direct(const MapSequence& seq,
                                               const SampledSpace& space,
                                               const Point& center, double c,
                                               int horizon, bool bilateral,
                                               bool* truncated) {
    if (c <= 0.0) throw std::invalid_argument("ball_members_direct: c must be > 0");
    const MetricFn& metric = space.metric();
    const double bound = c + kBallTol;

    // Center orbit with escape truncation.
    std::vector<Point> cf;
    cf.reserve(horizon + 1);
    int nf = horizon;
    {
        Point x = center;
        for (int i = 0; i <= horizon; ++i) {
            if (i > 0) x = seq.apply(i, x);
            if (!space.contains(x)) {
                nf = i - 1;
                break;
            }
            cf.push_back(x);
        }
    }
    if (nf < 0) throw std::invalid_argument("ball_members_direct: center outside window");
    std::vector<Point> cb;
    int nb = 0;
    if (bilateral) {
        nb = horizon;
        for (int i = 1; i <= horizon; ++i) {
            const Point y = compose_inverse(seq, i, center);
            if (!space.contains(y)) {
                nb = i - 1;
                break;
            }
            cb.push_back(y);
        }
    }
    if (truncated) *truncated = (nf < horizon) || (bilateral && nb < horizon);

    std::vector<std::uint32_t> members;
    const Box box = candidate_box(space, center, bound);
    for_each_in_box(space, box, [&](std::size_t idx) {
        Point y = space.point(idx);
        for (int i = 0; i <= nf; ++i) {
            if (i > 0) y = seq.apply(i, y);
            if (!space.contains(y)) return; // candidate escaped: disqualified
            if (distance(metric, cf[static_cast<std::size_t>(i)], y) > bound) return;
        }
        if (bilateral) {
            for (int i = 1; i <= nb; ++i) {
                const Point z = compose_inverse(seq, i, space.point(idx));
                if (!space.contains(z)) return;
                if (distance(metric, cb[static_cast<std::size_t>(i - 1)], z) > bound) return;
            }
        }
        members.push_back(static_cast<std::uint32_t>(idx));
    });
    std::sort(members.begin(), members.end());
    return members;
}

static double loglog_slope(const std::vector<double>& spacings,
                           const std::vector<std::size_t>& cards) {
    const std::size_t n = spacings.size();
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(1.0 / spacings[i]);
        const double y = std::log(static_cast<double>(cards[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

ScalingEvidence ball_scaling(const MapSequence& seq, const SampledSpace& space,
                             const std::vector<Point>& centers, double c,
                             const std::vector<int>& refinement_factors, int horizon,
                             bool bilateral) {
    if (refinement_factors.empty())
        throw std::invalid_argument("ball_scaling: need at least one refinement factor");
    if (centers.empty()) throw std::invalid_argument("ball_scaling: no centers");

    ScalingEvidence ev;
    auto level = [&](const SampledSpace& sp) {
        std::size_t best = 0;
        for (const Point& x : centers) {
            best = std::max(best,
                            ball_members_direct(seq, sp, x, c, horizon, bilateral).size());
        }
        ev.spacings.push_back(sp.spacing());
        ev.cardinalities.push_back(best);
    };

    level(space);
    for (int f : refinement_factors) level(refine(space, f));

    for (std::size_t i = 1; i < ev.spacings.size(); ++i) {
        if (!(ev.spacings[i] < ev.spacings[i - 1]))
            throw std::logic_error("ball_scaling: spacings must decrease");
        if (ev.cardinalities[i] < ev.cardinalities[i - 1])
            throw std::logic_error("ball_scaling: cardinality decreased under refinement");
    }
    ev.growth_exponent = loglog_slope(ev.spacings, ev.cardinalities);
    return ev;
}

ScalingEvidence ball_scaling(const MapSequence& seq, const SampledSpace& space,
                             const Point& center, double c,
                             const std::vector<int>& refinement_factors, int horizon,
                             bool bilateral) {
    return ball_scaling(seq, space, std::vector<Point>{center}, c, refinement_factors,
                        horizon, bilateral);
}

} // namespace expanso
