// Finite-resolution dynamical balls S_c(x) = {y : d(phi_1^i(x), phi_1^i(y)) <= c}
// over the table's index range, and their cardinality scaling under grid
// refinement (the computable proxy for cardinality class).
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expanso/space.hpp"
#include "expanso/system.hpp"

namespace expanso {

// Closed-inequality slack: membership compares against c + kBallTol so
// representable boundary distances resolve deterministically.
inline constexpr double kBallTol = 1e-12;

struct DynamicalBall {
    Point center;
    double c = 0.0;
    int horizon_forward = 0;  // effective (center escape truncates)
    int horizon_backward = 0; // 0 unless bilateral
    bool bilateral = false;
    bool truncated = false;   // center escaped before the table horizon
    PointSet members;
};

// Members drawn from the table's grid. `mask` (optional) restricts candidates
// to a subset, for classifying restricted systems.
DynamicalBall dynamical_ball(const OrbitTable& table, const Point& center, double c,
                             bool bilateral, const PointSet* mask = nullptr);

// Table-free membership scan used at refinement levels where materialising a
// full table would be wasteful. Same semantics as dynamical_ball.
std::vector<std::uint32_t> ball_members_direct(const MapSequence& seq,
                                               const SampledSpace& space,
                                               const Point& center, double c,
                                               int horizon, bool bilateral,
                                               bool* truncated = nullptr);

struct ScalingEvidence {
    std::vector<double> spacings;          // strictly decreasing
    std::vector<std::size_t> cardinalities; // max over centers, non-decreasing
    double growth_exponent = 0.0;          // log-log least-squares slope
};

// Ball cardinality at the base grid and at each refinement, max over the given
// centers; growth_exponent is the slope of log|S_c| against log(1/spacing).
ScalingEvidence ball_scaling(const MapSequence& seq, const SampledSpace& space,
                             const std::vector<Point>& centers, double c,
                             const std::vector<int>& refinement_factors, int horizon,
                             bool bilateral);

ScalingEvidence ball_scaling(const MapSequence& seq, const SampledSpace& space,
                             const Point& center, double c,
                             const std::vector<int>& refinement_factors, int horizon,
                             bool bilateral);

} // namespace expanso
