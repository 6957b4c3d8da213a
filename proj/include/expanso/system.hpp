// Non-autonomous systems phi_1, phi_2, ... and their algebra: block
// compositions, k-th iterates, inverse systems, conjugation, products and
// restriction, plus precomputed orbit tables feeding every classifier.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expanso/point.hpp"
#include "expanso/space.hpp"

namespace expanso {

using MapFn = std::function<Point(const Point&)>;
// n-th map of the sequence, n >= 1.
using RuleFn = std::function<Point(int, const Point&)>;

class MapSequence {
public:
    MapSequence() = default;
    MapSequence(std::string name, int dimension, RuleFn forward,
                RuleFn inverse = nullptr, bool equicontinuous = false)
        : name_(std::move(name)), dim_(dimension), fwd_(std::move(forward)),
          inv_(std::move(inverse)), equicontinuous_(equicontinuous) {}

    const std::string& name() const { return name_; }
    int dimension() const { return dim_; }
    bool invertible() const { return static_cast<bool>(inv_); }
    bool equicontinuous() const { return equicontinuous_; }

    Point apply(int n, const Point& x) const { return fwd_(n, x); }
    Point apply_inverse(int n, const Point& x) const;

private:
    std::string name_;
    int dim_ = 1;
    RuleFn fwd_;
    RuleFn inv_;
    bool equicontinuous_ = false;
};

using SeqPtr = std::shared_ptr<const MapSequence>;

// phi_i^j = phi_j o ... o phi_i; identity when i > j.
Point compose(const MapSequence& seq, int i, int j, const Point& x);

// Backward orbit value (phi_1^i)^{-1}(x) = phi_1^{-1} o ... o phi_i^{-1}(x).
Point compose_inverse(const MapSequence& seq, int i, const Point& x);

// The k-th iterate system: n-th map is the block phi_{(n-1)k+1}^{nk}.
MapSequence kth_iterate(const MapSequence& seq, int k);

// {phi_n^{-1}}; requires an inverse rule.
MapSequence inverse_system(const MapSequence& seq);

// psi_n = h o phi_n o h_inv. The pair (h, h_inv) is validated as a round-trip
// identity on a subsample of `sample` to 1e-9.
MapSequence conjugate(const MapSequence& seq, const MapFn& h, const MapFn& h_inv,
                      const SampledSpace& sample);

// Coordinate-wise product acting on the concatenated state.
MapSequence product_system(const MapSequence& a, const MapSequence& b);

// Validates that `subset` is invariant (phi_1^n(subset) within grid tolerance
// of subset for all n <= horizon, escapes allowed on windowed models) and
// returns the same maps. Non-invariance throws; nothing is clipped silently.
MapSequence restrict_system(const MapSequence& seq, const PointSet& subset, int horizon);

// Checks map_n(inverse_n(x)) == x within tol on a subsample; throws otherwise.
void validate_inverse(const MapSequence& seq, const SampledSpace& space, int horizon,
                      double tol = 1e-9);

class OrbitTable {
public:
    OrbitTable(SeqPtr seq, SpacePtr space, int horizon, bool bilateral,
               std::vector<double> fwd, std::vector<double> bwd,
               std::vector<int> escape_fwd, std::vector<int> escape_bwd);

    const SampledSpace& space() const { return *space_; }
    SpacePtr space_ptr() const { return space_; }
    const MapSequence& sequence() const { return *seq_; }
    SeqPtr sequence_ptr() const { return seq_; }
    int horizon() const { return horizon_; }
    bool bilateral() const { return bilateral_; }

    // phi_1^i(x_p), 0 <= i <= horizon.
    Point forward(std::size_t p, int i) const;
    // (phi_1^i)^{-1}(x_p), 1 <= i <= horizon; bilateral tables only.
    Point backward(std::size_t p, int i) const;

    // First i with the forward orbit outside the window; horizon+1 if none.
    int escape_forward(std::size_t p) const { return escape_fwd_[p]; }
    int escape_backward(std::size_t p) const { return escape_bwd_[p]; }

private:
    SeqPtr seq_;
    SpacePtr space_;
    int horizon_ = 0;
    bool bilateral_ = false;
    std::size_t dim_ = 1;
    std::vector<double> fwd_; // [p][0..N][dim]
    std::vector<double> bwd_; // [p][0..N-1][dim] storing i = 1..N
    std::vector<int> escape_fwd_;
    std::vector<int> escape_bwd_;
};

OrbitTable build_orbit_table(SeqPtr seq, SpacePtr space, int horizon, bool bilateral,
                             int workers = 0);

// Orbit of an arbitrary start point under the table's sequence, with the same
// escape bookkeeping as the table rows. Grid points reuse the table row.
struct OrbitRow {
    std::vector<Point> forward;  // [0..N]
    std::vector<Point> backward; // [1..N] when bilateral
    int escape_forward;
    int escape_backward;
};
OrbitRow orbit_of(const OrbitTable& table, const Point& start);

} // namespace expanso
