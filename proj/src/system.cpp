#include "expanso/system.hpp"

#include <cmath>
#include <stdexcept>

#include "expanso/parallel.hpp"

namespace expanso {

Point MapSequence::apply_inverse(int n, const Point& x) const {
    if (!inv_) throw std::invalid_argument(name_ + ": no inverse rule");
    return inv_(n, x);
}

Point compose(const MapSequence& seq, int i, int j, const Point& x) {
    Point y = x;
    for (int n = i; n <= j; ++n) y = seq.apply(n, y);
    return y;
}

Point compose_inverse(const MapSequence& seq, int i, const Point& x) {
    Point y = x;
    for (int n = i; n >= 1; --n) y = seq.apply_inverse(n, y);
    return y;
}

MapSequence kth_iterate(const MapSequence& seq, int k) {
    if (k < 1) throw std::invalid_argument("kth_iterate: k must be >= 1");
    const MapSequence base = seq; // capture by value
    RuleFn fwd = [base, k](int n, const Point& x) {
        return compose(base, (n - 1) * k + 1, n * k, x);
    };
    RuleFn inv;
    if (seq.invertible()) {
        inv = [base, k](int n, const Point& x) {
            Point y = x;
            for (int m = n * k; m >= (n - 1) * k + 1; --m) y = base.apply_inverse(m, y);
            return y;
        };
    }
    return MapSequence(seq.name() + "^" + std::to_string(k), seq.dimension(),
                       std::move(fwd), std::move(inv), seq.equicontinuous());
}

MapSequence inverse_system(const MapSequence& seq) {
    if (!seq.invertible())
        throw std::invalid_argument("inverse_system: " + seq.name() + " has no inverse rule");
    const MapSequence base = seq;
    RuleFn fwd = [base](int n, const Point& x) { return base.apply_inverse(n, x); };
    RuleFn inv = [base](int n, const Point& x) { return base.apply(n, x); };
    return MapSequence(seq.name() + "-inverse", seq.dimension(), std::move(fwd),
                       std::move(inv), seq.equicontinuous());
}

static void check_round_trip(const MapFn& h, const MapFn& h_inv,
                             const SampledSpace& sample, double tol) {
    const std::size_t n = sample.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 128);
    for (std::size_t i = 0; i < n; i += stride) {
        const Point p = sample.point(i);
        const Point q = h(h_inv(p));
        const Point r = h_inv(h(p));
        if (distance(sample.metric(), p, q) > tol || distance(sample.metric(), p, r) > tol)
            throw std::invalid_argument("conjugate: h and h_inv fail the round-trip check at " +
                                        to_string(p));
    }
}

MapSequence conjugate(const MapSequence& seq, const MapFn& h, const MapFn& h_inv,
                      const SampledSpace& sample) {
    check_round_trip(h, h_inv, sample, 1e-9);
    const MapSequence base = seq;
    RuleFn fwd = [base, h, h_inv](int n, const Point& x) {
        return h(base.apply(n, h_inv(x)));
    };
    RuleFn inv;
    if (seq.invertible()) {
        inv = [base, h, h_inv](int n, const Point& x) {
            return h(base.apply_inverse(n, h_inv(x)));
        };
    }
    return MapSequence(seq.name() + "-conjugate", seq.dimension(), std::move(fwd),
                       std::move(inv), seq.equicontinuous());
}

MapSequence product_system(const MapSequence& a, const MapSequence& b) {
    const int da = a.dimension();
    const int db = b.dimension();
    const MapSequence ca = a, cb = b;
    RuleFn fwd = [ca, cb, da, db](int n, const Point& x) {
        return concat(ca.apply(n, slice(x, 0, da)), cb.apply(n, slice(x, da, db)));
    };
    RuleFn inv;
    if (a.invertible() && b.invertible()) {
        inv = [ca, cb, da, db](int n, const Point& x) {
            return concat(ca.apply_inverse(n, slice(x, 0, da)),
                          cb.apply_inverse(n, slice(x, da, db)));
        };
    }
    return MapSequence(a.name() + "x" + b.name(), da + db, std::move(fwd), std::move(inv),
                       a.equicontinuous() && b.equicontinuous());
}

MapSequence restrict_system(const MapSequence& seq, const PointSet& subset, int horizon) {
    if (!subset.space) throw std::invalid_argument("restrict: point set without space");
    if (subset.indices.empty()) throw std::invalid_argument("restrict: empty subset");
    const SampledSpace& sp = *subset.space;
    const double tol = std::max(1e-9, sp.spacing() * 1e-6);
    for (std::uint32_t idx : subset.indices) {
        Point x = sp.point(idx);
        for (int n = 1; n <= horizon; ++n) {
            x = seq.apply(n, x);
            if (!sp.contains(x)) break; // left the windowed model, out of scope
            auto hit = sp.locate(x, tol);
            if (!hit || !subset.contains(static_cast<std::uint32_t>(*hit))) {
                throw std::invalid_argument(
                    "restrict: subset not invariant, phi_1^" + std::to_string(n) + "(" +
                    to_string(sp.point(idx)) + ") = " + to_string(x) + " leaves it");
            }
        }
    }
    return MapSequence(seq.name() + "|restricted", seq.dimension(),
                       [base = seq](int n, const Point& x) { return base.apply(n, x); },
                       seq.invertible()
                           ? RuleFn([base = seq](int n, const Point& x) {
                                 return base.apply_inverse(n, x);
                             })
                           : RuleFn(),
                       seq.equicontinuous());
}

void validate_inverse(const MapSequence& seq, const SampledSpace& space, int horizon,
                      double tol) {
    if (!seq.invertible()) throw std::invalid_argument("validate_inverse: no inverse rule");
    const std::size_t stride = std::max<std::size_t>(1, space.size() / 64);
    for (std::size_t i = 0; i < space.size(); i += stride) {
        const Point p = space.point(i);
        for (int n = 1; n <= horizon; ++n) {
            const Point q = seq.apply(n, seq.apply_inverse(n, p));
            if (distance(space.metric(), p, q) > tol)
                throw std::invalid_argument(seq.name() + ": inverse round-trip fails at n=" +
                                            std::to_string(n) + ", x=" + to_string(p));
        }
    }
}

OrbitTable::OrbitTable(SeqPtr seq, SpacePtr space, int horizon, bool bilateral,
                       std::vector<double> fwd, std::vector<double> bwd,
                       std::vector<int> escape_fwd, std::vector<int> escape_bwd)
    : seq_(std::move(seq)), space_(std::move(space)), horizon_(horizon),
      bilateral_(bilateral), dim_(space_->dimension()), fwd_(std::move(fwd)),
      bwd_(std::move(bwd)), escape_fwd_(std::move(escape_fwd)),
      escape_bwd_(std::move(escape_bwd)) {}

Point OrbitTable::forward(std::size_t p, int i) const {
    const std::size_t base = (p * static_cast<std::size_t>(horizon_ + 1) +
                              static_cast<std::size_t>(i)) * dim_;
    Point out = Point::zeros(dim_);
    for (std::size_t d = 0; d < dim_; ++d) out[d] = fwd_[base + d];
    return out;
}

Point OrbitTable::backward(std::size_t p, int i) const {
    const std::size_t base = (p * static_cast<std::size_t>(horizon_) +
                              static_cast<std::size_t>(i - 1)) * dim_;
    Point out = Point::zeros(dim_);
    for (std::size_t d = 0; d < dim_; ++d) out[d] = bwd_[base + d];
    return out;
}

OrbitTable build_orbit_table(SeqPtr seq, SpacePtr space, int horizon, bool bilateral,
                             int workers) {
    if (horizon < 1) throw std::invalid_argument("build_orbit_table: horizon must be >= 1");
    if (bilateral && !seq->invertible())
        throw std::invalid_argument("build_orbit_table: bilateral table needs an inverse rule");
    if (seq->dimension() != static_cast<int>(space->dimension()))
        throw std::invalid_argument("build_orbit_table: sequence/space dimension mismatch");

    const std::size_t n = space->size();
    const std::size_t dim = space->dimension();
    const auto cols_f = static_cast<std::size_t>(horizon + 1);
    const auto cols_b = static_cast<std::size_t>(horizon);

    std::vector<double> fwd(n * cols_f * dim);
    std::vector<double> bwd(bilateral ? n * cols_b * dim : 0);
    std::vector<int> esc_f(n, horizon + 1);
    std::vector<int> esc_b(n, horizon + 1);

    const MapSequence& sq = *seq;
    const SampledSpace& sp = *space;

    parallel_for(n, [&](std::size_t p) {
        Point x = sp.point(p);
        for (int i = 0; i <= horizon; ++i) {
            if (i > 0) x = sq.apply(i, x);
            const std::size_t base = (p * cols_f + static_cast<std::size_t>(i)) * dim;
            for (std::size_t d = 0; d < dim; ++d) fwd[base + d] = x[d];
            if (esc_f[p] > horizon && !sp.contains(x)) esc_f[p] = i;
        }
        if (bilateral) {
            for (int i = 1; i <= horizon; ++i) {
                const Point y = compose_inverse(sq, i, sp.point(p));
                const std::size_t base = (p * cols_b + static_cast<std::size_t>(i - 1)) * dim;
                for (std::size_t d = 0; d < dim; ++d) bwd[base + d] = y[d];
                if (esc_b[p] > horizon && !sp.contains(y)) esc_b[p] = i;
            }
        }
    }, workers);

    return OrbitTable(std::move(seq), std::move(space), horizon, bilateral,
                      std::move(fwd), std::move(bwd), std::move(esc_f), std::move(esc_b));
}

OrbitRow orbit_of(const OrbitTable& table, const Point& start) {
    const SampledSpace& sp = table.space();
    const MapSequence& sq = table.sequence();
    const int N = table.horizon();
    OrbitRow row;
    row.forward.reserve(N + 1);
    row.escape_forward = N + 1;
    row.escape_backward = N + 1;

    if (auto idx = sp.locate(start, 1e-12)) {
        for (int i = 0; i <= N; ++i) row.forward.push_back(table.forward(*idx, i));
        row.escape_forward = table.escape_forward(*idx);
        if (table.bilateral()) {
            row.backward.reserve(N);
            for (int i = 1; i <= N; ++i) row.backward.push_back(table.backward(*idx, i));
            row.escape_backward = table.escape_backward(*idx);
        }
        return row;
    }

    Point x = start;
    for (int i = 0; i <= N; ++i) {
        if (i > 0) x = sq.apply(i, x);
        row.forward.push_back(x);
        if (row.escape_forward > N && !sp.contains(x)) row.escape_forward = i;
    }
    if (table.bilateral()) {
        row.backward.reserve(N);
        for (int i = 1; i <= N; ++i) {
            const Point y = compose_inverse(sq, i, start);
            row.backward.push_back(y);
            if (row.escape_backward > N && !sp.contains(y)) row.escape_backward = i;
        }
    }
    return row;
}

} // namespace expanso
