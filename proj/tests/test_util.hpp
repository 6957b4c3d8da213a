// Shared helpers for the test suites, including the independent brute-force
// ball oracle. The oracle recomputes every orbit distance from scratch with
// plain map application loops: no orbit tables, no candidate pruning, no code
// shared with the implementation path it checks.
#pragma once

#include <cstdint>
#include <vector>

#include "expanso/rng.hpp"
#include "expanso/space.hpp"
#include "expanso/system.hpp"

namespace expanso::testutil {

inline Point fwd_at(const MapSequence& seq, Point x, int i) {
    for (int n = 1; n <= i; ++n) x = seq.apply(n, x);
    return x;
}

inline Point bwd_at(const MapSequence& seq, Point x, int i) {
    for (int n = i; n >= 1; --n) x = seq.apply_inverse(n, x);
    return x;
}

// First index whose forward orbit value leaves the window; N+1 when none.
inline int oracle_escape_fwd(const MapSequence& seq, const SampledSpace& sp, const Point& x,
                             int N) {
    for (int i = 0; i <= N; ++i)
        if (!sp.contains(fwd_at(seq, x, i))) return i;
    return N + 1;
}

inline int oracle_escape_bwd(const MapSequence& seq, const SampledSpace& sp, const Point& x,
                             int N) {
    for (int i = 1; i <= N; ++i)
        if (!sp.contains(bwd_at(seq, x, i))) return i;
    return N + 1;
}

// Membership per the contract: y is a member iff every orbit distance up to
// the (escape-truncated) horizon stays within c + 1e-12, candidates that
// escape first are disqualified, and a center escaping at i0 truncates the
// horizon to i0 - 1.
inline std::vector<std::uint32_t> oracle_ball(const MapSequence& seq, const SampledSpace& sp,
                                              const Point& center, double c, int N,
                                              bool bilateral) {
    const double bound = c + 1e-12;
    const int nf = std::min(N, oracle_escape_fwd(seq, sp, center, N) - 1);
    const int nb = bilateral ? std::min(N, oracle_escape_bwd(seq, sp, center, N) - 1) : 0;

    std::vector<std::uint32_t> members;
    for (std::size_t q = 0; q < sp.size(); ++q) {
        const Point y = sp.point(q);
        if (oracle_escape_fwd(seq, sp, y, N) <= nf) continue;
        if (bilateral && oracle_escape_bwd(seq, sp, y, N) <= nb) continue;
        bool inside = true;
        for (int i = 0; i <= nf && inside; ++i) {
            if (distance(sp.metric(), fwd_at(seq, center, i), fwd_at(seq, y, i)) > bound)
                inside = false;
        }
        for (int i = 1; bilateral && i <= nb && inside; ++i) {
            if (distance(sp.metric(), bwd_at(seq, center, i), bwd_at(seq, y, i)) > bound)
                inside = false;
        }
        if (inside) members.push_back(static_cast<std::uint32_t>(q));
    }
    return members;
}

inline MapSequence identity_system(int dim) {
    return MapSequence("identity", dim, [](int, const Point& x) { return x; },
                       [](int, const Point& x) { return x; }, true);
}

} // namespace expanso::testutil
