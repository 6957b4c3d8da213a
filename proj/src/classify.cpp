#include "expanso/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "expanso/parallel.hpp"

namespace expanso {

std::vector<std::uint32_t> sample_centers(const SampledSpace& space, std::size_t max_centers,
                                          const PointSet* mask) {
    std::vector<std::uint32_t> out;
    if (mask) {
        const auto& idx = mask->indices;
        const std::size_t stride = std::max<std::size_t>(1, idx.size() / max_centers);
        for (std::size_t i = 0; i < idx.size(); i += stride) out.push_back(idx[i]);
    } else {
        const std::size_t n = space.size();
        const std::size_t stride = std::max<std::size_t>(1, n / max_centers);
        for (std::size_t i = 0; i < n; i += stride)
            out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

namespace {

struct CardinalityAnalysis {
    std::optional<int> n;
    bool aleph0 = false;
    ScalingEvidence evidence;
    std::size_t witness_center = 0; // index attaining the max base cardinality
    std::size_t truncated = 0;
};

CardinalityAnalysis analyze_cardinality(const OrbitTable& table, double c,
                                        const ClassifyParams& params) {
    const SampledSpace& sp = table.space();
    const bool bilateral = table.bilateral();
    const auto centers = sample_centers(sp, params.max_centers, params.mask);

    CardinalityAnalysis res;
    std::size_t max_card = 0;
    std::vector<std::size_t> cards(centers.size());
    parallel_for(centers.size(), [&](std::size_t k) {
        const DynamicalBall ball =
            dynamical_ball(table, sp.point(centers[k]), c, bilateral, params.mask);
        cards[k] = ball.members.indices.size();
    }, params.workers);
    for (std::size_t k = 0; k < centers.size(); ++k) {
        if (cards[k] > max_card) {
            max_card = cards[k];
            res.witness_center = centers[k];
        }
        if (table.escape_forward(centers[k]) <= table.horizon() ||
            (bilateral && table.escape_backward(centers[k]) <= table.horizon()))
            ++res.truncated;
    }

    if (sp.flags().countable_model) {
        // The model itself is countable; cardinality needs no refinement proxy.
        res.evidence.spacings = {sp.spacing()};
        res.evidence.cardinalities = {max_card};
        res.evidence.growth_exponent = 0.0;
        res.aleph0 = true;
        res.n = static_cast<int>(max_card);
        return res;
    }

    std::vector<Point> center_pts;
    center_pts.reserve(centers.size());
    for (auto idx : centers) center_pts.push_back(sp.point(idx));
    res.evidence = ball_scaling(table.sequence(), sp, center_pts, c, params.refinements,
                                table.horizon(), bilateral);
    res.aleph0 = res.evidence.growth_exponent < params.growth_threshold;
    if (res.aleph0) res.n = static_cast<int>(res.evidence.cardinalities.front());
    return res;
}

} // namespace

std::optional<int> classify_n_expansive(const OrbitTable& table, double c,
                                        const ClassifyParams& params,
                                        ScalingEvidence* evidence_out,
                                        std::size_t* witness_center) {
    if (c <= 0.0) throw std::invalid_argument("classify_n_expansive: c must be > 0");
    auto res = analyze_cardinality(table, c, params);
    if (evidence_out) *evidence_out = res.evidence;
    if (witness_center) *witness_center = res.witness_center;
    return res.n;
}

bool classify_aleph0(const MapSequence& seq, const SampledSpace& space, double c,
                     const ClassifyParams& params, int horizon, bool bilateral,
                     ScalingEvidence* evidence_out) {
    if (space.flags().countable_model) {
        if (evidence_out) {
            evidence_out->spacings = {space.spacing()};
            evidence_out->cardinalities = {1};
            evidence_out->growth_exponent = 0.0;
        }
        return true;
    }
    const auto center_idx = sample_centers(space, params.max_centers, params.mask);
    std::vector<Point> centers;
    centers.reserve(center_idx.size());
    for (auto i : center_idx) centers.push_back(space.point(i));
    const ScalingEvidence ev =
        ball_scaling(seq, space, centers, c, params.refinements, horizon, bilateral);
    if (evidence_out) *evidence_out = ev;
    return ev.growth_exponent < params.growth_threshold;
}

std::vector<std::uint32_t> interior_at_resolution(const SampledSpace& space,
                                                  const std::vector<std::uint32_t>& members,
                                                  int multiplier) {
    if (space.flags().has_isolated_points) return members; // discrete topology

    std::vector<char> in_set(space.size(), 0);
    for (auto m : members) in_set[m] = 1;

    const double reach = multiplier * space.spacing() + kBallTol;
    const auto& axes = space.axes();
    const std::size_t dim = axes.size();

    std::vector<std::uint32_t> interior;
    int lo[kMaxDim], hi[kMaxDim], cur[kMaxDim], multi[kMaxDim], wrapped[kMaxDim];
    for (auto m : members) {
        space.multi_index(m, multi);
        const Point py = space.point(m);
        bool ok = true;
        for (std::size_t d = 0; d < dim; ++d) {
            int rad = static_cast<int>(std::floor(reach / axes[d].step));
            if (axes[d].wrap) {
                rad = std::min(rad, axes[d].count / 2);
                lo[d] = multi[d] - rad;
                hi[d] = multi[d] + rad;
            } else {
                lo[d] = std::max(0, multi[d] - rad);
                hi[d] = std::min(axes[d].count - 1, multi[d] + rad);
            }
            cur[d] = lo[d];
        }
        while (ok) {
            for (std::size_t d = 0; d < dim; ++d) {
                wrapped[d] = cur[d];
                if (axes[d].wrap)
                    wrapped[d] = ((wrapped[d] % axes[d].count) + axes[d].count) % axes[d].count;
            }
            const std::size_t idx = space.flat_index(wrapped);
            if (!in_set[idx] && distance(space.metric(), py, space.point(idx)) <= reach)
                ok = false;
            std::size_t d = dim;
            bool done = true;
            while (d-- > 0) {
                if (++cur[d] <= hi[d]) {
                    done = false;
                    break;
                }
                cur[d] = lo[d];
            }
            if (done) break;
        }
        if (ok) interior.push_back(m);
    }
    return interior;
}

bool classify_meagre(const OrbitTable& table, double c, const ClassifyParams& params,
                     std::string* witness) {
    if (c <= 0.0) throw std::invalid_argument("classify_meagre: c must be > 0");
    const SampledSpace& sp = table.space();
    const auto centers = sample_centers(sp, params.max_centers, params.mask);
    for (auto ci : centers) {
        const DynamicalBall ball =
            dynamical_ball(table, sp.point(ci), c, table.bilateral(), params.mask);
        const auto interior =
            interior_at_resolution(sp, ball.members.indices, params.interior_multiplier);
        if (!interior.empty()) {
            if (witness) {
                *witness = "center=" + to_string(sp.point(ci)) +
                           " interior_point=" + to_string(sp.point(interior.front()));
            }
            return false;
        }
    }
    return true;
}

std::vector<std::vector<std::uint32_t>> generate_continua(const SampledSpace& space,
                                                          std::uint64_t seed,
                                                          std::size_t random_blobs) {
    const auto& axes = space.axes();
    const std::size_t dim = axes.size();
    std::vector<std::vector<std::uint32_t>> out;

    // Axis-aligned segments of a few lengths; these include the degenerate
    // directions a random sample could miss.
    int multi[kMaxDim];
    for (std::size_t d = 0; d < dim; ++d) {
        for (int len : {2, 4, 8}) {
            if (axes[d].count < len) continue;
            const std::size_t anchors = 8;
            const std::size_t stride = std::max<std::size_t>(1, space.size() / anchors);
            for (std::size_t a = 0; a < space.size(); a += stride) {
                space.multi_index(a, multi);
                std::vector<std::uint32_t> seg;
                for (int s = 0; s < len; ++s) {
                    int m2[kMaxDim];
                    std::copy(multi, multi + dim, m2);
                    int idx = multi[d] + s;
                    if (axes[d].wrap) idx %= axes[d].count;
                    else if (idx >= axes[d].count) break;
                    m2[d] = idx;
                    seg.push_back(static_cast<std::uint32_t>(space.flat_index(m2)));
                }
                if (seg.size() >= 2) {
                    std::sort(seg.begin(), seg.end());
                    seg.erase(std::unique(seg.begin(), seg.end()), seg.end());
                    if (seg.size() >= 2) out.push_back(std::move(seg));
                }
            }
        }
    }

    // Seeded random epsilon-connected blobs (axis and two-axis diagonal moves
    // both stay within the 1.5*spacing adjacency).
    CounterRng rng = CounterRng(seed).split("continuum-blobs");
    for (std::size_t b = 0; b < random_blobs; ++b) {
        CounterRng r = rng.split(b);
        std::size_t start = r.next_index(space.size());
        space.multi_index(start, multi);
        const std::size_t target = 2 + r.next_index(7);
        std::vector<std::uint32_t> blob{static_cast<std::uint32_t>(start)};
        int cur[kMaxDim];
        std::copy(multi, multi + dim, cur);
        for (std::size_t s = 0; s < 4 * target && blob.size() < target; ++s) {
            int m2[kMaxDim];
            std::copy(cur, cur + dim, m2);
            const bool diagonal = dim >= 2 && r.next_index(5) == 0;
            const std::size_t naxes = diagonal ? 2 : 1;
            bool valid = true;
            std::size_t prev_axis = dim;
            for (std::size_t k = 0; k < naxes; ++k) {
                std::size_t d = r.next_index(dim);
                if (d == prev_axis) d = (d + 1) % dim;
                prev_axis = d;
                const int dir = r.next_index(2) == 0 ? -1 : 1;
                int idx = m2[d] + dir;
                if (axes[d].wrap) idx = ((idx % axes[d].count) + axes[d].count) % axes[d].count;
                else if (idx < 0 || idx >= axes[d].count) { valid = false; break; }
                m2[d] = idx;
            }
            if (!valid) continue;
            std::copy(m2, m2 + dim, cur);
            blob.push_back(static_cast<std::uint32_t>(space.flat_index(m2)));
        }
        std::sort(blob.begin(), blob.end());
        blob.erase(std::unique(blob.begin(), blob.end()), blob.end());
        if (blob.size() >= 2) out.push_back(std::move(blob));
    }
    return out;
}

bool classify_cw(const OrbitTable& table, double c,
                 const std::vector<std::vector<std::uint32_t>>& continua,
                 std::string* witness) {
    const SampledSpace& sp = table.space();
    if (sp.flags().has_isolated_points)
        throw std::invalid_argument("classify_cw: space has isolated points, "
                                    "no non-degenerate subcontinua exist");
    const int N = table.horizon();
    for (const auto& cont : continua) {
        bool expanded = false;
        for (int n = 0; n <= N && !expanded; ++n) {
            double diam = 0.0;
            for (std::size_t i = 0; i < cont.size() && !expanded; ++i) {
                if (table.escape_forward(cont[i]) <= n) continue;
                const Point pi = table.forward(cont[i], n);
                for (std::size_t j = i + 1; j < cont.size(); ++j) {
                    if (table.escape_forward(cont[j]) <= n) continue;
                    diam = std::max(diam, distance(sp.metric(), pi, table.forward(cont[j], n)));
                    if (diam > c) { expanded = true; break; }
                }
            }
        }
        if (!expanded) {
            if (witness) {
                *witness = "continuum{" + to_string(sp.point(cont.front())) + "..+" +
                           std::to_string(cont.size() - 1) + "pts} never exceeds diameter " +
                           std::to_string(c);
            }
            return false;
        }
    }
    return true;
}

bool classify_cw(const OrbitTable& table, double c, const ClassifyParams& params,
                 std::string* witness) {
    return classify_cw(table, c, generate_continua(table.space(), params.seed), witness);
}

GeneratorCover generator_check(const OrbitTable& table, double cover_radius,
                               std::size_t num_sequences, int seq_length,
                               std::uint64_t seed) {
    const SampledSpace& sp = table.space();
    if (!table.bilateral())
        throw std::invalid_argument("generator_check: needs a bilateral table");
    if (!sp.flags().compact)
        throw std::invalid_argument("generator_check: space is not flagged compact");
    if (seq_length > table.horizon())
        throw std::invalid_argument("generator_check: seq_length exceeds table horizon");
    if (cover_radius <= 0.0)
        throw std::invalid_argument("generator_check: cover_radius must be > 0");

    GeneratorCover cover;
    cover.radius = cover_radius;
    cover.sequences_tested = num_sequences;

    // Greedy radius-net: every grid point ends up within cover_radius of a
    // net center, so the closed balls form a finite cover.
    std::vector<Point> net_pts;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const Point p = sp.point(i);
        bool covered = false;
        for (const Point& q : net_pts) {
            if (distance(sp.metric(), p, q) <= cover_radius) { covered = true; break; }
        }
        if (!covered) {
            cover.centers.push_back(static_cast<std::uint32_t>(i));
            net_pts.push_back(p);
        }
    }

    const double bound = cover_radius + kBallTol;
    const int L = seq_length;

    auto orbit_value = [&](std::size_t p, int m) {
        return m >= 0 ? table.forward(p, m) : table.backward(p, -m);
    };
    auto index_escaped = [&](std::size_t p, int m) {
        return m >= 0 ? table.escape_forward(p) <= m : table.escape_backward(p) <= -m;
    };

    std::vector<std::size_t> per_seq(num_sequences, 0);
    const CounterRng root = CounterRng(seed).split("generator-bisequences");
    parallel_for(num_sequences, [&](std::size_t s) {
        CounterRng r = root.split(s);
        const std::size_t anchor = r.next_index(sp.size());

        // Realizable bisequence: each B_m is a cover ball containing the
        // anchor's orbit value at index m (nearest center when none does).
        std::vector<std::uint32_t> picked(2 * L + 1);
        for (int m = -L; m <= L; ++m) {
            const Point v = orbit_value(anchor, m);
            std::vector<std::uint32_t> containing;
            double best = 0.0;
            std::uint32_t nearest = cover.centers.front();
            bool first = true;
            for (std::uint32_t cidx : cover.centers) {
                const double d = distance(sp.metric(), v, sp.point(cidx));
                if (d <= bound) containing.push_back(cidx);
                if (first || d < best) { best = d; nearest = cidx; first = false; }
            }
            picked[static_cast<std::size_t>(m + L)] =
                containing.empty() ? nearest
                                   : containing[r.next_index(containing.size())];
        }

        // Count grid points in the intersection of preimages of the closed
        // cover balls; candidates must at least lie in the m=0 ball.
        const Point b0 = sp.point(picked[static_cast<std::size_t>(L)]);
        std::size_t card = 0;
        for (std::size_t y = 0; y < sp.size(); ++y) {
            if (distance(sp.metric(), sp.point(y), b0) > bound) continue;
            bool inside = true;
            for (int m = -L; m <= L && inside; ++m) {
                if (m == 0) continue;
                if (index_escaped(y, m)) { inside = false; break; }
                const Point center_m = sp.point(picked[static_cast<std::size_t>(m + L)]);
                if (distance(sp.metric(), orbit_value(y, m), center_m) > bound) inside = false;
            }
            if (inside) ++card;
        }
        per_seq[s] = card;
    });

    for (std::size_t c : per_seq)
        cover.max_intersection_cardinality = std::max(cover.max_intersection_cardinality, c);
    return cover;
}

double default_fixtol(const SampledSpace& space) {
    return std::max(1e-9, space.spacing() * 1e-3);
}

PointSet fixed_points(const OrbitTable& table, double fixtol) {
    const SampledSpace& sp = table.space();
    if (fixtol <= 0.0) fixtol = default_fixtol(sp);
    std::vector<std::uint32_t> out;
    for (std::size_t p = 0; p < sp.size(); ++p) {
        const Point x = sp.point(p);
        bool fixed = true;
        for (int n = 1; n <= table.horizon(); ++n) {
            if (distance(sp.metric(), table.forward(p, n), x) > fixtol) { fixed = false; break; }
        }
        if (fixed) out.push_back(static_cast<std::uint32_t>(p));
    }
    return PointSet{table.space_ptr(), std::move(out)};
}

PointSet periodic_points(const OrbitTable& table, int kmax, double fixtol) {
    const SampledSpace& sp = table.space();
    if (kmax < 1) throw std::invalid_argument("periodic_points: kmax must be >= 1");
    if (fixtol <= 0.0) fixtol = default_fixtol(sp);
    const int nmax = table.horizon() / kmax;
    std::vector<std::uint32_t> out;
    for (std::size_t p = 0; p < sp.size(); ++p) {
        const Point x = sp.point(p);
        bool periodic = false;
        for (int n = 1; n <= nmax && !periodic; ++n) {
            bool all = true;
            for (int k = 1; k <= kmax; ++k) {
                if (distance(sp.metric(), table.forward(p, n * k), x) > fixtol) { all = false; break; }
            }
            periodic = all;
        }
        if (periodic) out.push_back(static_cast<std::uint32_t>(p));
    }
    return PointSet{table.space_ptr(), std::move(out)};
}

PointSet stable_points(const OrbitTable& table, const std::vector<double>& eps_list) {
    const SampledSpace& sp = table.space();
    const int N = table.horizon();
    // The epsilon-prime ladder {spacing*2^j} is decided by its smallest rung:
    // a larger input radius only adds constraints. So x is stable-at-resolution
    // iff its spacing-neighbours already obey the orbit inequality.
    const double eps_prime = sp.spacing() + kBallTol;

    std::vector<std::uint32_t> out;
    for (std::size_t p = 0; p < sp.size(); ++p) {
        const Point x = sp.point(p);
        bool stable = true;
        for (double eps : eps_list) {
            if (sp.spacing() > eps + kBallTol) { stable = false; break; } // no valid ladder rung
            for (std::size_t q = 0; q < sp.size() && stable; ++q) {
                if (q == p) continue;
                if (distance(sp.metric(), x, sp.point(q)) > eps_prime) continue;
                const int nf = std::min({N, table.escape_forward(p) - 1,
                                         table.escape_forward(static_cast<std::size_t>(q)) - 1});
                for (int i = 0; i <= nf; ++i) {
                    if (distance(sp.metric(), table.forward(p, i), table.forward(q, i)) >
                        eps + kBallTol) { stable = false; break; }
                }
                if (stable && table.bilateral()) {
                    const int nb = std::min({N, table.escape_backward(p) - 1,
                                             table.escape_backward(static_cast<std::size_t>(q)) - 1});
                    for (int i = 1; i <= nb; ++i) {
                        if (distance(sp.metric(), table.backward(p, i), table.backward(q, i)) >
                            eps + kBallTol) { stable = false; break; }
                    }
                }
            }
            if (!stable) break;
        }
        if (stable) out.push_back(static_cast<std::uint32_t>(p));
    }
    return PointSet{table.space_ptr(), std::move(out)};
}

namespace {

PointSet limit_set(const OrbitTable& table, const Point& x, double tol, bool backward) {
    const SampledSpace& sp = table.space();
    if (tol <= 0.0) tol = 2.0 * sp.spacing();
    if (backward && !table.bilateral())
        throw std::invalid_argument("alpha_limit: needs a bilateral table");
    const int N = table.horizon();
    const int lo = (N + 1) / 2;

    const OrbitRow row = orbit_of(table, x);
    std::vector<int> hits(sp.size(), 0);
    for (int i = lo; i <= N; ++i) {
        if (backward) {
            if (row.escape_backward <= i) continue;
        } else {
            if (row.escape_forward <= i) continue;
        }
        const Point v = backward ? row.backward[static_cast<std::size_t>(i - 1)]
                                 : row.forward[static_cast<std::size_t>(i)];
        for (std::size_t q = 0; q < sp.size(); ++q) {
            if (distance(sp.metric(), v, sp.point(q)) <= tol + kBallTol) ++hits[q];
        }
    }
    std::vector<std::uint32_t> out;
    for (std::size_t q = 0; q < sp.size(); ++q)
        if (hits[q] >= 3) out.push_back(static_cast<std::uint32_t>(q));
    return PointSet{table.space_ptr(), std::move(out)};
}

double set_diameter(const SampledSpace& sp, const std::vector<std::uint32_t>& idx) {
    double d = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const Point pi = sp.point(idx[i]);
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            d = std::max(d, distance(sp.metric(), pi, sp.point(idx[j])));
    }
    return d;
}

} // namespace

PointSet omega_limit(const OrbitTable& table, const Point& x, double tol) {
    return limit_set(table, x, tol, false);
}

PointSet alpha_limit(const OrbitTable& table, const Point& x, double tol) {
    return limit_set(table, x, tol, true);
}

PointSet converging_semiorbits(const OrbitTable& table, double tol) {
    const SampledSpace& sp = table.space();
    if (!table.bilateral())
        throw std::invalid_argument("converging_semiorbits: needs a bilateral table");
    if (tol <= 0.0) tol = 2.0 * sp.spacing();
    // A limit set computed with tolerance tol spreads over up to 2*tol; the
    // singleton-cluster test uses that as its diameter bound.
    const double cluster = 2.0 * tol + kBallTol;

    std::vector<std::uint32_t> out;
    for (std::size_t p = 0; p < sp.size(); ++p) {
        const Point x = sp.point(p);
        const PointSet om = omega_limit(table, x, tol);
        if (om.indices.empty() || set_diameter(sp, om.indices) > cluster) continue;
        const PointSet al = alpha_limit(table, x, tol);
        if (al.indices.empty() || set_diameter(sp, al.indices) > cluster) continue;
        out.push_back(static_cast<std::uint32_t>(p));
    }
    return PointSet{table.space_ptr(), std::move(out)};
}

std::map<std::uint32_t, double> measure_check(const OrbitTable& table, double c,
                                              const ClassifyParams& params) {
    const SampledSpace& sp = table.space();
    const auto centers = sample_centers(sp, params.max_centers, params.mask);
    std::map<std::uint32_t, double> out;
    for (auto ci : centers) {
        const DynamicalBall ball =
            dynamical_ball(table, sp.point(ci), c, table.bilateral(), params.mask);
        const auto interior =
            interior_at_resolution(sp, ball.members.indices, params.interior_multiplier);
        out[ci] = static_cast<double>(interior.size()) / static_cast<double>(sp.size());
    }
    return out;
}

ClassificationReport classify_report(const OrbitTable& table, double c,
                                     const ClassifyParams& params) {
    const SampledSpace& sp = table.space();
    ClassificationReport rep;
    rep.system = table.sequence().name();
    rep.space = sp.describe();
    rep.c = c;
    rep.horizon = table.horizon();
    rep.bilateral = table.bilateral();

    const auto analysis = analyze_cardinality(table, c, params);
    rep.verdicts.n_expansive = analysis.n;
    rep.verdicts.aleph0_proxy = analysis.aleph0;
    rep.scaling = analysis.evidence;
    rep.centers_sampled = sample_centers(sp, params.max_centers, params.mask).size();
    rep.truncated_centers = analysis.truncated;
    if (analysis.truncated > 0) {
        rep.notes.push_back(std::to_string(analysis.truncated) +
                            " center(s) escaped the window before the horizon; "
                            "their balls use the truncated horizon");
    }

    rep.verdicts.meagre_expansive = classify_meagre(table, c, params, &rep.meagre_witness);
    for (const auto& [center, mu] : measure_check(table, c, params))
        rep.max_interior_measure = std::max(rep.max_interior_measure, mu);

    if (sp.flags().locally_connected && !sp.flags().has_isolated_points) {
        rep.verdicts.cw_expansive = classify_cw(table, c, params, &rep.cw_witness);
    } else {
        rep.notes.push_back("cw test skipped: space lacks non-degenerate subcontinua");
    }
    return rep;
}

} // namespace expanso
