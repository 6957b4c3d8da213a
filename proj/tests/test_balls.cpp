#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "expanso/balls.hpp"
#include "expanso/catalog.hpp"
#include "expanso/rng.hpp"
#include "test_util.hpp"

using namespace expanso;
using namespace expanso::testutil;

namespace {

struct BallFixture {
    SeqPtr seq;
    SpacePtr space;
    int horizon;
    bool bilateral;
};

BallFixture fixture(const std::string& name, const std::string& recipe = "",
                    int horizon = 0) {
    const CatalogEntry& e = find_entry(name);
    BallFixture f;
    f.seq = std::make_shared<MapSequence>(e.build());
    f.space = std::make_shared<SampledSpace>(build_space(e.recipe(recipe)));
    f.horizon = horizon > 0 ? horizon : e.default_horizon;
    f.bilateral = e.bilateral_default && f.seq->invertible();
    return f;
}

std::vector<std::uint32_t> ball_via_table(const BallFixture& f, const Point& center, double c,
                                          bool bilateral) {
    const OrbitTable t = build_orbit_table(f.seq, f.space, f.horizon, bilateral);
    return dynamical_ball(t, center, c, bilateral).members.indices;
}

} // namespace

TEST_CASE("identity ball is the static metric ball (frozen: 13 of 64)") {
    auto space = std::make_shared<SampledSpace>(
        build_grid({{0.0, 1.0}}, 1.0 / 64.0, MetricKind::circle_mod1));
    auto seq = std::make_shared<MapSequence>(identity_system(1));
    const OrbitTable t = build_orbit_table(seq, space, 10, false);
    const DynamicalBall ball = dynamical_ball(t, Point{0.5}, 0.1, false);
    CHECK(ball.members.indices.size() == 13); // offsets -6..6 at spacing 1/64
    for (auto m : ball.members.indices) {
        const double x = space->point(m)[0];
        CHECK(x >= 0.4 - 1e-12);
        CHECK(x <= 0.6 + 1e-12);
    }
    // oracle agrees exactly
    CHECK(ball.members.indices == oracle_ball(*seq, *space, Point{0.5}, 0.1, 10, false));
}

TEST_CASE("translation lattice ball is a singleton") {
    const BallFixture f = fixture("example3.2", "lattice");
    const auto members = ball_via_table(f, Point{3.0}, 0.5, false);
    REQUIRE(members.size() == 1);
    CHECK(f.space->point(members[0])[0] == doctest::Approx(3.0));
}

TEST_CASE("alternating torus system: arc in the free coordinate, one cell across") {
    const CatalogEntry& e = find_entry("example4.1");
    auto space = std::make_shared<SampledSpace>(
        build_grid({{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, 1.0 / 16.0, MetricKind::torus_mod1));
    auto seq = std::make_shared<MapSequence>(e.build());
    const OrbitTable t = build_orbit_table(seq, space, 10, true);
    const Point center{0.5, 0.25, 0.25};
    const DynamicalBall ball = dynamical_ball(t, center, 0.1, true);
    REQUIRE(!ball.members.indices.empty());
    double theta_extent = 0.0, z_extent = 0.0;
    for (auto a : ball.members.indices) {
        for (auto b : ball.members.indices) {
            const Point pa = space->point(a), pb = space->point(b);
            theta_extent = std::max(theta_extent, wrap_dist(pa[0], pb[0]));
            z_extent = std::max(z_extent,
                                std::max(wrap_dist(pa[1], pb[1]), wrap_dist(pa[2], pb[2])));
        }
    }
    CHECK(theta_extent == doctest::Approx(2.0 / 16.0)); // +-1 cell at delta=0.1
    CHECK(z_extent == 0.0);                             // the expanding factor pins z
    CHECK(ball.members.indices == oracle_ball(*seq, *space, center, 0.1, 10, true));
}

TEST_CASE("oracle equality over random systems, centers and radii") {
    const std::vector<BallFixture> fixtures = {
        fixture("doubling", "", 12),
        fixture("rotation", "", 12),
        fixture("contraction"),
        fixture("interval-square"),
        fixture("example3.2", "lattice"),
        fixture("example3.1", "lattice"),
    };
    CounterRng rng(2026);
    for (const auto& f : fixtures) {
        // keep the oracle cheap: subsampled spaces stay under a few hundred points
        auto small = f;
        if (f.space->size() > 520) {
            const CatalogEntry& e = find_entry(f.seq->name());
            SpaceRecipe r = e.recipe("");
            r.spacing *= 4.0;
            small.space = std::make_shared<SampledSpace>(build_space(r));
        }
        REQUIRE(small.space->size() <= 520);
        for (int t = 0; t < 4; ++t) {
            const Point center = small.space->point(rng.next_index(small.space->size()));
            const double c = 0.05 + 0.55 * rng.next_double();
            for (bool bilateral : {false, true}) {
                if (bilateral && !small.seq->invertible()) continue;
                const auto got = ball_via_table(small, center, c, bilateral);
                const auto want =
                    oracle_ball(*small.seq, *small.space, center, c, small.horizon, bilateral);
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("table path and direct scan path agree") {
    const BallFixture f = fixture("catmap", "coarse");
    CounterRng rng(9);
    for (int t = 0; t < 6; ++t) {
        const Point center = f.space->point(rng.next_index(f.space->size()));
        const double c = 0.05 + 0.3 * rng.next_double();
        const auto via_table = ball_via_table(f, center, c, true);
        const auto direct =
            ball_members_direct(*f.seq, *f.space, center, c, f.horizon, true);
        CHECK(via_table == direct);
    }
}

TEST_CASE("monotone in c, anti-monotone in horizon") {
    const std::vector<BallFixture> fixtures = {fixture("doubling", "", 16),
                                               fixture("catmap", "coarse"),
                                               fixture("interval-square")};
    CounterRng rng(77);
    for (const auto& f : fixtures) {
        const OrbitTable t = build_orbit_table(f.seq, f.space, f.horizon, f.bilateral);
        for (int i = 0; i < 12; ++i) {
            const Point center = f.space->point(rng.next_index(f.space->size()));
            double c1 = 0.02 + 0.4 * rng.next_double();
            double c2 = 0.02 + 0.4 * rng.next_double();
            if (c1 > c2) std::swap(c1, c2);
            const auto small = dynamical_ball(t, center, c1, f.bilateral).members.indices;
            const auto big = dynamical_ball(t, center, c2, f.bilateral).members.indices;
            CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
        for (int i = 0; i < 12; ++i) {
            const Point center = f.space->point(rng.next_index(f.space->size()));
            int n1 = 1 + static_cast<int>(rng.next_index(f.horizon));
            int n2 = 1 + static_cast<int>(rng.next_index(f.horizon));
            if (n1 > n2) std::swap(n1, n2);
            const double c = 0.1 + 0.2 * rng.next_double();
            const auto longer =
                ball_members_direct(*f.seq, *f.space, center, c, n2, f.bilateral);
            const auto shorter =
                ball_members_direct(*f.seq, *f.space, center, c, n1, f.bilateral);
            CHECK(std::includes(shorter.begin(), shorter.end(), longer.begin(), longer.end()));
        }
    }
}

TEST_CASE("bilateral ball is contained in the forward ball") {
    const BallFixture f = fixture("catmap", "coarse");
    const OrbitTable t = build_orbit_table(f.seq, f.space, f.horizon, true);
    CounterRng rng(5);
    for (int i = 0; i < 10; ++i) {
        const Point center = f.space->point(rng.next_index(f.space->size()));
        const double c = 0.05 + 0.3 * rng.next_double();
        const auto fwd = dynamical_ball(t, center, c, false).members.indices;
        const auto bil = dynamical_ball(t, center, c, true).members.indices;
        CHECK(std::includes(fwd.begin(), fwd.end(), bil.begin(), bil.end()));
    }
}

TEST_CASE("isometry sequences: forward ball equals the static metric ball exactly") {
    const BallFixture f = fixture("rotation");
    const OrbitTable t = build_orbit_table(f.seq, f.space, f.horizon, false);
    CounterRng rng(13);
    for (int i = 0; i < 8; ++i) {
        const Point center = f.space->point(rng.next_index(f.space->size()));
        const double c = 0.03 + 0.3 * rng.next_double();
        const auto members = dynamical_ball(t, center, c, false).members.indices;
        std::vector<std::uint32_t> metric_ball;
        for (std::size_t q = 0; q < f.space->size(); ++q) {
            if (distance(f.space->metric(), center, f.space->point(q)) <= c + kBallTol)
                metric_ball.push_back(static_cast<std::uint32_t>(q));
        }
        CHECK(members == metric_ball);
    }
}

TEST_CASE("edge geometries agree with the oracle") {
    SUBCASE("radius covering the whole circle") {
        auto sp = std::make_shared<SampledSpace>(
            build_grid({{0.0, 1.0}}, 1.0 / 7.0, MetricKind::circle_mod1));
        auto seq = std::make_shared<MapSequence>(identity_system(1));
        const OrbitTable t = build_orbit_table(seq, sp, 5, false);
        const auto got = dynamical_ball(t, Point{0.0}, 0.6, false).members.indices;
        CHECK(got.size() == sp->size());
        CHECK(got == oracle_ball(*seq, *sp, Point{0.0}, 0.6, 5, false));
    }
    SUBCASE("odd wrap counts produce no duplicate members") {
        auto sp = std::make_shared<SampledSpace>(
            build_grid({{0.0, 1.0}}, 1.0 / 9.0, MetricKind::circle_mod1));
        auto seq = std::make_shared<MapSequence>(identity_system(1));
        const OrbitTable t = build_orbit_table(seq, sp, 3, false);
        for (double c : {0.23, 0.34, 0.45, 0.49}) {
            const auto got = dynamical_ball(t, sp->point(4), c, false).members.indices;
            CHECK(got == oracle_ball(*seq, *sp, sp->point(4), c, 3, false));
            for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i] > got[i - 1]);
        }
    }
    SUBCASE("product of a rotation and an escaping translation") {
        const SampledSpace circle = build_grid({{0.0, 1.0}}, 1.0 / 16.0, MetricKind::circle_mod1);
        const SampledSpace window =
            build_grid({{-2.0, 2.0}}, 0.25, MetricKind::euclidean_window);
        auto prod = std::make_shared<SampledSpace>(product_space(circle, window));
        auto seq = std::make_shared<MapSequence>(
            product_system(find_entry("rotation").build(), find_entry("example3.2").build()));
        const OrbitTable t = build_orbit_table(seq, prod, 6, false);
        const Point center = prod->point(prod->size() / 2);
        const auto got = dynamical_ball(t, center, 0.3, false).members.indices;
        CHECK(got == oracle_ball(*seq, *prod, center, 0.3, 6, false));
    }
    SUBCASE("off-grid centers compute their own orbit") {
        auto sp = std::make_shared<SampledSpace>(
            build_grid({{0.0, 1.0}}, 1.0 / 64.0, MetricKind::circle_mod1));
        auto seq = std::make_shared<MapSequence>(find_entry("rotation").build());
        const OrbitTable t = build_orbit_table(seq, sp, 10, true);
        const Point off{0.5001};
        const auto got = dynamical_ball(t, off, 0.1, true).members.indices;
        CHECK(got == oracle_ball(*seq, *sp, off, 0.1, 10, true));
    }
}

TEST_CASE("ball errors") {
    const BallFixture f = fixture("doubling");
    const OrbitTable t = build_orbit_table(f.seq, f.space, f.horizon, false);
    CHECK_THROWS_AS(dynamical_ball(t, Point{0.5}, -0.1, false), std::invalid_argument);
    CHECK_THROWS_AS(dynamical_ball(t, Point{0.5}, 0.1, true), std::invalid_argument);

    const BallFixture w = fixture("contraction");
    const OrbitTable tw = build_orbit_table(w.seq, w.space, w.horizon, false);
    CHECK_THROWS_AS(dynamical_ball(tw, Point{5.0}, 0.1, false), std::invalid_argument);
}

TEST_CASE("scaling: translations on the refining window count 101/201/401") {
    const CatalogEntry& e = find_entry("example3.2");
    const MapSequence seq = e.build();
    const SampledSpace space = build_space(e.recipe("window"));
    const ScalingEvidence ev =
        ball_scaling(seq, space, Point{0.0}, 0.5, {2, 4}, 20, false);
    REQUIRE(ev.cardinalities.size() == 3);
    CHECK(ev.cardinalities[0] == 101);
    CHECK(ev.cardinalities[1] == 201);
    CHECK(ev.cardinalities[2] == 401);
    CHECK(ev.growth_exponent > 0.9);
    CHECK(ev.growth_exponent < 1.1);
}

TEST_CASE("scaling: doubling stays a singleton at every refinement") {
    const CatalogEntry& e = find_entry("doubling");
    const MapSequence seq = e.build();
    const SampledSpace space = build_space(e.recipe(""));
    const ScalingEvidence ev =
        ball_scaling(seq, space, space.point(17), 0.2, {2, 4}, 20, false);
    for (auto card : ev.cardinalities) CHECK(card == 1);
    CHECK(ev.growth_exponent == doctest::Approx(0.0));
}

TEST_CASE("scaling: identity ball grows like the space dimension") {
    const MapSequence seq = identity_system(1);
    const SampledSpace space = build_grid({{0.0, 1.0}}, 1.0 / 64.0, MetricKind::circle_mod1);
    const ScalingEvidence ev = ball_scaling(seq, space, Point{0.5}, 0.1, {2, 4}, 10, false);
    CHECK(ev.growth_exponent == doctest::Approx(1.0).epsilon(0.12));

    const MapSequence seq2 = identity_system(2);
    const SampledSpace torus =
        build_grid({{0.0, 1.0}, {0.0, 1.0}}, 1.0 / 32.0, MetricKind::torus_mod1);
    const ScalingEvidence ev2 = ball_scaling(seq2, torus, Point{0.5, 0.5}, 0.1, {2}, 10, false);
    CHECK(ev2.growth_exponent == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("scaling refuses integer lattices") {
    const CatalogEntry& e = find_entry("example3.2");
    const MapSequence seq = e.build();
    const SampledSpace lattice = build_space(e.recipe("lattice"));
    CHECK_THROWS_AS(ball_scaling(seq, lattice, Point{0.0}, 0.5, {2}, 10, false),
                    std::invalid_argument);
}
