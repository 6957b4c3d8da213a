#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "expanso/rng.hpp"
#include "expanso/space.hpp"

using namespace expanso;

TEST_CASE("circle grid: 64 points, quotient metric bounded by 1/2") {
    const SampledSpace sp = build_grid({{0.0, 1.0}}, 1.0 / 64.0, MetricKind::circle_mod1);
    CHECK(sp.size() == 64);
    CHECK(sp.flags().compact);
    CHECK(sp.flags().locally_connected);
    CHECK(sp.flags().uncountable_model);
    CHECK_FALSE(sp.flags().has_isolated_points);
    for (std::size_t i = 0; i < sp.size(); i += 7) {
        for (std::size_t j = 0; j < sp.size(); j += 5) {
            CHECK(distance(sp.metric(), sp.point(i), sp.point(j)) <= 0.5 + 1e-15);
        }
    }
}

TEST_CASE("window grid point counts") {
    const SampledSpace sp = build_grid({{-5.0, 5.0}}, 0.01, MetricKind::euclidean_window);
    CHECK(sp.size() == 1001);
    CHECK(sp.point(0)[0] == doctest::Approx(-5.0));
    CHECK(sp.point(1000)[0] == doctest::Approx(5.0));
}

TEST_CASE("integer lattice flags and count") {
    const SampledSpace sp = build_grid({{-50.0, 50.0}}, 1.0, MetricKind::integer_lattice);
    CHECK(sp.size() == 101);
    CHECK(sp.flags().countable_model);
    CHECK(sp.flags().has_isolated_points);
    CHECK_FALSE(sp.flags().uncountable_model);
    CHECK(sp.flags().compact); // a windowed lattice is a finite set
}

TEST_CASE("build_grid rejects bad windows") {
    CHECK_THROWS_AS(build_grid({}, 0.1, MetricKind::euclidean_window), std::invalid_argument);
    CHECK_THROWS_AS(build_grid({{0.0, 1.0}}, -0.1, MetricKind::euclidean_window),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_grid({{0.0, 0.5}}, 2.0, MetricKind::euclidean_window),
                    std::invalid_argument);
}

TEST_CASE("refinement keeps old points and multiplies counts") {
    const SampledSpace circle = build_grid({{0.0, 1.0}}, 1.0 / 64.0, MetricKind::circle_mod1);
    const SampledSpace fine = refine(circle, 2);
    CHECK(fine.size() == 128);
    for (std::size_t i = 0; i < circle.size(); ++i) {
        CHECK(fine.locate(circle.point(i), 1e-12).has_value());
    }

    const SampledSpace window = build_grid({{-5.0, 5.0}}, 0.01, MetricKind::euclidean_window);
    const SampledSpace wfine = refine(window, 4);
    CHECK(wfine.size() == 4001);
    CHECK(wfine.spacing() == doctest::Approx(0.0025));
    for (std::size_t i = 0; i < window.size(); i += 97) {
        CHECK(wfine.locate(window.point(i), 1e-12).has_value());
    }
}

TEST_CASE("refine of an integer lattice is rejected") {
    const SampledSpace sp = build_grid({{-50.0, 50.0}}, 1.0, MetricKind::integer_lattice);
    CHECK_THROWS_AS(refine(sp, 2), std::invalid_argument);
}

TEST_CASE("refine composition: factors (p,q) match factor p*q") {
    const SampledSpace sp = build_grid({{-1.0, 1.0}}, 0.1, MetricKind::euclidean_window);
    const SampledSpace a = refine(refine(sp, 2), 3);
    const SampledSpace b = refine(sp, 6);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::fabs(a.point(i)[0] - b.point(i)[0]) <= 1e-12);
    }
}

TEST_CASE("metric examples") {
    const MetricFn circle{MetricKind::circle_mod1, 1, {}};
    CHECK(distance(circle, Point{0.1}, Point{0.9}) == doctest::Approx(0.2));

    MetricFn prod;
    prod.kind = MetricKind::product_max;
    prod.dimension = 2;
    prod.components = {MetricFn{MetricKind::euclidean_window, 1, {}},
                       MetricFn{MetricKind::euclidean_window, 1, {}}};
    CHECK(distance(prod, Point{0.0, 0.0}, Point{3.0, 4.0}) == doctest::Approx(4.0));

    const MetricFn euclid{MetricKind::euclidean_window, 2, {}};
    CHECK(distance(euclid, Point{1.5, -2.0}, Point{1.5, -2.0}) == 0.0);
    CHECK_THROWS_AS(distance(euclid, Point{1.0}, Point{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("triangle inequality on random triples, all metric kinds") {
    CounterRng rng(42);
    const std::vector<SampledSpace> spaces = {
        build_grid({{0.0, 1.0}}, 1.0 / 64.0, MetricKind::circle_mod1),
        build_grid({{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, 1.0 / 8.0, MetricKind::torus_mod1),
        build_grid({{-3.0, 3.0}, {-3.0, 3.0}}, 0.25, MetricKind::euclidean_window),
        build_grid({{-20.0, 20.0}}, 1.0, MetricKind::integer_lattice),
        product_space(build_grid({{0.0, 1.0}}, 1.0 / 16.0, MetricKind::circle_mod1),
                      build_grid({{-2.0, 2.0}}, 0.5, MetricKind::euclidean_window)),
    };
    for (const auto& sp : spaces) {
        for (int t = 0; t < 200; ++t) {
            const Point a = sp.point(rng.next_index(sp.size()));
            const Point b = sp.point(rng.next_index(sp.size()));
            const Point c = sp.point(rng.next_index(sp.size()));
            const auto& m = sp.metric();
            CHECK(distance(m, a, c) <= distance(m, a, b) + distance(m, b, c) + 1e-12);
            CHECK(distance(m, a, b) == doctest::Approx(distance(m, b, a)));
            CHECK(distance(m, a, a) == 0.0);
        }
    }
}

TEST_CASE("torus coordinates wrap and per-coordinate distance stays <= 1/2") {
    const SampledSpace sp =
        build_grid({{0.0, 1.0}, {0.0, 1.0}}, 1.0 / 16.0, MetricKind::torus_mod1);
    CounterRng rng(7);
    for (int t = 0; t < 100; ++t) {
        const Point a = sp.point(rng.next_index(sp.size()));
        const Point b = sp.point(rng.next_index(sp.size()));
        for (std::size_t d = 0; d < 2; ++d) {
            CHECK(wrap_dist(a[d], b[d]) <= 0.5 + 1e-15);
        }
        CHECK(distance(sp.metric(), a, b) <= 0.5 + 1e-15);
    }
    CHECK(wrap01(1.0 - 1e-13) == 0.0); // snap to zero near 1
}

TEST_CASE("net property: distinct grid points sit at least spacing/2 apart") {
    const SampledSpace sp = build_grid({{0.0, 1.0}}, 1.0 / 48.0, MetricKind::circle_mod1);
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const std::size_t j = (i + 1) % sp.size();
        CHECK(distance(sp.metric(), sp.point(i), sp.point(j)) >= sp.spacing() / 2.0);
    }
}

TEST_CASE("locate finds exact grid points and rejects off-grid ones") {
    const SampledSpace sp = build_grid({{-2.0, 2.0}}, 0.25, MetricKind::euclidean_window);
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const auto hit = sp.locate(sp.point(i), 1e-12);
        REQUIRE(hit.has_value());
        CHECK(*hit == i);
    }
    CHECK_FALSE(sp.locate(Point{0.1}, 1e-9).has_value());
    CHECK_FALSE(sp.locate(Point{7.0}, 1e-9).has_value());
}

TEST_CASE("product space combines flags and axes") {
    const SampledSpace line = build_grid({{-1.0, 1.0}}, 0.5, MetricKind::euclidean_window);
    const SampledSpace lat = build_grid({{-3.0, 3.0}}, 1.0, MetricKind::integer_lattice);
    const SampledSpace prod = product_space(line, lat);
    CHECK(prod.dimension() == 2);
    CHECK(prod.size() == line.size() * lat.size());
    CHECK(prod.flags().has_isolated_points);
    CHECK(prod.flags().uncountable_model);
    CHECK_FALSE(prod.flags().countable_model);
}
