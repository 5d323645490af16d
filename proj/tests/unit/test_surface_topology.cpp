#include "hypvol/surface_topology.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace hypvol;

TEST_CASE("boundary arcs") {
    const auto cyc = boundary_arcs(validate(testing::cyclic(2.0)));
    REQUIRE(cyc.size() == 2);
    CHECK_FALSE(cyc[0].through_infinity);
    CHECK(cyc[1].through_infinity);
    CHECK(cyc[0].start.position == doctest::Approx(-1.0 / std::tanh(1.0) + 1.0 / std::sinh(1.0)));

    const auto four = boundary_arcs(validate(testing::four_circles(false)));
    CHECK(four.size() == 4);
    for (std::size_t i = 0; i + 1 < four.size(); ++i) {
        CHECK(four[i].start.position < four[i].end.position);
        CHECK(four[i].end.position < four[i + 1].start.position);
    }
}

TEST_CASE("cyclic example has two ends of length 2") {
    const ValidatedGroup g = validate(testing::cyclic(2.0));
    const auto cycles = end_cycles(g);
    REQUIRE(cycles.size() == 2);
    for (const EndCycle& c : cycles) {
        CHECK(c.steps.size() == 1);
        CHECK(c.length == doctest::Approx(2.0).epsilon(1e-12));
    }
    const SurfaceInfo s = surface_invariants(g);
    CHECK(s.ends == 2);
    CHECK(s.genus == 0);
    CHECK(s.core_area == 0.0);
}

TEST_CASE("figure dichotomy") {
    const SurfaceInfo adjacent = surface_invariants(validate(testing::four_circles(false)));
    const SurfaceInfo crossed = surface_invariants(validate(testing::four_circles(true)));
    CHECK(adjacent.ends == 3);
    CHECK(adjacent.genus == 0);
    CHECK(crossed.ends == 1);
    CHECK(crossed.genus == 1);
    for (const SurfaceInfo* s : {&adjacent, &crossed}) {
        CHECK(s->handlebody_genus == 2);
        CHECK(2 * s->genus + s->ends - 1 == 2);
        CHECK(s->core_area == doctest::Approx(2 * std::numbers::pi));
        CHECK(std::is_sorted(s->end_lengths.begin(), s->end_lengths.end()));
    }
}

TEST_CASE("cycles partition the arcs") {
    for (const SchottkyData& data : {testing::cyclic(1.0), testing::four_circles(false), testing::four_circles(true),
                                     testing::six_circles()}) {
        const ValidatedGroup g = validate(data);
        std::vector<int> seen(2 * g.genus(), 0);
        for (const EndCycle& c : end_cycles(g)) {
            CHECK(classify(c.holonomy) == IsometryClass::hyperbolic);
            CHECK(c.length == doctest::Approx(translation_length(c.holonomy)));
            for (const CycleStep& step : c.steps) {
                ++seen[step.arc];
            }
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; }));
    }
}

TEST_CASE("make_surface_info") {
    const SurfaceInfo s = make_surface_info(3, {2.0, 1.0});
    CHECK(s.genus == 1);
    CHECK(s.end_lengths == std::vector<double>{1.0, 2.0});
    CHECK(s.total_end_length() == 3.0);
    CHECK_THROWS_AS(make_surface_info(2, {1.0, 1.0}), TopologyError);
    CHECK_THROWS_AS(make_surface_info(1, {1.0, 1.0, 1.0, 1.0}), TopologyError);
}

TEST_CASE("non-Fuchsian groups have no boundary arcs") {
    SchottkyData data;
    data.circles = {{Complex(-2.0, 0.5), 0.5}, {Complex(2.0, -0.3), 0.7}};
    data.pairings = {{0, 1, standard_pairing(data.circles[0], data.circles[1])}};
    data.fuchsian = false;
    CHECK_THROWS_AS(boundary_arcs(validate(data)), DomainError);
}

TEST_CASE("property: cyclic family lengths") {
    for (double s : {0.5, 1.0, 2.0}) {
        const SurfaceInfo info = surface_invariants(validate(testing::cyclic(2 * s)));
        REQUIRE(info.end_lengths.size() == 2);
        CHECK(info.end_lengths[0] == doctest::Approx(2 * s).epsilon(1e-9));
        CHECK(info.end_lengths[1] == doctest::Approx(2 * s).epsilon(1e-9));
    }
}

TEST_CASE("property: end lengths are conjugation invariant") {
    std::mt19937_64 rng(11);
    for (const SchottkyData& data : {testing::four_circles(false), testing::four_circles(true)}) {
        const SurfaceInfo base = surface_invariants(validate(data));
        int done = 0;
        for (int k = 0; k < 200 && done < 5; ++k) {
            SchottkyData moved;
            try {
                moved = conjugate(data, testing::random_real_mobius(rng, 2.0, 2.0));
            } catch (const DomainError&) {
                continue;
            }
            const SurfaceInfo info = surface_invariants(validate(moved));
            ++done;
            CHECK(info.ends == base.ends);
            CHECK(info.genus == base.genus);
            for (std::size_t i = 0; i < info.end_lengths.size(); ++i) {
                INFO("relative error " << std::abs(info.end_lengths[i] / base.end_lengths[i] - 1.0));
                CHECK(info.end_lengths[i] == doctest::Approx(base.end_lengths[i]).epsilon(1e-9));
            }
        }
        CHECK(done == 5);
    }
}

TEST_CASE("property: inverting a pairing leaves the surface unchanged") {
    const SchottkyData data = testing::four_circles(false);
    SchottkyData flipped = data;
    flipped.pairings[1] = {data.pairings[1].target, data.pairings[1].source, data.pairings[1].map.inverse()};
    const SurfaceInfo a = surface_invariants(validate(data));
    const SurfaceInfo b = surface_invariants(validate(flipped));
    CHECK(a.ends == b.ends);
    CHECK(a.genus == b.genus);
    for (std::size_t i = 0; i < a.end_lengths.size(); ++i) {
        CHECK(a.end_lengths[i] == doctest::Approx(b.end_lengths[i]).epsilon(1e-12));
    }
}
