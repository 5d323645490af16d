#include "hypvol/schottky.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace hypvol;

namespace {

ValidationFailure failure_of(const SchottkyData& data) {
    try {
        validate(data);
    } catch (const ValidationError& e) {
        return e.kind();
    }
    FAIL("expected a validation failure");
    return ValidationFailure::malformed;
}

std::size_t word_count(std::size_t g, int max_len) {
    std::size_t total = 1, level = 2 * g;
    for (int k = 1; k <= max_len; ++k) {
        total += level;
        level *= 2 * g - 1;
    }
    return total;
}

}  // namespace

TEST_CASE("cyclic example validates") {
    const Mobius m = Mobius::real(std::cosh(1.0), std::sinh(1.0), std::sinh(1.0), std::cosh(1.0));
    const Circle left{-1.0 / std::tanh(1.0), 1.0 / std::sinh(1.0)};
    const Circle right{1.0 / std::tanh(1.0), 1.0 / std::sinh(1.0)};
    const ValidatedGroup g = validate({{left, right}, {{0, 1, m}}, true});
    CHECK(g.genus() == 1);
    CHECK(g.fuchsian());

    CHECK(failure_of({{left, right}, {{0, 1, Mobius::identity()}}, true}) == ValidationFailure::exterior_to_exterior);
}

TEST_CASE("overlapping disks name the pair") {
    SchottkyData data{{{-1.0, 1.5}, {1.0, 1.5}}, {}, true};
    data.pairings.push_back({0, 1, standard_pairing(data.circles[0], data.circles[1])});
    try {
        validate(data);
        FAIL("expected overlap");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ValidationFailure::overlapping_disks);
        CHECK(e.circles() == std::vector<std::size_t>{0, 1});
    }
}

TEST_CASE("structural failures") {
    SchottkyData base = testing::four_circles(true);

    SchottkyData self = base;
    self.pairings[0].target = 0;
    CHECK(failure_of(self) == ValidationFailure::self_paired);

    SchottkyData twice = base;
    twice.pairings[1] = {0, 3, standard_pairing(base.circles[0], base.circles[3])};
    const ValidationFailure kind = failure_of(twice);
    CHECK((kind == ValidationFailure::multiply_paired || kind == ValidationFailure::unpaired_circle));

    SchottkyData radius = base;
    radius.circles[2].radius = 0.0;
    CHECK(failure_of(radius) == ValidationFailure::nonpositive_radius);

    SchottkyData wrong = base;
    wrong.pairings[0].map = standard_pairing(base.circles[0], Circle{1.0, 0.3});
    CHECK(failure_of(wrong) == ValidationFailure::circle_not_mapped);

    SchottkyData touching{{{-1.0, 1.0}, {1.0, 1.0}}, {}, true};
    touching.pairings.push_back({0, 1, standard_pairing(touching.circles[0], touching.circles[1])});
    CHECK(failure_of(touching) == ValidationFailure::overlapping_disks);

    SchottkyData odd = base;
    odd.circles.pop_back();
    CHECK(failure_of(odd) == ValidationFailure::malformed);

    SchottkyData complex_center = base;
    complex_center.circles[0].center = Complex(-3.0, 0.5);
    CHECK(failure_of(complex_center) == ValidationFailure::not_fuchsian);
}

TEST_CASE("generator_from_axis") {
    const AxisGenerator gen = generator_from_axis(-1.0, 1.0, 2.0);
    CHECK(gen.map.approx_equal(Mobius::real(std::cosh(1.0), std::sinh(1.0), std::sinh(1.0), std::cosh(1.0)), 1e-12));
    CHECK(gen.source.center.real() == doctest::Approx(-1.0 / std::tanh(1.0)).epsilon(1e-14));
    CHECK(gen.target.center.real() == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-14));
    CHECK(gen.source.radius == doctest::Approx(1.0 / std::sinh(1.0)).epsilon(1e-14));
    CHECK(translation_length(gen.map) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS(generator_from_axis(0.0, BoundaryPoint::infinity(), 1.0));
    CHECK_THROWS(generator_from_axis(1.0, 1.0, 1.0));
    CHECK_THROWS(generator_from_axis(-1.0, 1.0, 0.0));

    for (double s : {0.3, 1.0, 4.0}) {
        const AxisGenerator g = generator_from_axis(-2.0, 5.0, s);
        CHECK_NOTHROW(validate({{g.source, g.target}, {{0, 1, g.map}}, true}));
        const FixedPoints fp = fixed_points(g.map);
        CHECK(fp.attracting.real() == doctest::Approx(5.0));
        CHECK(fp.repelling.real() == doctest::Approx(-2.0));
    }
}

TEST_CASE("word counts") {
    const ValidatedGroup g1 = validate(testing::cyclic(2.0));
    const ValidatedGroup g2 = validate(testing::four_circles(false));
    const ValidatedGroup g3 = validate(testing::six_circles());
    CHECK(enumerate_words(g2, 1).size() == 5);
    CHECK(enumerate_words(g2, 2).size() == 17);
    CHECK(enumerate_words(g1, 3).size() == 7);
    for (const ValidatedGroup* g : {&g1, &g2, &g3}) {
        for (int len = 0; len <= 5; ++len) {
            const auto words = enumerate_words(*g, len);
            CHECK(words.size() == word_count(g->genus(), len));
            for (const Word& w : words) {
                for (std::size_t i = 1; i < w.size(); ++i) {
                    CHECK_FALSE((w[i].generator == w[i - 1].generator && w[i].exponent == -w[i - 1].exponent));
                }
            }
        }
    }
}

TEST_CASE("evaluate multiplies left to right") {
    const ValidatedGroup g = validate(testing::four_circles(true));
    const Mobius a = g.pairings()[0].map, b = g.pairings()[1].map;
    CHECK(evaluate(g, {{0, 1}, {1, -1}}).approx_equal(a * b.inverse(), 1e-9));
    CHECK(evaluate(g, {}).approx_equal(Mobius::identity()));
}

TEST_CASE("limit set sample") {
    const ValidatedGroup cyc = validate(testing::cyclic(2.0));
    const auto points = limit_set_sample(cyc, 6);
    for (const BoundaryPoint& p : points) {
        CHECK(p.is_real(0.0));
        const double x = p.real();
        CHECK(std::min(std::abs(x - 1.0), std::abs(x + 1.0)) < 0.25);
    }

    const ValidatedGroup g2 = validate(testing::four_circles(true));
    const auto shallow = limit_set_sample(g2, 2);
    const auto deep = limit_set_sample(g2, 3);
    for (const BoundaryPoint& p : deep) {
        CHECK(p.is_real(0.0));
    }
    for (const BoundaryPoint& p : shallow) {
        const bool found = std::any_of(deep.begin(), deep.end(),
                                       [&](const BoundaryPoint& q) { return q.chordal_distance(p) <= 1e-11; });
        CHECK(found);
    }
}

TEST_CASE("property: validation is invariant under relabeling and inversion") {
    const SchottkyData base = testing::four_circles(true);
    SchottkyData swapped = base;
    for (Pairing& p : swapped.pairings) {
        p = {p.target, p.source, p.map.inverse()};
    }
    CHECK_NOTHROW(validate(swapped));

    const std::vector<std::size_t> perm{2, 0, 3, 1};
    SchottkyData relabeled = base;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        relabeled.circles[perm[i]] = base.circles[i];
    }
    for (Pairing& p : relabeled.pairings) {
        p.source = perm[p.source];
        p.target = perm[p.target];
    }
    CHECK_NOTHROW(validate(relabeled));
}

TEST_CASE("property: pairings map 32 sample points onto the target circle") {
    for (const SchottkyData& data : {testing::cyclic(1.0), testing::four_circles(false), testing::six_circles()}) {
        const ValidatedGroup g = validate(data);
        for (const Pairing& p : g.pairings()) {
            const Circle& src = g.circles()[p.source];
            const Circle& dst = g.circles()[p.target];
            for (int k = 0; k < 32; ++k) {
                const Complex w = apply_boundary(p.map, src.point_at(2 * std::numbers::pi * k / 32.0)).value();
                CHECK(std::abs(std::abs(w - dst.center) - dst.radius) <= 1e-8 * dst.radius);
            }
        }
    }
}

TEST_CASE("complex Schottky group") {
    SchottkyData data;
    data.circles = {{Complex(-2.0, 0.5), 0.5}, {Complex(2.0, -0.3), 0.7}};
    data.pairings = {{0, 1, standard_pairing(data.circles[0], data.circles[1])}};
    data.fuchsian = false;
    const ValidatedGroup g = validate(data);
    CHECK_FALSE(g.fuchsian());
    CHECK(classify(g.pairings()[0].map) == IsometryClass::hyperbolic);
}

TEST_CASE("conjugating the data keeps it valid") {
    std::mt19937_64 rng(3);
    const SchottkyData base = testing::four_circles(true);
    int accepted = 0;
    for (int k = 0; k < 50 && accepted < 10; ++k) {
        const Mobius m = testing::random_real_mobius(rng);
        SchottkyData moved;
        try {
            moved = conjugate(base, m);
        } catch (const DomainError&) {
            continue;  // some image disk is unbounded
        }
        ++accepted;
        CHECK_NOTHROW(validate(moved));
    }
    CHECK(accepted > 0);
}
