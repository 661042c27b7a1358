#include <catch_amalgamated.hpp>

#include "finhor/margin.hpp"
#include "finhor/oracle.hpp"
#include "support/instances.hpp"

using namespace finhor;

namespace {

FrontierSet literal_frontier(std::vector<RateTuple> rates) {
    FrontierSet fs;
    for (auto& r : rates) fs.points.push_back({std::move(r), {}});
    return fs;
}

}  // namespace

TEST_CASE("one-slot margin") {
    auto fs = literal_frontier({{2.0, 0.0}, {0.0, 2.0}, {1.0, 1.0}});
    CHECK(one_slot_margin(fs, {1.0, 1.0}) == Catch::Approx(1.0));
    CHECK(one_slot_margin(fs, {0.5, 0.5}) == Catch::Approx(2.0));

    auto sc = testsupport::two_pair_scenario();
    auto frontier = one_slot_frontier(sc);
    CHECK(one_slot_margin(frontier, {0.3, 0.4}) ==
          Catch::Approx(0.6947636105487732 / 0.4).margin(1e-9));

    SECTION("zero when no frontier point covers all positive components") {
        auto corners = literal_frontier({{2.0, 0.0}, {0.0, 2.0}});
        CHECK(one_slot_margin(corners, {1.0, 1.0}) == 0.0);
    }
    SECTION("rejects non-positive components") {
        CHECK_THROWS_AS(one_slot_margin(fs, {1.0, 0.0}), InputError);
        CHECK_THROWS_AS(one_slot_margin(fs, {-1.0, 1.0}), InputError);
    }
}

TEST_CASE("rate margin reproduces the reference values") {
    auto two = testsupport::two_pair_scenario();
    auto three = testsupport::three_pair_scenario();

    CHECK(rate_margin(two, {0.5, 0.5}, 3).delta == Catch::Approx(1.9046).margin(2e-3));
    CHECK(rate_margin(two, {1.6729, 0.2316}, 3).delta == Catch::Approx(1.0).margin(2e-3));
    CHECK(rate_margin(two, {2.0, 1.2}, 3).delta == Catch::Approx(0.6006).margin(2e-3));
    CHECK(rate_margin(three, {0.5, 0.5, 0.5}, 5).delta == Catch::Approx(1.2554).margin(2e-3));
    CHECK(rate_margin(three, {0.3, 1.0, 1.0}, 5).delta == Catch::Approx(0.9079).margin(2e-3));

    SECTION("achievability flag matches delta") {
        auto a = rate_margin(two, {0.5, 0.5}, 3);
        CHECK(a.achievable);
        auto b = rate_margin(two, {2.0, 1.2}, 3);
        CHECK(!b.achievable);
    }
    SECTION("direction is preserved across iterations") {
        CHECK(rate_margin(three, {0.5, 0.5, 0.5}, 5).direction_spread < 1e-9);
    }
}

TEST_CASE("achievability membership matrix") {
    auto sc = testsupport::two_pair_scenario();
    auto frontier = one_slot_frontier(sc);

    RateTuple mu1 = {0.3, 0.4};
    RateTuple mu2 = {1.08, 1.08};
    RateTuple mu3 = {1.4, 0.6};

    CHECK(is_achievable(sc, frontier, mu1, 1));
    CHECK(is_achievable(sc, frontier, mu1, 2));
    CHECK(is_achievable(sc, frontier, mu1, 3));

    CHECK(!is_achievable(sc, frontier, mu2, 1));
    CHECK(is_achievable(sc, frontier, mu2, 2));
    CHECK(!is_achievable(sc, frontier, mu2, 3));

    CHECK(!is_achievable(sc, frontier, mu3, 1));
    CHECK(!is_achievable(sc, frontier, mu3, 2));
    CHECK(is_achievable(sc, frontier, mu3, 3));
}

TEST_CASE("scale to boundary") {
    auto two = testsupport::two_pair_scenario();
    auto three = testsupport::three_pair_scenario();

    auto b3 = scale_to_boundary(three, {0.5, 0.5, 0.5}, 5);
    for (double r : b3) CHECK(r == Catch::Approx(0.6277).margin(2e-3));

    auto b2 = scale_to_boundary(two, {2.0, 1.2}, 3);
    CHECK(b2[0] == Catch::Approx(1.2012).margin(2e-3));
    CHECK(b2[1] == Catch::Approx(0.7207).margin(2e-3));

    SECTION("boundary points sit at margin one") {
        CHECK(std::abs(rate_margin(three, b3, 5).delta - 1.0) <= 1e-4);
        CHECK(std::abs(rate_margin(two, b2, 3).delta - 1.0) <= 1e-4);
    }
    SECTION("unreachable direction") {
        // strong interference kills joint transmission, so in one slot no
        // action serves both pairs and the margin of any interior
        // direction is zero
        auto hard = two;
        hard.gains[0][1] = hard.gains[1][0] = 5.0;
        hard.validate();
        auto m = rate_margin(hard, {2.0, 2.0}, 1);
        CHECK(m.delta == 0.0);
        CHECK(m.terminal == MarginTerminal::NODE_B);
        CHECK_THROWS_AS(scale_to_boundary(hard, {2.0, 2.0}, 1), BoundaryUndefinedError);
    }
}

TEST_CASE("margin scaling identity") {
    auto sc = testsupport::two_pair_scenario();
    auto frontier = one_slot_frontier(sc);
    for (auto mu : {RateTuple{0.5, 0.5}, RateTuple{1.1, 0.4}, RateTuple{0.2, 0.9}}) {
        double base = rate_margin(sc, frontier, mu, 3).delta;
        for (double c : {0.5, 2.0}) {
            RateTuple scaled(mu.size());
            for (std::size_t n = 0; n < mu.size(); ++n) scaled[n] = c * mu[n];
            double d = rate_margin(sc, frontier, scaled, 3).delta;
            CHECK(d * c == Catch::Approx(base).margin(1e-6));
        }
    }
}

TEST_CASE("iteration count respects the case bound") {
    testsupport::Rng rng(99);
    for (int i = 0; i < 60; ++i) {
        CAPTURE(i);
        auto sc = testsupport::random_small_scenario(rng);
        auto frontier = one_slot_frontier(sc);
        int T = rng.uniform_int(1, 4);
        auto mu = testsupport::random_rate_tuple(rng, frontier, 1.4);
        auto m = rate_margin(sc, frontier, mu, T);
        REQUIRE(!m.per_iteration.empty());
        const auto& first = m.per_iteration[0];
        if (first.solved && first.p_star < T) {
            CHECK(m.iterations <= T - first.p_star + 1);
        } else if (first.solved) {
            CHECK(m.iterations == 1);
        } else if (m.per_iteration.size() >= 2 && m.per_iteration[1].solved) {
            CHECK(m.iterations <= T - m.per_iteration[1].p_star + 2);
        } else {
            CHECK(m.iterations <= 2);
        }
    }
}

TEST_CASE("margin input validation") {
    auto sc = testsupport::two_pair_scenario();
    CHECK_THROWS_AS(rate_margin(sc, {0.5, 0.0}, 3), InputError);
    CHECK_THROWS_AS(rate_margin(sc, {0.5}, 3), InputError);
    CHECK_THROWS_AS(rate_margin(sc, {0.5, 0.5}, 0), InputError);
}
