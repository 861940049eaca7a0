#include "gridramsey/bounds.hpp"

#include "gridramsey/grid.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace gridramsey;
using namespace gridramsey::bounds;

TEST_CASE("delta recurrence values") {
    // c=2 on [4]: 1 - 1/3.
    auto seq = delta_sequence(2, Grid({4}));
    CHECK(seq.terms == std::vector<Rat>{Rat(1), Rat(2, 3)});

    // c=2 on [5,5]: positive then negative, so the method is inconclusive.
    auto square = delta_sequence(2, Grid({5, 5}));
    CHECK(square.terms[1] == Rat(3, 4));
    CHECK(square.terms[2] < 0);
    CHECK_FALSE(square.all_positive_after_first());

    // One color: the recurrence fixes at 1, and every box is monochromatic.
    auto trivial = delta_sequence(1, Grid({3, 4}));
    CHECK(trivial.terms == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
    CHECK(guaranteed_count_lower_bound(1, Grid({3, 4})) == Rat(box_count(Grid({3, 4}))));

    CHECK_THROWS_AS(delta_sequence(2, Grid({1, 5})), std::invalid_argument);
}

TEST_CASE("guaranteed count lower bounds") {
    CHECK(guaranteed_count_lower_bound(2, Grid({4})) == Rat(2));
    CHECK(guaranteed_count_lower_bound(2, Grid({5, 5})) == Rat(0));  // no bound
    CHECK(guaranteed_count_lower_bound_ceiling(2, Grid({3})) == 1);  // 3/4 rounded up
    CHECK(guaranteed_count_lower_bound_ceiling(2, Grid({4})) == 2);

    // The integer strengthening rescues [3,7], where the plain form dies.
    CHECK(guaranteed_count_lower_bound(2, Grid({3, 7})) == Rat(0));
    CHECK(guaranteed_count_lower_bound_ceiling(2, Grid({3, 7})) == 1);
}

TEST_CASE("gamma recurrence values") {
    auto seq = gamma_sequence(2, Grid({4}));
    CHECK(seq.terms == std::vector<Rat>{Rat(1), Rat(1, 3)});

    auto big = gamma_sequence(2, Grid({13, 13}));
    CHECK(big.terms[1] == Rat(5, 6));
    CHECK(big.terms[2] == Rat(5, 12));
    CHECK(big.all_positive_after_first());  // certifies [13,13] guaranteed
}

TEST_CASE("gamma is dominated by delta while gamma stays positive") {
    std::mt19937_64 rng(5);
    int positive_instances = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Int c = 1 + rng() % 4;
        const int d = 1 + static_cast<int>(rng() % 3);
        std::vector<Int> dims;
        for (int i = 0; i < d; ++i) {
            // Bias toward sides large enough for positive prefixes.
            dims.push_back(Int(2 + rng() % 40));
        }
        Grid grid(dims);
        const auto gamma = gamma_sequence(c, grid);
        const auto delta = delta_sequence(c, grid);
        bool positive_prefix = true;
        for (std::size_t j = 1; j < gamma.terms.size(); ++j) {
            positive_prefix = positive_prefix && gamma.terms[j] > 0;
            if (!positive_prefix) break;
            CHECK(gamma.terms[j] <= delta.terms[j]);
        }
        if (gamma.all_positive_after_first()) ++positive_instances;
    }
    CHECK(positive_instances > 10);  // the generator must actually hit the regime
}

TEST_CASE("epsilon recurrence values and verdicts") {
    // The epsilon recurrence on [13,13] reaches 2/3 = d/(d+1).
    auto seq = epsilon_sequence(2, Grid({13, 13}));
    CHECK(seq.terms == std::vector<Rat>{Rat(0), Rat(1, 6), Rat(2, 3)});
    CHECK(seq.last() < 1);

    // [3,7] is guaranteed, but epsilon cannot show it.
    auto inconclusive = epsilon_sequence(2, Grid({3, 7}));
    CHECK(inconclusive.last() == Rat(8, 3));
}

TEST_CASE("epsilon terms strictly increase and match the closed form") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Int> dims;
        const int d = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < d; ++i) dims.push_back(Int(2 + rng() % 30));
        const Int c = 1 + rng() % 4;
        const auto seq = epsilon_sequence(c, Grid(dims));
        for (std::size_t j = 1; j < seq.terms.size(); ++j) CHECK(seq.terms[j] > seq.terms[j - 1]);

        // Recurrence total equals sum_i 2^(d-i) * c^(2^(i-1)) / (a_i - 1).
        Rat direct = 0;
        for (int i = 1; i <= d; ++i) {
            direct += Rat(pow2(static_cast<unsigned>(d - i)) *
                              color_power(c, static_cast<unsigned>(i)),
                          dims[static_cast<std::size_t>(i - 1)] - 1);
        }
        CHECK(seq.last() == direct);
    }
}

TEST_CASE("small epsilon forces gamma above 1 - epsilon") {
    std::mt19937_64 rng(23);
    int exercised = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const Int c = 2 + rng() % 3;
        const int d = 1 + static_cast<int>(rng() % 3);
        std::vector<Int> dims;
        for (int j = 1; j <= d; ++j) {
            // Around the construction sizes, where epsilon < 1 is common.
            const Int base = Int(d + 1) * pow2(static_cast<unsigned>(d - j)) *
                             color_power(c, static_cast<unsigned>(j));
            dims.push_back(base + 1 + Int(rng() % 16));
        }
        Grid grid(dims);
        const auto eps = epsilon_sequence(c, grid);
        if (eps.last() >= 1) continue;
        ++exercised;
        const auto gamma = gamma_sequence(c, grid);
        for (std::size_t j = 0; j < eps.terms.size(); ++j) {
            CHECK(eps.terms[j] < 1);
            CHECK(gamma.terms[j] >= 1 - eps.terms[j]);
        }
    }
    CHECK(exercised > 50);
}

TEST_CASE("corollary grid construction") {
    CHECK(corollary_grid(2, 1) == Grid({5}));
    CHECK(corollary_grid(2, 2) == Grid({13, 13}));
    CHECK(corollary_grid(3, 2) == Grid({19, 28}));

    // Epsilon is exactly d/(d+1) on these grids.
    for (int c = 2; c <= 5; ++c) {
        for (int d = 1; d <= 6; ++d) {
            const Grid grid = corollary_grid(c, d);
            CHECK(epsilon_sequence(c, grid).last() == Rat(d, d + 1));
        }
    }
}

TEST_CASE("volume threshold via exact enclosure of e") {
    CHECK(lll_volume_threshold(2, 1) == 0);
    CHECK(lll_volume_threshold(2, 3) == 5);
    CHECK(lll_volume_threshold(10, 2) == 91);
    CHECK(lll_volume_threshold(3, 2) == 2);
    CHECK(lll_volume_threshold(3, 3) == 100);
}

TEST_CASE("hereditary prefix-volume criterion") {
    // d=1 thresholds: [a] passes iff a > c.
    CHECK(hereditary_check(2, Grid({3})));
    CHECK_FALSE(hereditary_check(2, Grid({2})));
    CHECK(hereditary_check(5, Grid({6})));

    // d=2, c=2: second threshold is 512 * 16 = 8192.
    CHECK(hereditary_check(2, Grid({3, 2731})));
    CHECK_FALSE(hereditary_check(2, Grid({3, 2730})));

    const auto steps = hereditary_steps(2, Grid({3, 2731}));
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].threshold == 2);
    CHECK(steps[1].threshold == 8192);

    CHECK_THROWS_AS(hereditary_check(2, Grid({7, 3})), std::invalid_argument);
}

TEST_CASE("virtual color counts") {
    CHECK(virtual_color_count(2, Grid({3, 7}), 1) == 6);
    CHECK(virtual_color_count(2, Grid({3, 7, 127}), 2) == 126);
    CHECK(virtual_color_count(1, Grid({2, 2}), 1) == 1);
    CHECK_THROWS_AS(virtual_color_count(2, Grid({3, 7}), 2), std::invalid_argument);
    CHECK_THROWS_AS(virtual_color_count(2, Grid({3, 7}), 0), std::invalid_argument);
}

TEST_CASE("compose guarantee through virtual colors") {
    // [3] 2-guaranteed and [7] 6-guaranteed compose to [3,7] 2-guaranteed.
    Certificate low = pigeonhole_certificate(2, Grid({3}));
    Certificate high = pigeonhole_certificate(6, Grid({7}));
    Certificate composed = compose_guarantee(low, high);
    CHECK(composed.verdict == Verdict::kGuaranteed);
    CHECK(composed.method == "product-composition");
    CHECK(*composed.grid == Grid({3, 7}));
    CHECK(composed.colors == 2);

    // Wrong virtual color count is rejected.
    Certificate wrong = pigeonhole_certificate(7, Grid({8}));
    CHECK_THROWS_AS(compose_guarantee(low, wrong), std::invalid_argument);

    // Chain for the full mu grid in three dimensions.
    Certificate chain = mu_guarantee_certificate(2, 3);
    CHECK(chain.verdict == Verdict::kGuaranteed);
    CHECK(*chain.grid == Grid({3, 7, 127}));
    CHECK(verify_certificate(chain));
}

TEST_CASE("pinch points") {
    const auto set27 = pinch_points(2, Grid({3, 7}));
    REQUIRE(set27.points.size() == 2);
    CHECK(set27.points[0].index == 1);
    CHECK(set27.points[1].index == 2);
    CHECK(set27.points[0].virtual_colors == 2);
    CHECK(set27.points[1].virtual_colors == 6);

    const auto set3 = pinch_points(2, Grid({3, 7, 127}));
    REQUIRE(set3.points.size() == 3);
    CHECK(set3.points[0].index == 1);
    CHECK(set3.points[1].index == 2);
    CHECK(set3.points[2].index == 3);
    CHECK(set3.points[2].virtual_colors == 126);

    // Precondition: sides must be at least 3.
    CHECK_THROWS_AS(pinch_points(2, Grid({2, 7})), std::invalid_argument);
    // Premise: eps_c(R^-) must be >= 1.
    CHECK_THROWS_AS(pinch_points(2, Grid({100, 100})), std::domain_error);
}

TEST_CASE("mu sequences") {
    CHECK(mu_sequence(2, 3) == std::vector<Int>{3, 7, 127});
    CHECK(mu_sequence(3, 2) == std::vector<Int>{4, 19});
    CHECK(mu_sequence(2, 4).back() == 1 + 2 * Int(3) * 21 * 8001);
    for (int c = 2; c <= 5; ++c) CHECK(mu_lower_bound_holds(c, 4));
}

TEST_CASE("minimal colorings monocolor exactly one box") {
    // 1-D base case: (1,2,1) in file colors.
    const Coloring base = minimal_coloring(2, 1);
    CHECK(base.grid() == Grid({3}));
    CHECK(base.cells() == std::vector<Coloring::Color>{0, 1, 0});
    CHECK(count_monochromatic_boxes(base) == 1);

    for (const auto& [c, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
        const Coloring coloring = minimal_coloring(c, d);
        CHECK(coloring.grid().dims() == mu_sequence(c, d));
        CHECK(count_monochromatic_boxes(coloring) == 1);
        CHECK(testing::count_monochromatic_boxes_naive(coloring) == 1);

        // Removing the duplicated final layer leaves a box-free coloring.
        if (d >= 2) {
            const auto dims = coloring.grid().dims64();
            const Coloring trimmed =
                coloring.drop_hyperplane(d - 1, dims[static_cast<std::size_t>(d - 1)] - 1);
            CHECK(count_monochromatic_boxes(trimmed) == 0);
        }
    }
}

TEST_CASE("mu grids are certified on both sides of the frontier") {
    for (int c = 2; c <= 3; ++c) {
        for (int d = 1; d <= 2; ++d) {
            const auto mu = mu_sequence(c, d);
            // Guaranteed via the certificate chain.
            const Certificate chain = mu_guarantee_certificate(c, d);
            CHECK(chain.verdict == Verdict::kGuaranteed);
            CHECK(verify_certificate(chain));

            // Colorable one step down, witnessed by the trimmed minimal coloring.
            const Coloring coloring = minimal_coloring(c, d);
            Coloring trimmed = coloring.drop_hyperplane(
                d - 1, static_cast<std::int64_t>(mu.back()) - 1);
            CHECK(count_monochromatic_boxes(trimmed) == 0);
        }
    }
}

TEST_CASE("decrement_largest lowers the first side attaining the maximum") {
    CHECK(decrement_largest(Grid({3, 7})) == Grid({3, 6}));
    CHECK(decrement_largest(Grid({5, 5})) == Grid({4, 5}));
    CHECK(decrement_largest(Grid({3, 7, 7})) == Grid({3, 6, 7}));
}
