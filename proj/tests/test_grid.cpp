#include "gridramsey/grid.hpp"

#include "gridramsey/coloring_io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace gridramsey;

TEST_CASE("box_count matches closed form") {
    CHECK(box_count(Grid({5, 5})) == 100);
    CHECK(box_count(Grid({3, 7})) == 63);
    CHECK(box_count(Grid({9, 1})) == 0);
    CHECK(box_count(Grid({2})) == 1);
    CHECK(box_count(Grid({3, 7, 127})) == Int(63) * 8001);
}

TEST_CASE("box_count equals the naive box enumerator") {
    for (const auto& dims : std::vector<std::vector<Int>>{
             {4}, {2, 2}, {3, 4}, {5, 2}, {2, 2, 3}, {1, 6}, {2, 3, 2}}) {
        Grid grid(dims);
        CHECK(box_count(grid) == Int(testing::enumerate_boxes_naive(grid).size()));
    }
}

TEST_CASE("count_monochromatic_boxes basics") {
    // 1-D: one pair per color.
    Coloring line(Grid({4}), 2, {0, 0, 1, 1});
    CHECK(count_monochromatic_boxes(line) == 2);

    // Single box, all one color.
    Coloring block(Grid({2, 2}), 1, {0, 0, 0, 0});
    CHECK(count_monochromatic_boxes(block) == 1);

    // A thin side kills every box.
    Coloring thin(Grid({1, 5}), 2, {0, 0, 0, 0, 0});
    CHECK(count_monochromatic_boxes(thin) == 0);
}

TEST_CASE("count_monochromatic_boxes equals the naive counter on random colorings") {
    std::mt19937_64 rng(42);
    const std::vector<std::vector<Int>> shapes = {{6},      {2, 2},    {3, 4},   {4, 5},
                                                  {2, 2, 2}, {2, 3, 3}, {2, 2, 5}, {1, 7},
                                                  {2, 2, 2, 2}};
    for (const auto& dims : shapes) {
        Grid grid(dims);
        for (std::int64_t colors : {1, 2, 3}) {
            for (int trial = 0; trial < 8; ++trial) {
                Coloring coloring = testing::random_coloring(grid, colors, rng);
                CHECK(count_monochromatic_boxes(coloring) ==
                      testing::count_monochromatic_boxes_naive(coloring));
            }
        }
    }
}

TEST_CASE("dominance order") {
    CHECK(dominance_leq(Grid({3, 7}), Grid({4, 7})));
    CHECK_FALSE(dominance_leq(Grid({5, 5}), Grid({3, 7})));
    CHECK(dominance_leq(Grid({3, 7}), Grid({7, 3})));  // permutation invariant
    CHECK_THROWS_AS(dominance_leq(Grid({3}), Grid({3, 3})), std::invalid_argument);
}

TEST_CASE("dominance is a partial order on canonical grids") {
    std::mt19937_64 rng(7);
    std::vector<Grid> grids;
    for (int i = 0; i < 40; ++i) {
        std::vector<Int> dims;
        for (int k = 0; k < 3; ++k) dims.push_back(Int(1 + rng() % 9));
        grids.push_back(Grid(dims).canonicalized());
    }
    for (const Grid& a : grids) {
        CHECK(dominance_leq(a, a));  // reflexive
        for (const Grid& b : grids) {
            if (dominance_leq(a, b) && dominance_leq(b, a)) CHECK(a == b);  // antisymmetric
            for (const Grid& c : grids) {
                if (dominance_leq(a, b) && dominance_leq(b, c))
                    CHECK(dominance_leq(a, c));  // transitive
            }
        }
    }
}

TEST_CASE("canonicalize sorts sides ascending") {
    CHECK(Grid({7, 3}).canonicalized() == Grid({3, 7}));
    CHECK(Grid({5, 5}).canonicalized() == Grid({5, 5}));
    CHECK(Grid({12, 3, 7}).canonicalized() == Grid({3, 7, 12}));
}

TEST_CASE("grid parsing") {
    CHECK(Grid::parse("3x7x127") == Grid({3, 7, 127}));
    CHECK(Grid::parse("5") == Grid({5}));
    CHECK_THROWS_AS(Grid::parse("3x"), std::invalid_argument);
    CHECK_THROWS_AS(Grid::parse("3x-2"), std::invalid_argument);
    CHECK_THROWS_AS(Grid::parse("0x4"), std::invalid_argument);
}

TEST_CASE("coloring file round trip") {
    std::mt19937_64 rng(11);
    for (const auto& dims : std::vector<std::vector<Int>>{{5}, {3, 4}, {2, 3, 2}}) {
        Grid grid(dims);
        Coloring original = testing::random_coloring(grid, 3, rng);
        Coloring reparsed = parse_coloring(serialize_coloring(original));
        CHECK(reparsed.grid() == original.grid());
        CHECK(reparsed.colors() == original.colors());
        CHECK(reparsed.cells() == original.cells());
    }
}

TEST_CASE("coloring file format errors") {
    CHECK_THROWS_WITH_AS(parse_coloring("grid 2 2\ncolors 2\n1 2 3 1\n"),
                         doctest::Contains("out of range"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_coloring("grid 2 2\ncolors 2\n1 2 1\n"),
                         doctest::Contains("cells"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coloring("colors 2\n1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coloring("grid 2 2\n1 1 1 1\n"), std::invalid_argument);

    // Comments and loose whitespace are fine.
    Coloring ok = parse_coloring("# witness\ngrid 2 2\n# two colors\ncolors 2\n1 2\n2 1\n");
    CHECK(ok.cells() == std::vector<Coloring::Color>{0, 1, 1, 0});
}

TEST_CASE("drop_hyperplane removes one layer") {
    // 2x3 coloring, cells row-major.
    Coloring coloring(Grid({2, 3}), 3, {0, 1, 2, 2, 0, 1});
    Coloring dropped = coloring.drop_hyperplane(1, 2);
    CHECK(dropped.grid() == Grid({2, 2}));
    CHECK(dropped.cells() == std::vector<Coloring::Color>{0, 1, 2, 0});

    Coloring front = coloring.drop_hyperplane(0, 0);
    CHECK(front.grid() == Grid({1, 3}));
    CHECK(front.cells() == std::vector<Coloring::Color>{2, 0, 1});
}

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(Grid({Int(0)}), std::invalid_argument);
    CHECK_THROWS_AS(Grid(std::vector<Int>{}), std::invalid_argument);
    CHECK_THROWS_AS(Coloring(Grid({2, 2}), 2, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Coloring(Grid({2, 2}), 2, {0, 0, 0, 2}), std::invalid_argument);
}
