#pragma once

#include "gridramsey/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gridramsey {

/// A d-dimensional grid [a1] x ... x [ad], the universe being colored.
/// Side lengths are arbitrary-precision: several constructions produce
/// sides far beyond 64 bits even though they are never materialized.
class Grid {
public:
    explicit Grid(std::vector<Int> dims);

    /// Parse "3x7x127" into a grid.
    static Grid parse(const std::string& text);

    int dimension() const { return static_cast<int>(dims_.size()); }
    const std::vector<Int>& dims() const { return dims_; }
    const Int& dim(int axis) const { return dims_.at(static_cast<std::size_t>(axis)); }

    Int volume() const;

    bool is_monotone() const;

    /// Sides sorted ascending; guarantee questions are permutation-invariant.
    Grid canonicalized() const;

    /// True iff every side fits comfortably in machine integers, so the
    /// grid can be materialized (colorings, search).
    bool is_small() const;

    /// Sides as int64; throws std::overflow_error if any side is too large.
    std::vector<std::int64_t> dims64() const;

    std::string to_string() const;  // "3x7x127"

    bool operator==(const Grid& other) const { return dims_ == other.dims_; }

private:
    std::vector<Int> dims_;
};

/// Coordinatewise <= on ascending-sorted sides (the dominance order).
/// Throws on dimension mismatch.
bool dominance_leq(const Grid& g1, const Grid& g2);

/// Total number of boxes prod_i C(a_i, 2); 0 if any side is < 2.
Int box_count(const Grid& grid);

/// A box: 2^d corner points, anchored at `anchor` with per-axis nonzero
/// offsets. Coordinates are 0-based.
struct Box {
    std::vector<std::int64_t> anchor;
    std::vector<std::int64_t> offsets;  // every entry >= 1

    /// All 2^d corners, each a coordinate vector.
    std::vector<std::vector<std::int64_t>> corners() const;

    bool inside(const Grid& grid) const;
};

/// A total c-coloring of a grid, flat row-major cells (last axis fastest).
/// Colors are 0-based internally; file format is 1-based.
class Coloring {
public:
    using Color = std::uint16_t;
    static constexpr std::int64_t kMaxCells = 200'000'000;
    static constexpr std::int64_t kMaxColors = 65'535;

    Coloring(Grid grid, std::int64_t colors, std::vector<Color> cells);

    /// Uniform coloring (all cells color 0).
    static Coloring uniform(Grid grid, std::int64_t colors);

    const Grid& grid() const { return grid_; }
    std::int64_t colors() const { return colors_; }
    const std::vector<Color>& cells() const { return cells_; }
    std::vector<Color>& cells() { return cells_; }

    std::int64_t flat_index(const std::vector<std::int64_t>& point) const;
    Color at(const std::vector<std::int64_t>& point) const;

    /// New coloring with hyperplane `index` removed along `axis`.
    Coloring drop_hyperplane(int axis, std::int64_t index) const;

private:
    Grid grid_;
    std::int64_t colors_;
    std::vector<Color> cells_;
};

/// Exact count of monochromatic boxes, via the pair-count identity:
/// enumerate boxes of the first d-1 axes, sweep the last axis counting
/// per-color monochromatic hyperplane indices gamma_i(B), and accumulate
/// C(gamma_i(B), 2).
Int count_monochromatic_boxes(const Coloring& coloring);

}  // namespace gridramsey
