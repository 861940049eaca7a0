#pragma once

#include "gridramsey/certificate.hpp"
#include "gridramsey/grid.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace gridramsey::search {

/// Resource limits for exact search. Exhausting a budget yields the
/// verdict `unknown`, never a wrong verdict.
struct SearchBudget {
    std::int64_t max_nodes = 50'000'000;
    std::int64_t max_seconds = 600;
    int parallel_shards = 1;

    void validate() const;
};

enum class Outcome { kFound, kExhausted, kBudget };

/// Result of a colorability search: a verified box-free coloring, a proof
/// of exhaustion, or budget exhaustion.
struct ColoringSearchResult {
    Outcome outcome;
    std::optional<Coloring> coloring;
    std::int64_t nodes = 0;
};

/// Backtracking search for a box-free c-coloring. Cells are assigned in
/// row-major order with incremental conflict detection; color classes are
/// interchangeable, so the first occurrences of colors are forced into
/// canonical positions. 2-D instances search over column color-vector
/// multisets instead of raw cell matrices.
ColoringSearchResult find_coloring(const Int& colors, const Grid& grid,
                                   const SearchBudget& budget = {});

/// Exact minimum number of monochromatic boxes over all c-colorings,
/// by branch and bound (completed-box count is monotone along the
/// row-major assignment order). nullopt = budget exhausted.
struct MinBoxesResult {
    std::optional<Int> minimum;
    std::optional<Coloring> argmin;
    std::int64_t nodes = 0;
};
MinBoxesResult min_mono_boxes_exact(const Int& colors, const Grid& grid,
                                    const SearchBudget& budget = {});

/// Certificate wrapper over find_coloring.
Certificate is_guaranteed_exact(const Int& colors, const Grid& grid,
                                const SearchBudget& budget = {});

/// A minimal guaranteed grid together with both sides of its minimality
/// proof: the grid is guaranteed and every single-coordinate decrement is
/// colorable.
struct ObstructionMember {
    Grid grid;
    Certificate guaranteed;
    std::vector<Certificate> decrement_witnesses;
};

struct ObstructionSet {
    Int colors;
    int dimension;
    Grid caps;
    std::vector<ObstructionMember> members;  // antichain, canonical grids
    bool frontier_complete = false;          // no verdict within caps was unknown

    // Caps advisory: any monotone minimal guaranteed grid whose first d-1
    // coordinates fit the caps has last coordinate at most this (worst
    // case over pinch-point structures with cap-sized virtual colors).
    Int last_coordinate_bound = 0;
    bool caps_provably_cover_last = false;
};

/// All monotone minimal c-guaranteed grids within per-coordinate caps.
/// Grids are processed in increasing side-sum order so dominance closure
/// prunes most exhaustive runs.
ObstructionSet obstruction_set(const Int& colors, int dimension, const Grid& caps,
                               const SearchBudget& budget = {});

/// Resampling colorer: start from a seeded uniform random coloring and
/// repeatedly redraw the cells of the first monochromatic box (boxes
/// ordered lexicographically by their index-pair tuples). Returns the
/// coloring on success, nullopt after max_resamples.
struct ResampleResult {
    std::optional<Coloring> coloring;
    std::int64_t resamples = 0;
};
ResampleResult moser_tardos_color(const Int& colors, const Grid& grid, std::uint64_t seed,
                                  std::int64_t max_resamples);

}  // namespace gridramsey::search
