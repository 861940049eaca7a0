// Test-only reference implementations, kept deliberately naive and
// independent of the library's counting and search paths.
#pragma once

#include "gridramsey/grid.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gridramsey::testing {

// Every box of the grid, enumerated directly from the definition: an
// anchor point plus positive per-axis offsets keeping all corners inside.
inline std::vector<Box> enumerate_boxes_naive(const Grid& grid) {
    const auto dims = grid.dims64();
    const std::size_t d = dims.size();
    std::vector<Box> boxes;

    std::vector<std::int64_t> anchor(d, 0);
    const auto advance = [&](std::vector<std::int64_t>& v,
                             const std::vector<std::int64_t>& limit) {
        for (std::size_t i = d; i-- > 0;) {
            if (++v[i] < limit[i]) return true;
            v[i] = 0;
        }
        return false;
    };

    do {
        // Offsets: 1 <= s_i <= dims[i] - 1 - anchor[i].
        std::vector<std::int64_t> max_offset(d);
        bool feasible = true;
        for (std::size_t i = 0; i < d; ++i) {
            max_offset[i] = dims[i] - 1 - anchor[i];
            if (max_offset[i] < 1) feasible = false;
        }
        if (feasible) {
            std::vector<std::int64_t> offset(d, 1);
            bool more = true;
            while (more) {
                boxes.push_back(Box{anchor, offset});
                more = false;
                for (std::size_t i = d; i-- > 0;) {
                    if (++offset[i] <= max_offset[i]) {
                        more = true;
                        break;
                    }
                    offset[i] = 1;
                }
            }
        }
    } while (advance(anchor, dims));
    return boxes;
}

inline Int count_monochromatic_boxes_naive(const Coloring& coloring) {
    Int count = 0;
    for (const Box& box : enumerate_boxes_naive(coloring.grid())) {
        bool mono = true;
        const auto corners = box.corners();
        const auto first = coloring.at(corners.front());
        for (std::size_t i = 1; i < corners.size() && mono; ++i) {
            if (coloring.at(corners[i]) != first) mono = false;
        }
        if (mono) ++count;
    }
    return count;
}

inline Coloring random_coloring(const Grid& grid, std::int64_t colors, std::mt19937_64& rng) {
    const auto volume = static_cast<std::size_t>(grid.volume());
    std::vector<Coloring::Color> cells(volume);
    for (auto& cell : cells)
        cell = static_cast<Coloring::Color>(rng() % static_cast<std::uint64_t>(colors));
    return Coloring(grid, colors, std::move(cells));
}

}  // namespace gridramsey::testing
