#include "gridramsey/grid.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace gridramsey {

Grid::Grid(std::vector<Int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("Grid: dimension must be >= 1");
    for (const Int& a : dims_) {
        if (a < 1) throw std::invalid_argument("Grid: every side must be >= 1");
    }
}

Grid Grid::parse(const std::string& text) {
    std::vector<Int> dims;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('x', start);
        if (end == std::string::npos) end = text.size();
        const std::string token = text.substr(start, end - start);
        if (token.empty()) throw std::invalid_argument("Grid::parse: empty side in '" + text + "'");
        for (char ch : token) {
            if (ch < '0' || ch > '9')
                throw std::invalid_argument("Grid::parse: bad character in '" + text + "'");
        }
        dims.emplace_back(token);
        start = end + 1;
    }
    return Grid(std::move(dims));
}

Int Grid::volume() const {
    Int v = 1;
    for (const Int& a : dims_) v *= a;
    return v;
}

bool Grid::is_monotone() const {
    return std::is_sorted(dims_.begin(), dims_.end());
}

Grid Grid::canonicalized() const {
    std::vector<Int> sorted = dims_;
    std::sort(sorted.begin(), sorted.end());
    return Grid(std::move(sorted));
}

bool Grid::is_small() const {
    const Int cap = Int(std::numeric_limits<std::int64_t>::max());
    for (const Int& a : dims_) {
        if (a > cap) return false;
    }
    return true;
}

std::vector<std::int64_t> Grid::dims64() const {
    if (!is_small()) throw std::overflow_error("Grid::dims64: side exceeds 64 bits");
    std::vector<std::int64_t> result;
    result.reserve(dims_.size());
    for (const Int& a : dims_) result.push_back(static_cast<std::int64_t>(a));
    return result;
}

std::string Grid::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i) out += 'x';
        out += dims_[i].str();
    }
    return out;
}

bool dominance_leq(const Grid& g1, const Grid& g2) {
    if (g1.dimension() != g2.dimension())
        throw std::invalid_argument("dominance_leq: dimension mismatch");
    const auto a = g1.canonicalized();
    const auto b = g2.canonicalized();
    for (int i = 0; i < g1.dimension(); ++i) {
        if (a.dim(i) > b.dim(i)) return false;
    }
    return true;
}

Int box_count(const Grid& grid) {
    Int m = 1;
    for (const Int& a : grid.dims()) {
        m *= pairs(a);
        if (m == 0) return 0;
    }
    return m;
}

std::vector<std::vector<std::int64_t>> Box::corners() const {
    const std::size_t d = anchor.size();
    std::vector<std::vector<std::int64_t>> result;
    result.reserve(std::size_t(1) << d);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
        std::vector<std::int64_t> corner(d);
        for (std::size_t i = 0; i < d; ++i) {
            corner[i] = anchor[i] + (((mask >> i) & 1) ? offsets[i] : 0);
        }
        result.push_back(std::move(corner));
    }
    return result;
}

bool Box::inside(const Grid& grid) const {
    if (static_cast<int>(anchor.size()) != grid.dimension() || anchor.size() != offsets.size())
        return false;
    for (std::size_t i = 0; i < anchor.size(); ++i) {
        if (offsets[i] < 1) return false;
        if (anchor[i] < 0) return false;
        if (Int(anchor[i]) + Int(offsets[i]) >= grid.dim(static_cast<int>(i))) return false;
    }
    return true;
}

Coloring::Coloring(Grid grid, std::int64_t colors, std::vector<Color> cells)
    : grid_(std::move(grid)), colors_(colors), cells_(std::move(cells)) {
    if (colors_ < 1 || colors_ > kMaxColors)
        throw std::invalid_argument("Coloring: color count out of range");
    const Int vol = grid_.volume();
    if (vol > kMaxCells) throw std::invalid_argument("Coloring: grid too large to materialize");
    if (Int(static_cast<std::int64_t>(cells_.size())) != vol)
        throw std::invalid_argument("Coloring: cell count does not match grid volume");
    for (Color c : cells_) {
        if (c >= colors_) throw std::invalid_argument("Coloring: cell color out of range");
    }
}

Coloring Coloring::uniform(Grid grid, std::int64_t colors) {
    const Int vol = grid.volume();
    if (vol > kMaxCells) throw std::invalid_argument("Coloring: grid too large to materialize");
    std::vector<Color> cells(static_cast<std::size_t>(vol), 0);
    return Coloring(std::move(grid), colors, std::move(cells));
}

std::int64_t Coloring::flat_index(const std::vector<std::int64_t>& point) const {
    if (static_cast<int>(point.size()) != grid_.dimension())
        throw std::invalid_argument("Coloring: point dimension mismatch");
    std::int64_t idx = 0;
    for (int i = 0; i < grid_.dimension(); ++i) {
        const std::int64_t side = static_cast<std::int64_t>(grid_.dim(i));
        if (point[i] < 0 || point[i] >= side)
            throw std::out_of_range("Coloring: point outside grid");
        idx = idx * side + point[i];
    }
    return idx;
}

Coloring::Color Coloring::at(const std::vector<std::int64_t>& point) const {
    return cells_[static_cast<std::size_t>(flat_index(point))];
}

Coloring Coloring::drop_hyperplane(int axis, std::int64_t index) const {
    const int d = grid_.dimension();
    if (axis < 0 || axis >= d) throw std::invalid_argument("drop_hyperplane: bad axis");
    const auto dims = grid_.dims64();
    if (index < 0 || index >= dims[static_cast<std::size_t>(axis)])
        throw std::invalid_argument("drop_hyperplane: index outside axis");
    if (dims[static_cast<std::size_t>(axis)] == 1)
        throw std::invalid_argument("drop_hyperplane: axis would become empty");

    std::vector<Int> new_dims = grid_.dims();
    new_dims[static_cast<std::size_t>(axis)] -= 1;

    // Strides of the source layout (last axis fastest).
    std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
    for (int i = d - 2; i >= 0; --i)
        stride[static_cast<std::size_t>(i)] =
            stride[static_cast<std::size_t>(i + 1)] * dims[static_cast<std::size_t>(i + 1)];

    std::vector<Color> out;
    out.reserve(cells_.size() - cells_.size() / static_cast<std::size_t>(dims[static_cast<std::size_t>(axis)]));
    const std::int64_t total = static_cast<std::int64_t>(cells_.size());
    for (std::int64_t flat = 0; flat < total; ++flat) {
        const std::int64_t axis_coord = (flat / stride[static_cast<std::size_t>(axis)]) %
                                        dims[static_cast<std::size_t>(axis)];
        if (axis_coord != index) out.push_back(cells_[static_cast<std::size_t>(flat)]);
    }
    return Coloring(Grid(std::move(new_dims)), colors_, std::move(out));
}

Int count_monochromatic_boxes(const Coloring& coloring) {
    const Grid& grid = coloring.grid();
    const int d = grid.dimension();
    const auto dims = grid.dims64();
    for (std::int64_t a : dims) {
        if (a < 2) return 0;
    }
    const auto& cells = coloring.cells();
    const std::int64_t c = coloring.colors();

    if (d == 1) {
        std::vector<std::int64_t> tally(static_cast<std::size_t>(c), 0);
        for (auto col : cells) ++tally[col];
        Int total = 0;
        for (std::int64_t t : tally) total += pairs(Int(t));
        return total;
    }

    // Boxes over the first d-1 axes are pairs of hyperplane indices per
    // axis; the last axis (contiguous in storage) is swept once per box.
    const std::size_t prefix_d = static_cast<std::size_t>(d - 1);
    const std::int64_t last = dims[prefix_d];

    std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
    for (int i = d - 2; i >= 0; --i)
        stride[static_cast<std::size_t>(i)] =
            stride[static_cast<std::size_t>(i + 1)] * dims[static_cast<std::size_t>(i + 1)];

    // Per-axis index pairs (lo < hi), iterated odometer style.
    std::vector<std::int64_t> lo(prefix_d, 0), hi(prefix_d, 1);
    std::vector<std::int64_t> gamma(static_cast<std::size_t>(c), 0);
    std::vector<std::int64_t> touched;
    const std::size_t corner_count = std::size_t(1) << prefix_d;
    std::vector<std::int64_t> base(corner_count);

    Int total = 0;
    while (true) {
        // Base offsets of the 2^(d-1) prefix corners of this box.
        for (std::size_t mask = 0; mask < corner_count; ++mask) {
            std::int64_t offset = 0;
            for (std::size_t i = 0; i < prefix_d; ++i)
                offset += ((mask >> i) & 1 ? hi[i] : lo[i]) * stride[i];
            base[mask] = offset;
        }
        touched.clear();
        for (std::int64_t j = 0; j < last; ++j) {
            const auto first = cells[static_cast<std::size_t>(base[0] + j)];
            bool mono = true;
            for (std::size_t mask = 1; mask < corner_count; ++mask) {
                if (cells[static_cast<std::size_t>(base[mask] + j)] != first) {
                    mono = false;
                    break;
                }
            }
            if (mono) {
                if (gamma[first]++ == 0) touched.push_back(first);
            }
        }
        for (std::int64_t col : touched) {
            const std::int64_t g = gamma[static_cast<std::size_t>(col)];
            total += Int(g) * Int(g - 1) / 2;
            gamma[static_cast<std::size_t>(col)] = 0;
        }

        // Next pair tuple.
        std::size_t axis = prefix_d;
        while (axis > 0) {
            --axis;
            const std::int64_t side = dims[axis];
            if (hi[axis] + 1 < side) {
                ++hi[axis];
                break;
            }
            if (lo[axis] + 2 < side) {
                ++lo[axis];
                hi[axis] = lo[axis] + 1;
                break;
            }
            lo[axis] = 0;
            hi[axis] = 1;
            if (axis == 0) return total;
        }
        if (prefix_d == 0) return total;
    }
}

}  // namespace gridramsey
