#include "gridramsey/bounds.hpp"

#include <algorithm>

namespace gridramsey::bounds {

namespace {

void require_sides_at_least(const Grid& grid, const Int& minimum, const char* op) {
    for (const Int& a : grid.dims()) {
        if (a < minimum)
            throw std::invalid_argument(std::string(op) + ": every side must be >= " +
                                        minimum.str());
    }
}

void require_colors_at_least(const Int& colors, const Int& minimum, const char* op) {
    if (colors < minimum)
        throw std::invalid_argument(std::string(op) + ": colors must be >= " + minimum.str());
}

}  // namespace

bool RationalBoundSequence::all_positive_after_first() const {
    for (std::size_t j = 1; j < terms.size(); ++j) {
        if (terms[j] <= 0) return false;
    }
    return true;
}

RationalBoundSequence delta_sequence(const Int& colors, const Grid& grid) {
    require_colors_at_least(colors, 1, "delta_sequence");
    require_sides_at_least(grid, 2, "delta_sequence");
    std::vector<Rat> terms{Rat(1)};
    for (int j = 1; j <= grid.dimension(); ++j) {
        const Rat& prev = terms.back();
        const Int power = color_power(colors, static_cast<unsigned>(j));
        const Rat step = prev - (Rat(power) - prev) / Rat(grid.dim(j - 1) - 1);
        terms.push_back(prev * step);
    }
    return {SequenceKind::kDelta, colors, grid, std::move(terms)};
}

RationalBoundSequence gamma_sequence(const Int& colors, const Grid& grid) {
    require_colors_at_least(colors, 1, "gamma_sequence");
    require_sides_at_least(grid, 2, "gamma_sequence");
    std::vector<Rat> terms{Rat(1)};
    for (int j = 1; j <= grid.dimension(); ++j) {
        const Rat& prev = terms.back();
        const Int power = color_power(colors, static_cast<unsigned>(j));
        terms.push_back(prev * (prev - Rat(power) / Rat(grid.dim(j - 1) - 1)));
    }
    return {SequenceKind::kGamma, colors, grid, std::move(terms)};
}

RationalBoundSequence epsilon_sequence(const Int& colors, const Grid& grid) {
    require_colors_at_least(colors, 1, "epsilon_sequence");
    require_sides_at_least(grid, 2, "epsilon_sequence");
    std::vector<Rat> terms{Rat(0)};
    for (int j = 1; j <= grid.dimension(); ++j) {
        const Int power = color_power(colors, static_cast<unsigned>(j));
        terms.push_back(2 * terms.back() + Rat(power) / Rat(grid.dim(j - 1) - 1));
    }
    return {SequenceKind::kEpsilon, colors, grid, std::move(terms)};
}

Rat guaranteed_count_lower_bound(const Int& colors, const Grid& grid) {
    const RationalBoundSequence delta = delta_sequence(colors, grid);
    if (!delta.all_positive_after_first()) return 0;
    const int d = grid.dimension();
    return Rat(box_count(grid)) * delta.last() /
           Rat(ipow(colors, (std::uint64_t(1) << d) - 1));
}

Int guaranteed_count_lower_bound_ceiling(const Int& colors, const Grid& grid) {
    require_colors_at_least(colors, 1, "guaranteed_count_lower_bound_ceiling");
    require_sides_at_least(grid, 2, "guaranteed_count_lower_bound_ceiling");
    // Step function: with t boxes forced per hyperplane slice and M boxes
    // in the prefix grid, the count in the next dimension is at least
    // S*(S - M*c) / (2*M*c) with S = a_j * t. Rounding t up at every step
    // is sound because box counts are integers.
    Int t = 1;  // dimension-0 base: the single point is a "box" of its color
    Int prefix_boxes = 1;
    for (int j = 1; j <= grid.dimension(); ++j) {
        if (t == 0) return 0;
        const Rat slice_sum = Rat(grid.dim(j - 1)) * Rat(t);
        const Rat mc = Rat(prefix_boxes) * Rat(colors);
        const Rat bound = slice_sum * (slice_sum - mc) / (2 * mc);
        t = bound > 0 ? ceil_rat(bound) : Int(0);
        prefix_boxes *= pairs(grid.dim(j - 1));
    }
    return t;
}

Grid corollary_grid(const Int& colors, int dimension) {
    require_colors_at_least(colors, 2, "corollary_grid");
    if (dimension < 1) throw std::invalid_argument("corollary_grid: dimension must be >= 1");
    std::vector<Int> dims;
    dims.reserve(static_cast<std::size_t>(dimension));
    for (int j = 1; j <= dimension; ++j) {
        dims.push_back(Int(dimension + 1) * pow2(static_cast<unsigned>(dimension - j)) *
                           color_power(colors, static_cast<unsigned>(j)) +
                       1);
    }
    return Grid(std::move(dims));
}

Int lll_volume_threshold(const Int& colors, int dimension) {
    require_colors_at_least(colors, 2, "lll_volume_threshold");
    if (dimension < 1) throw std::invalid_argument("lll_volume_threshold: dimension must be >= 1");
    const Int power = ipow(colors, (std::uint64_t(1) << dimension) - 1);
    const Int scale = pow2(static_cast<unsigned>(dimension));
    // Largest V with V * 2^d * e <= c^(2^d - 1). e is irrational, so the
    // two floors below agree once the enclosure is tight enough.
    for (unsigned terms = 16;; terms *= 2) {
        const auto [lo, hi] = napier_enclosure(terms);
        const Int v_hi = floor_rat(Rat(power) / (Rat(scale) * lo));
        const Int v_lo = floor_rat(Rat(power) / (Rat(scale) * hi));
        if (v_lo == v_hi) return v_lo;
        if (terms > 1u << 20)
            throw std::runtime_error("lll_volume_threshold: enclosure failed to separate");
    }
}

std::vector<HereditaryStep> hereditary_steps(const Int& colors, const Grid& grid) {
    require_colors_at_least(colors, 1, "hereditary_check");
    if (!grid.is_monotone())
        throw std::invalid_argument("hereditary_check: grid must be monotone (canonicalize first)");
    const int d = grid.dimension();
    const Int base = Int(d) * pow2(static_cast<unsigned>(d));
    std::vector<HereditaryStep> steps;
    Int prefix = 1;
    Int pow3 = 1;  // 3^(j-1)
    for (int j = 1; j <= d; ++j) {
        prefix *= grid.dim(j - 1);
        // C_j = (d*2^d)^(3*(3^(j-1)-1)/2); both exponents are integers.
        const Int cj_exp = 3 * (pow3 - 1) / 2;
        const Int color_exp = (3 * pow3 - 1) / 2;
        if (cj_exp > 1'000'000 || color_exp > 1'000'000)
            throw std::invalid_argument("hereditary_check: dimension too large");
        const Int threshold = ipow(base, static_cast<std::uint64_t>(cj_exp)) *
                              ipow(colors, static_cast<std::uint64_t>(color_exp));
        steps.push_back({j, prefix, threshold, prefix > threshold});
        pow3 *= 3;
    }
    return steps;
}

bool hereditary_check(const Int& colors, const Grid& grid) {
    const auto steps = hereditary_steps(colors, grid);
    return std::all_of(steps.begin(), steps.end(),
                       [](const HereditaryStep& s) { return s.holds; });
}

Int virtual_color_count(const Int& colors, const Grid& grid, int j) {
    if (j < 1 || j >= grid.dimension())
        throw std::invalid_argument("virtual_color_count: j must satisfy 1 <= j < d");
    Int result = colors;
    for (int i = 0; i < j; ++i) result *= pairs(grid.dim(i));
    return result;
}

Certificate compose_guarantee(const Certificate& low, const Certificate& high) {
    if (low.verdict != Verdict::kGuaranteed || high.verdict != Verdict::kGuaranteed)
        throw std::invalid_argument("compose_guarantee: both sub-certificates must be guaranteed");
    if (!low.grid || !high.grid)
        throw std::invalid_argument("compose_guarantee: sub-certificates must name their grids");

    std::vector<Int> dims = low.grid->dims();
    for (const Int& a : high.grid->dims()) dims.push_back(a);
    Grid full(std::move(dims));

    const int j = low.grid->dimension();
    const Int expected = virtual_color_count(low.colors, full, j);
    if (high.colors != expected)
        throw std::invalid_argument("compose_guarantee: virtual color count mismatch (expected " +
                                    expected.str() + ", certificate has " + high.colors.str() +
                                    ")");

    Certificate cert;
    cert.verdict = Verdict::kGuaranteed;
    cert.method = "product-composition";
    cert.colors = low.colors;
    cert.grid = full;
    cert.params["j"] = j;
    cert.params["virtual_colors"] = expected.str();
    cert.sub_certificates = {low, high};
    return cert;
}

Certificate pigeonhole_certificate(const Int& colors, const Grid& grid) {
    if (grid.dimension() != 1)
        throw std::invalid_argument("pigeonhole_certificate: 1-D grids only");
    if (grid.dim(0) <= colors)
        throw std::invalid_argument("pigeonhole_certificate: side must exceed color count");
    Certificate cert;
    cert.verdict = Verdict::kGuaranteed;
    cert.method = "pigeonhole";
    cert.colors = colors;
    cert.grid = grid;
    return cert;
}

Grid decrement_largest(const Grid& grid) {
    if (!grid.is_monotone())
        throw std::invalid_argument("decrement_largest: grid must be monotone");
    std::vector<Int> dims = grid.dims();
    const Int largest = dims.back();
    if (largest < 2) throw std::invalid_argument("decrement_largest: largest side must be >= 2");
    for (Int& a : dims) {
        if (a == largest) {
            a -= 1;
            break;
        }
    }
    std::sort(dims.begin(), dims.end());
    return Grid(std::move(dims));
}

PinchPointSet pinch_points(const Int& colors, const Grid& grid) {
    require_colors_at_least(colors, 2, "pinch_points");
    if (!grid.is_monotone())
        throw std::invalid_argument("pinch_points: grid must be monotone");
    require_sides_at_least(grid, 3, "pinch_points");
    const int d = grid.dimension();

    const Grid reduced = decrement_largest(grid);
    if (epsilon_sequence(colors, reduced).last() < 1)
        throw std::domain_error(
            "pinch_points: eps_c(R^-) < 1, so R^- is guaranteed and R cannot be an obstruction");

    PinchPointSet result{grid, colors, {}};
    Int current_colors = colors;
    int prev = 0;  // last pinch point found (0 = none yet)
    while (prev < d) {
        int found = 0;
        for (int idx = prev + 1; idx <= d; ++idx) {
            // 2^(d-idx) * c_cur^(2^(idx-prev-1)) / (a_idx - 2) >= 1/(d - prev),
            // cross-multiplied to stay in integers.
            const Int lhs = pow2(static_cast<unsigned>(d - idx)) *
                            ipow(current_colors, std::uint64_t(1)
                                                     << static_cast<unsigned>(idx - prev - 1)) *
                            Int(d - prev);
            const Int rhs = grid.dim(idx - 1) - 2;
            if (lhs >= rhs) {
                found = idx;
                break;
            }
        }
        if (found == 0)
            throw std::domain_error(
                "pinch_points: no axis satisfies the step inequality; grid is not a plausible "
                "obstruction");

        PinchPoint point;
        point.index = found;
        point.virtual_colors = current_colors;
        point.side_upper_bound =
            Int(d - prev) * pow2(static_cast<unsigned>(d - found)) *
                ipow(current_colors, std::uint64_t(1) << static_cast<unsigned>(found - prev - 1)) +
            2;
        Int prefix = 1;
        for (int i = 1; i <= found; ++i) prefix *= grid.dim(i - 1);
        point.prefix_volume = prefix;
        point.growth_exponent = ipow(3, static_cast<std::uint64_t>(prev)) *
                                pow2(static_cast<unsigned>(found - prev - 1));
        result.points.push_back(std::move(point));

        for (int i = prev + 1; i <= found; ++i) current_colors *= pairs(grid.dim(i - 1));
        prev = found;
    }
    return result;
}

std::vector<Int> mu_sequence(const Int& colors, int dimension) {
    require_colors_at_least(colors, 2, "mu_sequence");
    if (dimension < 1) throw std::invalid_argument("mu_sequence: dimension must be >= 1");
    std::vector<Int> mu;
    mu.reserve(static_cast<std::size_t>(dimension));
    Int pair_product = 1;
    for (int j = 1; j <= dimension; ++j) {
        mu.push_back(1 + colors * pair_product);
        pair_product *= pairs(mu.back());
    }
    return mu;
}

bool mu_lower_bound_holds(const Int& colors, int dimension) {
    const auto mu = mu_sequence(colors, dimension);
    Int pow3 = 1;  // 3^(j-1)
    for (int j = 1; j <= dimension; ++j) {
        // mu_j >= 1 + c^(3^(j-1)) / 2^((3^(j-1)-1)/2), cross-multiplied.
        const Int two_exp = (pow3 - 1) / 2;
        if (two_exp > 1'000'000) throw std::invalid_argument("mu_lower_bound: dimension too large");
        const Int lhs = (mu[static_cast<std::size_t>(j - 1)] - 1) *
                        pow2(static_cast<unsigned>(two_exp));
        const Int rhs = ipow(colors, static_cast<std::uint64_t>(pow3));
        if (lhs < rhs) return false;
        pow3 *= 3;
    }
    return true;
}

namespace {

// All index pairs (lo < hi) per axis, in lexicographic order of the tuple
// ((lo_1, hi_1), ..., (lo_k, hi_k)). These enumerate the boxes of a grid.
std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> axis_pair_tuples(
    const std::vector<std::int64_t>& dims) {
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> result;
    std::vector<std::pair<std::int64_t, std::int64_t>> current(dims.size());
    for (auto& p : current) p = {0, 1};
    const std::size_t k = dims.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (dims[i] < 2) return result;  // no boxes at all
    }
    while (true) {
        result.push_back(current);
        std::size_t axis = k;
        bool advanced = false;
        while (axis > 0) {
            --axis;
            auto& [lo, hi] = current[axis];
            if (hi + 1 < dims[axis]) {
                ++hi;
                advanced = true;
                break;
            }
            if (lo + 2 < dims[axis]) {
                ++lo;
                hi = lo + 1;
                advanced = true;
                break;
            }
            current[axis] = {0, 1};
        }
        if (!advanced) return result;
    }
}

// Order-preserving permutation of [side] sending src pair to dst pair:
// src.first -> dst.first, src.second -> dst.second, remaining values in
// ascending order onto the remaining slots in ascending order.
std::vector<std::int64_t> pair_permutation(std::int64_t side,
                                           std::pair<std::int64_t, std::int64_t> src,
                                           std::pair<std::int64_t, std::int64_t> dst) {
    std::vector<std::int64_t> perm(static_cast<std::size_t>(side), -1);
    perm[static_cast<std::size_t>(src.first)] = dst.first;
    perm[static_cast<std::size_t>(src.second)] = dst.second;
    std::vector<std::int64_t> free_slots;
    for (std::int64_t v = 0; v < side; ++v) {
        if (v != dst.first && v != dst.second) free_slots.push_back(v);
    }
    std::size_t next = 0;
    for (std::int64_t v = 0; v < side; ++v) {
        if (perm[static_cast<std::size_t>(v)] == -1) perm[static_cast<std::size_t>(v)] = free_slots[next++];
    }
    return perm;
}

// Locates the unique monochromatic box of a minimal coloring.
struct LocatedBox {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    Coloring::Color color;
};

LocatedBox locate_unique_box(const Coloring& coloring) {
    const auto dims = coloring.grid().dims64();
    const auto tuples = axis_pair_tuples(dims);
    const std::size_t d = dims.size();
    std::optional<LocatedBox> found;
    std::vector<std::int64_t> point(d);
    for (const auto& tuple : tuples) {
        bool mono = true;
        Coloring::Color color = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d) && mono; ++mask) {
            for (std::size_t i = 0; i < d; ++i)
                point[i] = ((mask >> i) & 1) ? tuple[i].second : tuple[i].first;
            const Coloring::Color c = coloring.at(point);
            if (mask == 0) {
                color = c;
            } else if (c != color) {
                mono = false;
            }
        }
        if (mono) {
            if (found) throw std::logic_error("locate_unique_box: more than one monochromatic box");
            found = LocatedBox{tuple, color};
        }
    }
    if (!found) throw std::logic_error("locate_unique_box: no monochromatic box");
    return *found;
}

}  // namespace

Coloring minimal_coloring(const Int& colors, int dimension) {
    require_colors_at_least(colors, 2, "minimal_coloring");
    if (dimension < 1) throw std::invalid_argument("minimal_coloring: dimension must be >= 1");
    if (colors > Coloring::kMaxColors)
        throw std::invalid_argument("minimal_coloring: too many colors to materialize");
    const std::int64_t c = static_cast<std::int64_t>(colors);

    if (dimension == 1) {
        std::vector<Coloring::Color> cells;
        cells.reserve(static_cast<std::size_t>(c + 1));
        for (std::int64_t x = 0; x <= c; ++x)
            cells.push_back(static_cast<Coloring::Color>(x % c));
        return Coloring(Grid({Int(c + 1)}), c, std::move(cells));
    }

    const Coloring base = minimal_coloring(colors, dimension - 1);
    const auto base_dims = base.grid().dims64();
    const LocatedBox base_box = locate_unique_box(base);

    const auto tuples = axis_pair_tuples(base_dims);
    const std::int64_t layer_count = static_cast<std::int64_t>(tuples.size()) * c;

    const Grid full_grid = [&] {
        std::vector<Int> dims = base.grid().dims();
        dims.push_back(Int(layer_count + 1));
        return Grid(std::move(dims));
    }();
    if (full_grid.volume() > Coloring::kMaxCells)
        throw std::invalid_argument("minimal_coloring: result too large to materialize");

    const std::size_t base_cells = base.cells().size();
    const std::size_t d_prev = base_dims.size();
    std::vector<Coloring::Color> cells(static_cast<std::size_t>(layer_count + 1) * base_cells);

    // Strides of the base grid (last axis fastest).
    std::vector<std::int64_t> stride(d_prev, 1);
    for (std::size_t i = d_prev - 1; i-- > 0;) stride[i] = stride[i + 1] * base_dims[i + 1];

    std::vector<std::vector<std::int64_t>> inverse_perm(d_prev);
    std::vector<std::int64_t> coord(d_prev);
    const std::int64_t stacked = layer_count + 1;

    std::int64_t layer = 0;
    for (const auto& tuple : tuples) {
        // Axis permutations mapping the base box onto `tuple`; cell lookup
        // needs the inverse direction (result coordinate -> base coordinate).
        for (std::size_t i = 0; i < d_prev; ++i)
            inverse_perm[i] = pair_permutation(base_dims[i], tuple[i], base_box.pairs[i]);
        for (std::int64_t target_color = 0; target_color < c; ++target_color, ++layer) {
            // Color relabeling: base_box.color -> target_color, the rest in order.
            std::vector<Coloring::Color> recolor(static_cast<std::size_t>(c));
            {
                std::int64_t next = 0;
                std::vector<Coloring::Color> slots;
                for (std::int64_t s = 0; s < c; ++s)
                    if (s != target_color) slots.push_back(static_cast<Coloring::Color>(s));
                for (std::int64_t s = 0; s < c; ++s) {
                    if (s == base_box.color)
                        recolor[static_cast<std::size_t>(s)] =
                            static_cast<Coloring::Color>(target_color);
                    else
                        recolor[static_cast<std::size_t>(s)] = slots[static_cast<std::size_t>(next++)];
                }
            }
            for (std::size_t flat = 0; flat < base_cells; ++flat) {
                std::size_t rem = flat;
                std::int64_t base_flat = 0;
                for (std::size_t i = 0; i < d_prev; ++i) {
                    coord[i] = static_cast<std::int64_t>(rem / static_cast<std::size_t>(stride[i]));
                    rem %= static_cast<std::size_t>(stride[i]);
                    base_flat += inverse_perm[i][static_cast<std::size_t>(coord[i])] * stride[i];
                }
                const Coloring::Color value = recolor[base.cells()[static_cast<std::size_t>(base_flat)]];
                cells[flat * static_cast<std::size_t>(stacked) + static_cast<std::size_t>(layer)] =
                    value;
            }
        }
    }
    // Duplicate layer 0 as the final hyperplane.
    for (std::size_t flat = 0; flat < base_cells; ++flat) {
        cells[flat * static_cast<std::size_t>(stacked) + static_cast<std::size_t>(layer_count)] =
            cells[flat * static_cast<std::size_t>(stacked)];
    }
    return Coloring(full_grid, c, std::move(cells));
}

Certificate mu_guarantee_certificate(const Int& colors, int dimension) {
    const auto mu = mu_sequence(colors, dimension);
    Certificate cert = pigeonhole_certificate(colors, Grid({mu[0]}));
    for (int j = 2; j <= dimension; ++j) {
        Grid prefix(std::vector<Int>(mu.begin(), mu.begin() + j));
        const Int virt = virtual_color_count(colors, prefix, j - 1);
        Certificate last_axis =
            pigeonhole_certificate(virt, Grid({mu[static_cast<std::size_t>(j - 1)]}));
        cert = compose_guarantee(cert, last_axis);
    }
    return cert;
}

}  // namespace gridramsey::bounds
