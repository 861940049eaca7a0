#include "gridramsey/search.hpp"

#include "gridramsey/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace gridramsey::search {

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
    std::int64_t max_nodes;
    Clock::time_point deadline;
    std::atomic<std::int64_t> nodes{0};
    std::atomic<bool> exhausted{false};

    explicit Budget(const SearchBudget& b)
        : max_nodes(b.max_nodes), deadline(Clock::now() + std::chrono::seconds(b.max_seconds)) {}

    // Returns false once the budget is spent. Time is polled sparsely.
    bool tick() {
        const std::int64_t n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > max_nodes) {
            exhausted.store(true, std::memory_order_relaxed);
            return false;
        }
        if ((n & 0xFFF) == 0 && Clock::now() > deadline) {
            exhausted.store(true, std::memory_order_relaxed);
            return false;
        }
        return !exhausted.load(std::memory_order_relaxed);
    }
};

std::vector<std::int64_t> strides_of(const std::vector<std::int64_t>& dims) {
    std::vector<std::int64_t> stride(dims.size(), 1);
    for (std::size_t i = dims.size() - 1; i-- > 0;) stride[i] = stride[i + 1] * dims[i + 1];
    return stride;
}

// ---------------------------------------------------------------------------
// 2-D search over column color-vector multisets.
//
// A 2-coloring-free pair condition: two columns (including two copies of
// one type) may share at most one row per color. Any box-free coloring is
// a pairwise-compatible multiset of column types and vice versa, so the
// search walks nondecreasing type sequences with incremental candidate
// bitsets, clique-style.
// ---------------------------------------------------------------------------

class ColumnMultisetSearch {
public:
    static constexpr std::int64_t kMaxTypes = 1 << 14;

    ColumnMultisetSearch(std::int64_t colors, std::int64_t rows, std::int64_t cols)
        : c_(colors), rows_(rows), cols_(cols) {
        type_count_ = 1;
        for (std::int64_t i = 0; i < rows_; ++i) {
            type_count_ *= c_;
            if (type_count_ > kMaxTypes) throw std::overflow_error("too many column types");
        }
        build_masks();
        build_adjacency();
    }

    static bool feasible(std::int64_t colors, std::int64_t rows) {
        std::int64_t t = 1;
        for (std::int64_t i = 0; i < rows; ++i) {
            t *= colors;
            if (t > kMaxTypes) return false;
        }
        return true;
    }

    // Finds a box-free multiset of `cols_` column types, or proves none.
    Outcome run(Budget& budget, int shards, std::vector<std::int64_t>* out_types) {
        std::vector<std::int64_t> roots;
        for (std::int64_t u = 0; u < type_count_; ++u) {
            if (is_rgs(u)) roots.push_back(u);
        }
        found_.store(false);
        if (shards <= 1) {
            for (std::int64_t root : roots) {
                if (run_root(root, budget, out_types)) return Outcome::kFound;
                if (budget.exhausted.load()) return Outcome::kBudget;
            }
            return budget.exhausted.load() ? Outcome::kBudget : Outcome::kExhausted;
        }

        std::vector<std::thread> workers;
        std::atomic<std::size_t> next{0};
        std::mutex result_mutex;
        std::vector<std::int64_t> result;
        for (int w = 0; w < shards; ++w) {
            workers.emplace_back([&] {
                std::vector<std::int64_t> local;
                while (!found_.load(std::memory_order_relaxed) &&
                       !budget.exhausted.load(std::memory_order_relaxed)) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= roots.size()) return;
                    if (run_root(roots[i], budget, &local)) {
                        std::lock_guard<std::mutex> lock(result_mutex);
                        if (result.empty()) result = local;
                        return;
                    }
                }
            });
        }
        for (auto& t : workers) t.join();
        if (found_.load()) {
            *out_types = result;
            return Outcome::kFound;
        }
        return budget.exhausted.load() ? Outcome::kBudget : Outcome::kExhausted;
    }

    std::int64_t digit(std::int64_t type, std::int64_t row) const {
        for (std::int64_t i = rows_ - 1; i > row; --i) type /= c_;
        return type % c_;
    }

private:
    void build_masks() {
        masks_.assign(static_cast<std::size_t>(type_count_ * c_), 0);
        for (std::int64_t u = 0; u < type_count_; ++u) {
            std::int64_t t = u;
            for (std::int64_t row = rows_ - 1; row >= 0; --row) {
                const std::int64_t col = t % c_;
                t /= c_;
                masks_[static_cast<std::size_t>(u * c_ + col)] |= (std::uint64_t(1) << row);
            }
        }
    }

    bool compatible(std::int64_t u, std::int64_t v) const {
        for (std::int64_t col = 0; col < c_; ++col) {
            const std::uint64_t overlap = masks_[static_cast<std::size_t>(u * c_ + col)] &
                                          masks_[static_cast<std::size_t>(v * c_ + col)];
            if (std::popcount(overlap) > 1) return false;
        }
        return true;
    }

    void build_adjacency() {
        words_ = static_cast<std::size_t>((type_count_ + 63) / 64);
        adjacency_.assign(static_cast<std::size_t>(type_count_) * words_, 0);
        for (std::int64_t u = 0; u < type_count_; ++u) {
            for (std::int64_t v = u; v < type_count_; ++v) {
                if (compatible(u, v)) {
                    set_bit(u, v);
                    if (u != v) set_bit(v, u);
                }
            }
        }
    }

    void set_bit(std::int64_t u, std::int64_t v) {
        adjacency_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v >> 6)] |=
            std::uint64_t(1) << (v & 63);
    }

    const std::uint64_t* row(std::int64_t u) const {
        return adjacency_.data() + static_cast<std::size_t>(u) * words_;
    }

    // Canonical first type: digits introduce colors in increasing order,
    // which is always reachable by a global color permutation.
    bool is_rgs(std::int64_t type) const {
        std::int64_t max_seen = -1;
        for (std::int64_t row_idx = 0; row_idx < rows_; ++row_idx) {
            const std::int64_t d = digit(type, row_idx);
            if (d > max_seen + 1) return false;
            max_seen = std::max(max_seen, d);
        }
        return true;
    }

    bool run_root(std::int64_t root, Budget& budget, std::vector<std::int64_t>* out) {
        std::vector<std::uint64_t> cand(words_);
        std::memcpy(cand.data(), row(root), words_ * sizeof(std::uint64_t));
        std::vector<std::int64_t> chosen{root};
        return dfs(root, cols_ - 1, cand, chosen, budget, out);
    }

    bool dfs(std::int64_t last, std::int64_t remaining, const std::vector<std::uint64_t>& cand,
             std::vector<std::int64_t>& chosen, Budget& budget, std::vector<std::int64_t>* out) {
        if (found_.load(std::memory_order_relaxed)) return false;
        if (!budget.tick()) return false;
        if (remaining == 0) {
            found_.store(true, std::memory_order_relaxed);
            *out = chosen;
            return true;
        }
        // Iterate candidates >= last.
        for (std::size_t word = static_cast<std::size_t>(last >> 6); word < words_; ++word) {
            std::uint64_t bits = cand[word];
            if (word == static_cast<std::size_t>(last >> 6)) bits &= ~std::uint64_t(0) << (last & 63);
            while (bits) {
                const int bit = std::countr_zero(bits);
                bits &= bits - 1;
                const std::int64_t v = static_cast<std::int64_t>(word * 64 + static_cast<std::size_t>(bit));
                std::vector<std::uint64_t> next_cand(words_);
                const std::uint64_t* adj = row(v);
                for (std::size_t i = 0; i < words_; ++i) next_cand[i] = cand[i] & adj[i];
                chosen.push_back(v);
                if (dfs(v, remaining - 1, next_cand, chosen, budget, out)) return true;
                chosen.pop_back();
                if (budget.exhausted.load(std::memory_order_relaxed)) return false;
            }
        }
        return false;
    }

    std::int64_t c_, rows_, cols_, type_count_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> masks_;      // per (type, color): bitmask of rows
    std::vector<std::uint64_t> adjacency_;  // pairwise compatibility bitsets
    std::atomic<bool> found_{false};
};

// ---------------------------------------------------------------------------
// Generic cell-order backtracking (any dimension).
// ---------------------------------------------------------------------------

struct CellProblem {
    std::vector<std::int64_t> dims;
    std::vector<std::int64_t> stride;
    std::int64_t volume = 0;
    std::int64_t colors = 0;
    std::vector<std::vector<std::int64_t>> coords;  // per flat cell

    CellProblem(const Grid& grid, std::int64_t c) : colors(c) {
        if (c > 32000) throw std::overflow_error("too many colors for cell search");
        dims = grid.dims64();
        stride = strides_of(dims);
        volume = 1;
        for (std::int64_t a : dims) volume *= a;
        if (volume > 1'000'000) throw std::overflow_error("grid too large for cell search");
        coords.resize(static_cast<std::size_t>(volume));
        for (std::int64_t flat = 0; flat < volume; ++flat) {
            std::vector<std::int64_t> x(dims.size());
            std::int64_t rem = flat;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                x[i] = rem / stride[i];
                rem %= stride[i];
            }
            coords[static_cast<std::size_t>(flat)] = std::move(x);
        }
    }
};

// Counts monochromatic boxes whose maximal corner is `flat` colored
// `color` against already-assigned cells; stops early at `limit`.
std::int64_t boxes_completed_at(const CellProblem& problem,
                                const std::vector<std::int16_t>& cells, std::int64_t flat,
                                std::int64_t color, std::int64_t limit) {
    const auto& x = problem.coords[static_cast<std::size_t>(flat)];
    const std::size_t d = problem.dims.size();
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i] == 0) return 0;
    }
    std::int64_t count = 0;
    std::vector<std::int64_t> y(d, 0);
    while (true) {
        // Check the box with lower corner y, upper corner x.
        bool mono = true;
        for (std::uint64_t mask = 0; mono && mask < (std::uint64_t(1) << d) - 1; ++mask) {
            std::int64_t corner = 0;
            for (std::size_t i = 0; i < d; ++i)
                corner += (((mask >> i) & 1) ? x[i] : y[i]) * problem.stride[i];
            if (cells[static_cast<std::size_t>(corner)] != color) mono = false;
        }
        if (mono && ++count >= limit) return count;
        std::size_t axis = d;
        bool advanced = false;
        while (axis > 0) {
            --axis;
            if (y[axis] + 1 < x[axis]) {
                ++y[axis];
                advanced = true;
                break;
            }
            y[axis] = 0;
        }
        if (!advanced) return count;
    }
}

class CellFinder {
public:
    CellFinder(const Grid& grid, std::int64_t colors) : problem_(grid, colors) {}

    Outcome run(Budget& budget, std::vector<std::int16_t>* out) {
        cells_.assign(static_cast<std::size_t>(problem_.volume), -1);
        const Outcome result = dfs(0, 0, budget);
        if (result == Outcome::kFound) *out = cells_;
        return result;
    }

private:
    Outcome dfs(std::int64_t flat, std::int64_t used, Budget& budget) {
        if (flat == problem_.volume) return Outcome::kFound;
        if (!budget.tick()) return Outcome::kBudget;
        const std::int64_t top = std::min<std::int64_t>(used, problem_.colors - 1);
        bool budget_hit = false;
        for (std::int64_t color = 0; color <= top; ++color) {
            if (boxes_completed_at(problem_, cells_, flat, color, 1) > 0) continue;
            cells_[static_cast<std::size_t>(flat)] = static_cast<std::int16_t>(color);
            const Outcome sub =
                dfs(flat + 1, std::max(used, color + 1), budget);
            if (sub == Outcome::kFound) return sub;
            if (sub == Outcome::kBudget) budget_hit = true;
            cells_[static_cast<std::size_t>(flat)] = -1;
        }
        return budget_hit ? Outcome::kBudget : Outcome::kExhausted;
    }

    CellProblem problem_;
    std::vector<std::int16_t> cells_;
};

// Branch and bound minimizer for the monochromatic box count. The number
// of boxes completed so far never decreases along the assignment order,
// so `partial >= best` prunes. 1-D additionally gets an exact remaining
// bound (balanced filling of color classes).
class CellMinimizer {
public:
    CellMinimizer(const Grid& grid, std::int64_t colors) : problem_(grid, colors) {
        is_1d_ = problem_.dims.size() == 1;
        is_2d_fast_ = problem_.dims.size() == 2 && problem_.dims[1] <= 64 &&
                      problem_.colors <= 16;
    }

    // `incumbent` may carry a known-achievable value (e.g. 0 for grids with
    // a box-free coloring); the search only improves on it.
    Outcome run(Budget& budget, std::int64_t incumbent_bound,
                std::vector<std::int16_t>* best_cells, std::int64_t* best_value) {
        best_ = incumbent_bound;
        have_cells_ = false;
        cells_.assign(static_cast<std::size_t>(problem_.volume), -1);
        tally_.assign(static_cast<std::size_t>(problem_.colors), 0);
        if (is_2d_fast_)
            row_bits_.assign(static_cast<std::size_t>(problem_.colors * problem_.dims[0]), 0);
        const Outcome outcome = dfs(0, 0, 0, budget);
        if (outcome == Outcome::kBudget) return Outcome::kBudget;
        *best_value = best_;
        if (have_cells_) *best_cells = best_cells_storage_;
        return Outcome::kExhausted;
    }

private:
    // Minimum extra pairs when `remaining` items fill classes with the
    // current 1-D tallies as evenly as possible.
    std::int64_t waterfill_bound(std::int64_t remaining) const {
        std::vector<std::int64_t> t = tally_;
        std::int64_t extra = 0;
        for (std::int64_t i = 0; i < remaining; ++i) {
            auto it = std::min_element(t.begin(), t.end());
            extra += *it;
            ++*it;
        }
        return extra;
    }

    std::int64_t delta_for(std::int64_t flat, std::int64_t color) {
        if (is_1d_) return tally_[static_cast<std::size_t>(color)];
        if (is_2d_fast_) {
            const std::int64_t cols = problem_.dims[1];
            const std::int64_t r = flat / cols;
            const std::int64_t j = flat % cols;
            std::int64_t count = 0;
            const std::uint64_t mine = row_bits_[static_cast<std::size_t>(color * problem_.dims[0] + r)];
            for (std::int64_t r2 = 0; r2 < r; ++r2) {
                if (cells_[static_cast<std::size_t>(r2 * cols + j)] == color) {
                    count += std::popcount(
                        mine & row_bits_[static_cast<std::size_t>(color * problem_.dims[0] + r2)]);
                }
            }
            return count;
        }
        return boxes_completed_at(problem_, cells_, flat, color,
                                  std::numeric_limits<std::int64_t>::max());
    }

    void apply(std::int64_t flat, std::int64_t color) {
        cells_[static_cast<std::size_t>(flat)] = static_cast<std::int16_t>(color);
        ++tally_[static_cast<std::size_t>(color)];
        if (is_2d_fast_) {
            const std::int64_t cols = problem_.dims[1];
            row_bits_[static_cast<std::size_t>(color * problem_.dims[0] + flat / cols)] |=
                std::uint64_t(1) << (flat % cols);
        }
    }

    void undo(std::int64_t flat, std::int64_t color) {
        cells_[static_cast<std::size_t>(flat)] = -1;
        --tally_[static_cast<std::size_t>(color)];
        if (is_2d_fast_) {
            const std::int64_t cols = problem_.dims[1];
            row_bits_[static_cast<std::size_t>(color * problem_.dims[0] + flat / cols)] &=
                ~(std::uint64_t(1) << (flat % cols));
        }
    }

    Outcome dfs(std::int64_t flat, std::int64_t used, std::int64_t partial, Budget& budget) {
        if (partial >= best_) return Outcome::kExhausted;
        if (flat == problem_.volume) {
            best_ = partial;
            best_cells_storage_ = cells_;
            have_cells_ = true;
            return Outcome::kExhausted;
        }
        if (!budget.tick()) return Outcome::kBudget;
        if (is_1d_ && partial + waterfill_bound(problem_.volume - flat) >= best_)
            return Outcome::kExhausted;

        const std::int64_t top = std::min<std::int64_t>(used, problem_.colors - 1);
        std::vector<std::pair<std::int64_t, std::int64_t>> moves;  // (delta, color)
        moves.reserve(static_cast<std::size_t>(top + 1));
        for (std::int64_t color = 0; color <= top; ++color)
            moves.emplace_back(delta_for(flat, color), color);
        std::stable_sort(moves.begin(), moves.end());

        bool budget_hit = false;
        for (const auto& [delta, color] : moves) {
            if (partial + delta >= best_) continue;  // moves are delta-sorted but best_ moves
            apply(flat, color);
            const Outcome sub = dfs(flat + 1, std::max(used, color + 1), partial + delta, budget);
            undo(flat, color);
            if (sub == Outcome::kBudget) budget_hit = true;
        }
        return budget_hit ? Outcome::kBudget : Outcome::kExhausted;
    }

    CellProblem problem_;
    bool is_1d_ = false;
    bool is_2d_fast_ = false;
    std::vector<std::int16_t> cells_;
    std::vector<std::int64_t> tally_;
    std::vector<std::uint64_t> row_bits_;  // per (color, row): columns of that color
    std::int64_t best_ = 0;
    bool have_cells_ = false;
    std::vector<std::int16_t> best_cells_storage_;
};

Coloring cells_to_coloring(const Grid& grid, std::int64_t colors,
                           const std::vector<std::int16_t>& cells) {
    std::vector<Coloring::Color> out(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        out[i] = static_cast<Coloring::Color>(cells[i]);
    return Coloring(grid, colors, std::move(out));
}

bool has_thin_side(const std::vector<std::int64_t>& dims) {
    return std::any_of(dims.begin(), dims.end(), [](std::int64_t a) { return a < 2; });
}

// Box-free coloring by an axis of side <= c: color every cell by that
// coordinate; every box spans two distinct values there.
Coloring axis_coloring(const Grid& grid, std::int64_t colors, std::size_t axis) {
    const auto dims = grid.dims64();
    const auto stride = strides_of(dims);
    std::int64_t volume = 1;
    for (std::int64_t a : dims) volume *= a;
    std::vector<Coloring::Color> cells(static_cast<std::size_t>(volume));
    for (std::int64_t flat = 0; flat < volume; ++flat)
        cells[static_cast<std::size_t>(flat)] =
            static_cast<Coloring::Color>((flat / stride[axis]) % dims[axis]);
    return Coloring(grid, colors, std::move(cells));
}

}  // namespace

void SearchBudget::validate() const {
    if (max_nodes <= 0 || max_seconds <= 0 || parallel_shards <= 0)
        throw std::invalid_argument("SearchBudget: all limits must be positive");
}

ColoringSearchResult find_coloring(const Int& colors, const Grid& grid,
                                   const SearchBudget& budget_spec) {
    budget_spec.validate();
    if (colors < 1) throw std::invalid_argument("find_coloring: colors must be >= 1");

    ColoringSearchResult result{Outcome::kExhausted, std::nullopt, 0};
    const auto dims = grid.dims64();
    Budget budget(budget_spec);

    // Degenerate: no boxes exist at all, so one color is a witness.
    if (has_thin_side(dims)) {
        result.outcome = Outcome::kFound;
        result.coloring = Coloring::uniform(grid, 1);
        return result;
    }
    // An axis of side <= c admits the coordinate coloring.
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (Int(dims[i]) <= colors) {
            result.outcome = Outcome::kFound;
            result.coloring = axis_coloring(grid, dims[i], i);
            return result;
        }
    }
    // Beyond this point every side exceeds c, so c fits in machine range.
    const std::int64_t c = static_cast<std::int64_t>(colors);

    if (dims.size() == 2) {
        const bool transpose = dims[0] > dims[1];
        const std::int64_t rows = std::min(dims[0], dims[1]);
        const std::int64_t cols = std::max(dims[0], dims[1]);
        if (ColumnMultisetSearch::feasible(c, rows)) {
            ColumnMultisetSearch engine(c, rows, cols);
            std::vector<std::int64_t> types;
            const Outcome outcome = engine.run(budget, budget_spec.parallel_shards, &types);
            result.outcome = outcome;
            result.nodes = budget.nodes.load();
            if (outcome == Outcome::kFound) {
                std::vector<Coloring::Color> cells(static_cast<std::size_t>(dims[0] * dims[1]));
                for (std::int64_t j = 0; j < cols; ++j) {
                    for (std::int64_t i = 0; i < rows; ++i) {
                        const auto value =
                            static_cast<Coloring::Color>(engine.digit(types[static_cast<std::size_t>(j)], i));
                        const std::int64_t flat = transpose ? j * dims[1] + i : i * dims[1] + j;
                        cells[static_cast<std::size_t>(flat)] = value;
                    }
                }
                result.coloring = Coloring(grid, c, std::move(cells));
            }
            return result;
        }
    }

    CellFinder finder(grid, c);
    std::vector<std::int16_t> cells;
    const Outcome outcome = finder.run(budget, &cells);
    result.outcome = outcome;
    result.nodes = budget.nodes.load();
    if (outcome == Outcome::kFound) result.coloring = cells_to_coloring(grid, c, cells);
    return result;
}

MinBoxesResult min_mono_boxes_exact(const Int& colors, const Grid& grid,
                                    const SearchBudget& budget_spec) {
    budget_spec.validate();
    if (colors < 1) throw std::invalid_argument("min_mono_boxes_exact: colors must be >= 1");
    MinBoxesResult result;

    const auto dims = grid.dims64();
    if (has_thin_side(dims)) {
        result.minimum = 0;
        result.argmin = Coloring::uniform(grid, 1);
        return result;
    }
    if (colors == 1) {
        // Single color: every box is monochromatic.
        result.minimum = box_count(grid);
        result.argmin = Coloring::uniform(grid, 1);
        return result;
    }

    // A box-free coloring settles the minimum at once.
    ColoringSearchResult free_search = find_coloring(colors, grid, budget_spec);
    result.nodes = free_search.nodes;
    if (free_search.outcome == Outcome::kFound) {
        result.minimum = 0;
        result.argmin = std::move(free_search.coloring);
        return result;
    }
    if (free_search.outcome == Outcome::kBudget) return result;  // unknown

    const std::int64_t c = static_cast<std::int64_t>(colors);
    Budget budget(budget_spec);
    CellMinimizer minimizer(grid, c);
    std::vector<std::int16_t> best_cells;
    std::int64_t best_value = std::numeric_limits<std::int64_t>::max();
    const Outcome outcome =
        minimizer.run(budget, std::numeric_limits<std::int64_t>::max(), &best_cells, &best_value);
    result.nodes += budget.nodes.load();
    if (outcome == Outcome::kBudget) return result;
    result.minimum = Int(best_value);
    if (!best_cells.empty()) result.argmin = cells_to_coloring(grid, c, best_cells);
    return result;
}

Certificate is_guaranteed_exact(const Int& colors, const Grid& grid,
                                const SearchBudget& budget) {
    ColoringSearchResult search = find_coloring(colors, grid, budget);
    if (search.outcome == Outcome::kFound) {
        Certificate cert = make_colorable_certificate(colors, std::move(*search.coloring));
        cert.params["nodes"] = search.nodes;
        return cert;
    }
    if (search.outcome == Outcome::kExhausted) {
        Certificate cert;
        cert.verdict = Verdict::kGuaranteed;
        cert.method = "exhaustive";
        cert.colors = colors;
        cert.grid = grid;
        cert.params["nodes"] = search.nodes;
        return cert;
    }
    return make_unknown_certificate(colors, grid, "search budget exhausted");
}

namespace {

// Monotone grids within caps, in increasing side-sum order (a linear
// extension of dominance, so decrements and dominators come first).
std::vector<std::vector<std::int64_t>> monotone_grids_within(
    const std::vector<std::int64_t>& caps) {
    std::vector<std::vector<std::int64_t>> grids;
    std::vector<std::int64_t> current(caps.size(), 1);
    while (true) {
        if (std::is_sorted(current.begin(), current.end())) grids.push_back(current);
        std::size_t axis = caps.size();
        bool advanced = false;
        while (axis > 0) {
            --axis;
            if (current[axis] + 1 <= caps[axis]) {
                ++current[axis];
                advanced = true;
                break;
            }
            current[axis] = 1;
        }
        if (!advanced) break;
    }
    std::sort(grids.begin(), grids.end(),
              [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
                  const std::int64_t sa = std::accumulate(a.begin(), a.end(), std::int64_t(0));
                  const std::int64_t sb = std::accumulate(b.begin(), b.end(), std::int64_t(0));
                  if (sa != sb) return sa < sb;
                  return a < b;
              });
    return grids;
}

Grid grid_from(const std::vector<std::int64_t>& dims) {
    std::vector<Int> big(dims.begin(), dims.end());
    return Grid(std::move(big));
}

}  // namespace

ObstructionSet obstruction_set(const Int& colors, int dimension, const Grid& caps,
                               const SearchBudget& budget) {
    budget.validate();
    if (caps.dimension() != dimension)
        throw std::invalid_argument("obstruction_set: caps dimension mismatch");
    const Grid sorted_caps = caps.canonicalized();

    ObstructionSet result{colors, dimension, sorted_caps, {}, true, 0, false};

    // Advisory bound on the last coordinate of any monotone minimal
    // guaranteed grid whose earlier coordinates fit the caps: at the final
    // pinch-point step with previous point p, the step inequality gives
    // a_d <= (d-p) * c_p^(2^(d-p-1)) + 2, and c_p is at most the
    // cap-sized virtual color count.
    {
        Int c_max = colors;
        for (int p = 0; p < dimension; ++p) {
            if (p > 0) c_max *= pairs(sorted_caps.dim(p - 1));
            const Int bound =
                Int(dimension - p) *
                    ipow(c_max, std::uint64_t(1) << static_cast<unsigned>(dimension - p - 1)) +
                2;
            result.last_coordinate_bound = std::max(result.last_coordinate_bound, bound);
        }
        result.caps_provably_cover_last =
            sorted_caps.dim(dimension - 1) >= result.last_coordinate_bound;
    }

    const auto cap_dims = sorted_caps.dims64();
    std::map<std::vector<std::int64_t>, Certificate> verdicts;
    std::vector<std::vector<std::int64_t>> guaranteed_minimal;

    std::int64_t nodes_used = 0;
    const auto grids = monotone_grids_within(cap_dims);
    for (const auto& dims : grids) {
        Grid grid = grid_from(dims);
        Certificate cert;

        if (has_thin_side(dims)) {
            cert = make_colorable_certificate(colors, Coloring::uniform(grid, 1), "no-boxes");
        } else if (dimension == 1) {
            if (Int(dims[0]) > colors) {
                cert = bounds::pigeonhole_certificate(colors, grid);
            } else {
                cert = make_colorable_certificate(
                    colors, axis_coloring(grid, dims[0], 0), "axis-coloring");
            }
        } else if (Int(*std::min_element(dims.begin(), dims.end())) <= colors) {
            const std::size_t axis = static_cast<std::size_t>(
                std::min_element(dims.begin(), dims.end()) - dims.begin());
            cert = make_colorable_certificate(colors, axis_coloring(grid, dims[axis], axis),
                                              "axis-coloring");
        } else {
            // Dominance from an already-found minimal guaranteed grid.
            bool dominated = false;
            for (const auto& member : guaranteed_minimal) {
                if (dominance_leq(grid_from(member), grid)) {
                    cert.verdict = Verdict::kGuaranteed;
                    cert.method = "dominance";
                    cert.colors = colors;
                    cert.grid = grid;
                    cert.params["dominates"] = grid_from(member).to_string();
                    cert.sub_certificates.push_back(verdicts.at(member));
                    dominated = true;
                    break;
                }
            }
            if (!dominated) {
                SearchBudget remaining = budget;
                remaining.max_nodes = std::max<std::int64_t>(1, budget.max_nodes - nodes_used);
                cert = is_guaranteed_exact(colors, grid, remaining);
                if (cert.params.contains("nodes"))
                    nodes_used += cert.params["nodes"].get<std::int64_t>();
                if (cert.verdict == Verdict::kUnknown) result.frontier_complete = false;
            }
        }
        verdicts.emplace(dims, cert);

        if (cert.verdict != Verdict::kGuaranteed) continue;

        // Minimal iff every single-coordinate decrement is colorable.
        bool minimal = true;
        std::vector<Certificate> decrement_certs;
        std::vector<std::vector<std::int64_t>> seen;
        for (std::size_t axis = 0; axis < dims.size() && minimal; ++axis) {
            std::vector<std::int64_t> dec = dims;
            dec[axis] -= 1;
            if (dec[axis] == 0) continue;  // no boxes along a vanished axis; treat via thin side
            std::sort(dec.begin(), dec.end());
            if (std::find(seen.begin(), seen.end(), dec) != seen.end()) continue;
            seen.push_back(dec);
            const auto it = verdicts.find(dec);
            if (it == verdicts.end()) {
                minimal = false;  // outside caps; cannot certify minimality
                break;
            }
            if (it->second.verdict == Verdict::kColorable) {
                decrement_certs.push_back(it->second);
            } else {
                minimal = false;
            }
        }
        if (minimal) {
            guaranteed_minimal.push_back(dims);
            result.members.push_back(ObstructionMember{grid, cert, std::move(decrement_certs)});
        }
    }
    return result;
}

ResampleResult moser_tardos_color(const Int& colors, const Grid& grid, std::uint64_t seed,
                                  std::int64_t max_resamples) {
    if (colors < 1 || colors > Coloring::kMaxColors)
        throw std::invalid_argument("moser_tardos_color: colors out of materializable range");
    if (max_resamples < 0) throw std::invalid_argument("moser_tardos_color: negative budget");
    const std::int64_t c = static_cast<std::int64_t>(colors);
    const auto dims = grid.dims64();
    const auto stride = strides_of(dims);
    std::int64_t volume = 1;
    for (std::int64_t a : dims) volume *= a;
    if (volume > Coloring::kMaxCells)
        throw std::invalid_argument("moser_tardos_color: grid too large");

    std::mt19937_64 rng(seed);
    // Unbiased draw in [0, c) by rejection; engine output is fully
    // specified, so results are reproducible across platforms.
    const std::uint64_t bound = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % static_cast<std::uint64_t>(c);
    auto draw = [&]() -> Coloring::Color {
        std::uint64_t x;
        do {
            x = rng();
        } while (x >= bound);
        return static_cast<Coloring::Color>(x % static_cast<std::uint64_t>(c));
    };

    std::vector<Coloring::Color> cells(static_cast<std::size_t>(volume));
    for (auto& cell : cells) cell = draw();

    const std::size_t d = dims.size();
    ResampleResult result;

    if (!has_thin_side(dims)) {
        std::vector<std::pair<std::int64_t, std::int64_t>> box(d, {0, 1});
        for (std::int64_t iteration = 0;; ++iteration) {
            // First monochromatic box in lexicographic pair-tuple order.
            bool found = false;
            std::vector<std::int64_t> corners(std::size_t(1) << d);
            for (auto& p : box) p = {0, 1};
            while (!found) {
                for (std::size_t mask = 0; mask < corners.size(); ++mask) {
                    std::int64_t offset = 0;
                    for (std::size_t i = 0; i < d; ++i)
                        offset += (((mask >> i) & 1) ? box[i].second : box[i].first) * stride[i];
                    corners[mask] = offset;
                }
                const Coloring::Color first = cells[static_cast<std::size_t>(corners[0])];
                bool mono = true;
                for (std::size_t mask = 1; mask < corners.size() && mono; ++mask)
                    if (cells[static_cast<std::size_t>(corners[mask])] != first) mono = false;
                if (mono) {
                    found = true;
                    break;
                }
                // Advance the pair tuple.
                std::size_t axis = d;
                bool advanced = false;
                while (axis > 0) {
                    --axis;
                    auto& [lo, hi] = box[axis];
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
                    box[axis] = {0, 1};
                }
                if (!advanced) break;
            }
            if (!found) break;
            if (result.resamples >= max_resamples) return result;  // failure
            ++result.resamples;
            for (std::int64_t corner : corners) cells[static_cast<std::size_t>(corner)] = draw();
        }
    }

    result.coloring = Coloring(grid, c, std::move(cells));
    return result;
}

}  // namespace gridramsey::search
