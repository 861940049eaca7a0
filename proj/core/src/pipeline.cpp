#include "gridramsey/pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace gridramsey::pipeline {

Int product_extension(const Int& colors, const Grid& grid, const Int& t) {
    if (t < 1) throw std::invalid_argument("product_extension: t must be >= 1");
    const Int m = box_count(grid);
    if (m == 0) throw std::invalid_argument("product_extension: grid has no boxes");
    return floor_div(colors * m, t) + 1;
}

Certificate product_extension_certificate(const Int& colors, const Grid& grid, const Int& t,
                                          const Certificate& base) {
    if (base.verdict != Verdict::kGuaranteed)
        throw std::invalid_argument("product_extension_certificate: base must be guaranteed");
    const Int k = product_extension(colors, grid, t);
    std::vector<Int> dims = grid.dims();
    dims.push_back(k);

    Certificate cert;
    cert.verdict = Verdict::kGuaranteed;
    cert.method = "product";
    cert.colors = colors;
    cert.grid = Grid(std::move(dims));
    cert.params["t"] = t.str();
    cert.params["boxes"] = box_count(grid).str();
    cert.params["extension"] = k.str();
    cert.sub_certificates.push_back(base);
    return cert;
}

BestT best_t(const Int& colors, const Grid& grid_2d, const search::SearchBudget& budget) {
    if (colors != 2) throw std::invalid_argument("best_t: implemented for two colors");
    if (grid_2d.dimension() != 2) throw std::invalid_argument("best_t: grid must be 2-D");
    const auto dims = grid_2d.dims64();
    const std::int64_t r = std::min(dims[0], dims[1]);
    const std::int64_t s = std::max(dims[0], dims[1]);

    BestT result;
    if (r <= 6 && s <= 128) {
        qform::MinRectanglesResult exact = qform::min_rectangles(static_cast<int>(r), s, budget);
        result.nodes = exact.nodes;
        if (exact.minimum) {
            result.t = *exact.minimum;
            result.exact = true;
            result.method = "exhaustive";
            return result;
        }
    }
    result.t = bounds::guaranteed_count_lower_bound_ceiling(colors, grid_2d);
    result.exact = false;
    result.method = "delta";
    return result;
}

std::optional<Int> least_a3_delta(const Int& colors, const Int& a1, const Int& a2,
                                  const Int& cap) {
    if (a1 < 2 || a2 < 2) throw std::invalid_argument("least_a3_delta: sides must be >= 2");
    const Grid base({a1, a2});
    const Int t2 = bounds::guaranteed_count_lower_bound_ceiling(colors, base);
    if (t2 < 1) return std::nullopt;

    // Third step positive iff a3 * t2 > M2 * c.
    const Int m2 = box_count(base);
    const Int a3 = floor_div(m2 * colors, t2) + 1;
    if (a3 > cap) return std::nullopt;

    // The scan semantics: the recurrence must be positive at a3 and not
    // at a3 - 1.
    const auto value_at = [&](const Int& last) {
        return bounds::guaranteed_count_lower_bound_ceiling(colors, Grid({a1, a2, last}));
    };
    if (value_at(a3) < 1) throw std::logic_error("least_a3_delta: threshold misplaced");
    if (a3 > 2 && value_at(a3 - 1) >= 1) throw std::logic_error("least_a3_delta: not minimal");
    return a3;
}

std::string to_string(TableMethod method) {
    switch (method) {
        case TableMethod::kProduct: return "product";
        case TableMethod::kDelta: return "delta";
        case TableMethod::kDominance: return "dominance";
        case TableMethod::kNone: return "none";
    }
    return "none";
}

const BoundTableEntry& BoundTable::at(std::int64_t a1, std::int64_t a2) const {
    const std::int64_t cols = options.a2_max - options.a2_min + 1;
    const std::int64_t row = a1 - options.a1_min;
    const std::int64_t col = a2 - options.a2_min;
    if (row < 0 || col < 0 || a1 > options.a1_max || a2 > options.a2_max)
        throw std::out_of_range("BoundTable::at: cell outside range");
    return entries[static_cast<std::size_t>(row * cols + col)];
}

std::string BoundTable::to_csv() const {
    std::ostringstream out;
    out << "a1\\a2";
    for (std::int64_t a2 = options.a2_min; a2 <= options.a2_max; ++a2) out << ',' << a2;
    out << '\n';
    for (std::int64_t a1 = options.a1_min; a1 <= options.a1_max; ++a1) {
        out << a1;
        for (std::int64_t a2 = options.a2_min; a2 <= options.a2_max; ++a2) {
            out << ',';
            const auto& cell = at(a1, a2);
            if (cell.a3_bound) out << *cell.a3_bound;
        }
        out << '\n';
    }
    return out.str();
}

std::string BoundTable::to_markdown() const {
    std::ostringstream out;
    out << "|      |";
    for (std::int64_t a2 = options.a2_min; a2 <= options.a2_max; ++a2) out << ' ' << a2 << " |";
    out << "\n|------|";
    for (std::int64_t a2 = options.a2_min; a2 <= options.a2_max; ++a2) out << "----|";
    out << '\n';
    for (std::int64_t a1 = options.a1_min; a1 <= options.a1_max; ++a1) {
        out << "| " << a1 << " |";
        for (std::int64_t a2 = options.a2_min; a2 <= options.a2_max; ++a2) {
            const auto& cell = at(a1, a2);
            out << ' ';
            if (cell.a3_bound) out << *cell.a3_bound;
            else out << ' ';
            out << " |";
        }
        out << '\n';
    }
    return out.str();
}

std::string BoundTable::to_surface_csv() const {
    std::ostringstream out;
    out << "a1,a2,a3\n";
    for (const auto& cell : entries) {
        if (cell.a3_bound) out << cell.a1 << ',' << cell.a2 << ',' << *cell.a3_bound << '\n';
    }
    return out.str();
}

BoundTable a3_table(const Int& colors, const TableOptions& options) {
    if (colors != 2) throw std::invalid_argument("a3_table: implemented for two colors");
    if (options.a1_min < 2 || options.a2_min < 2 || options.a1_max < options.a1_min ||
        options.a2_max < options.a2_min)
        throw std::invalid_argument("a3_table: bad range");

    BoundTable table;
    table.options = options;
    const std::int64_t rows = options.a1_max - options.a1_min + 1;
    const std::int64_t cols = options.a2_max - options.a2_min + 1;
    table.entries.resize(static_cast<std::size_t>(rows * cols));

    auto entry_at = [&](std::int64_t a1, std::int64_t a2) -> BoundTableEntry& {
        return table.entries[static_cast<std::size_t>((a1 - options.a1_min) * cols +
                                                      (a2 - options.a2_min))];
    };

    for (std::int64_t a1 = options.a1_min; a1 <= options.a1_max; ++a1) {
        for (std::int64_t a2 = options.a2_min; a2 <= options.a2_max; ++a2) {
            BoundTableEntry& cell = entry_at(a1, a2);
            cell.a1 = a1;
            cell.a2 = a2;

            // Mirror of an already-computed transposed cell.
            if (a2 < a1 && a2 >= options.a1_min && a1 <= options.a2_max) {
                const BoundTableEntry& twin = entry_at(a2, a1);
                cell.a3_bound = twin.a3_bound;
                cell.method = twin.method;
                cell.t_used = twin.t_used;
                cell.t_exact = twin.t_exact;
                cell.certificate = twin.certificate;
                continue;
            }

            const Grid base({Int(a1), Int(a2)});

            // Candidates in recorded-method priority order: product with
            // exact t, product with the recurrence t, recurrence scan,
            // dominance closure.
            struct Candidate {
                Int value;
                TableMethod method;
                std::optional<Int> t;
                bool exact;
                Certificate cert;
            };
            std::vector<Candidate> candidates;

            const BestT t_info = best_t(colors, base, options.budget);
            if (t_info.t >= 1) {
                Certificate base_cert;
                base_cert.verdict = Verdict::kGuaranteed;
                base_cert.method = t_info.method;
                base_cert.colors = colors;
                base_cert.grid = base;
                base_cert.params["t"] = t_info.t.str();
                base_cert.params["t_exact"] = t_info.exact;
                Certificate cert =
                    product_extension_certificate(colors, base, t_info.t, base_cert);
                candidates.push_back({product_extension(colors, base, t_info.t),
                                      TableMethod::kProduct, t_info.t, t_info.exact,
                                      std::move(cert)});
            }

            if (const auto scan = least_a3_delta(colors, Int(a1), Int(a2))) {
                Certificate cert;
                cert.verdict = Verdict::kGuaranteed;
                cert.method = "delta";
                cert.colors = colors;
                cert.grid = Grid({Int(a1), Int(a2), *scan});
                candidates.push_back({*scan, TableMethod::kDelta, std::nullopt, true,
                                      std::move(cert)});
            }

            // Dominance over smaller already-final cells; a canonical
            // source (x <= y) covers this cell when it fits under the
            // sorted sides.
            const std::int64_t lo = std::min(a1, a2);
            const std::int64_t hi = std::max(a1, a2);
            for (std::int64_t x = options.a1_min; x <= std::min(lo, options.a1_max); ++x) {
                for (std::int64_t y = options.a2_min; y <= std::min(hi, options.a2_max); ++y) {
                    if (x > y) continue;  // canonical cells only
                    if (x > a1 || (x == a1 && y >= a2)) continue;  // not computed yet / self
                    const BoundTableEntry& source = entry_at(x, y);
                    if (!source.a3_bound) continue;
                    Certificate cert;
                    cert.verdict = Verdict::kGuaranteed;
                    cert.method = "dominance";
                    cert.colors = colors;
                    cert.grid = Grid({Int(a1), Int(a2), *source.a3_bound});
                    cert.params["dominates"] =
                        Grid({Int(x), Int(y), *source.a3_bound}).to_string();
                    if (source.certificate) cert.sub_certificates.push_back(*source.certificate);
                    candidates.push_back({*source.a3_bound, TableMethod::kDominance,
                                          std::nullopt, false, std::move(cert)});
                }
            }

            if (candidates.empty()) continue;  // blank cell
            const Int best_value =
                std::min_element(candidates.begin(), candidates.end(),
                                 [](const Candidate& a, const Candidate& b) {
                                     return a.value < b.value;
                                 })
                    ->value;
            for (Candidate& candidate : candidates) {
                if (candidate.value == best_value) {
                    cell.a3_bound = candidate.value;
                    cell.method = candidate.method;
                    cell.t_used = candidate.t;
                    cell.t_exact = candidate.exact;
                    cell.certificate = std::move(candidate.cert);
                    break;
                }
            }
        }
    }
    return table;
}

ObstructionCountBound obstruction_count_exponent(int dimension) {
    if (dimension < 2)
        throw std::invalid_argument("obstruction_count_exponent: dimension must be >= 2");
    if (dimension == 2) return {2, Rat(2), Int(2)};
    const Int power = ipow(3, static_cast<std::uint64_t>(dimension - 3));
    return {dimension, Rat(17 * power - 1, 2), std::nullopt};
}

}  // namespace gridramsey::pipeline
