#pragma once

#include "gridramsey/bounds.hpp"
#include "gridramsey/certificate.hpp"
#include "gridramsey/grid.hpp"
#include "gridramsey/qform.hpp"
#include "gridramsey/search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gridramsey::pipeline {

/// K = floor(c*M/t) + 1 with M the box count of `grid`: if the grid is
/// (c,t)-guaranteed then grid x [K] is c-guaranteed.
Int product_extension(const Int& colors, const Grid& grid, const Int& t);

/// Product-method certificate for grid x [K], recording t and the held
/// (c,t)-guarantee certificate.
Certificate product_extension_certificate(const Int& colors, const Grid& grid, const Int& t,
                                          const Certificate& base);

/// The best known t with [a1] x [a2] (2,t)-guaranteed: the exact quadratic
/// form minimum when the enumeration fits the budget, otherwise the
/// integer-strengthened recurrence bound.
struct BestT {
    Int t = 0;
    bool exact = false;      // true when the quadratic-form enumeration completed
    std::string method;      // "exhaustive" or "delta"
    std::int64_t nodes = 0;
};
BestT best_t(const Int& colors, const Grid& grid_2d, const search::SearchBudget& budget = {});

/// Least a3 with the integer-strengthened recurrence positive on
/// [a1, a2, a3]; nullopt if no a3 up to `cap` works. The threshold is
/// located in closed form and re-verified by evaluating both sides.
std::optional<Int> least_a3_delta(const Int& colors, const Int& a1, const Int& a2,
                                  const Int& cap = Int(1'000'000));

enum class TableMethod { kProduct, kDelta, kDominance, kNone };
std::string to_string(TableMethod method);

struct BoundTableEntry {
    std::int64_t a1 = 0, a2 = 0;
    std::optional<Int> a3_bound;  // empty = no method produced a bound
    TableMethod method = TableMethod::kNone;
    std::optional<Int> t_used;        // product method only
    bool t_exact = false;             // t came from the completed enumeration
    std::optional<Certificate> certificate;
};

struct TableOptions {
    std::int64_t a1_min = 3, a1_max = 12;
    std::int64_t a2_min = 3, a2_max = 12;
    search::SearchBudget budget{};
};

struct BoundTable {
    TableOptions options;
    std::vector<BoundTableEntry> entries;  // row-major over (a1, a2)

    const BoundTableEntry& at(std::int64_t a1, std::int64_t a2) const;
    std::string to_csv() const;        // matrix layout, blank cells empty
    std::string to_markdown() const;   // aligned pipe table
    std::string to_surface_csv() const;  // "a1,a2,a3" triples, bounded cells only
};

/// Upper-bound table for the least a3 making [a1, a2, a3] 2-guaranteed.
/// Per cell: product extension with the best known t, the recurrence scan,
/// then dominance closure over smaller cells and the transposed cell.
BoundTable a3_table(const Int& colors, const TableOptions& options);

/// Exponent e with |O(c,d)| = O(c^e): (17 * 3^(d-3) - 1)/2 for d >= 3.
/// d = 2 is reported as exponent 2 with constant 2.
struct ObstructionCountBound {
    int dimension;
    Rat exponent;
    std::optional<Int> constant;
};
ObstructionCountBound obstruction_count_exponent(int dimension);

}  // namespace gridramsey::pipeline
