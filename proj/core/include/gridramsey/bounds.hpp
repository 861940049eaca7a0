#pragma once

#include "gridramsey/certificate.hpp"
#include "gridramsey/grid.hpp"

#include <optional>
#include <vector>

namespace gridramsey::bounds {

enum class SequenceKind { kDelta, kGamma, kEpsilon };

/// Exact-rational certificate sequence, indexed 0..d. Delta/Gamma start
/// at 1, epsilon starts at 0 and is strictly increasing.
struct RationalBoundSequence {
    SequenceKind kind;
    Int colors;
    Grid grid;
    std::vector<Rat> terms;

    const Rat& last() const { return terms.back(); }
    bool all_positive_after_first() const;
};

/// Delta recurrence: Delta_0 = 1,
/// Delta_j = Delta_{j-1} * (Delta_{j-1} - (c^(2^(j-1)) - Delta_{j-1})/(a_j - 1)),
/// the expanded form that stays defined when Delta_{j-1} = 0.
/// Requires every side >= 2 and c >= 1.
RationalBoundSequence delta_sequence(const Int& colors, const Grid& grid);

/// Gamma recurrence: Gamma_0 = 1,
/// Gamma_j = Gamma_{j-1} * (Gamma_{j-1} - c^(2^(j-1))/(a_j - 1)).
/// All Gamma_j > 0 certifies the grid guaranteed.
RationalBoundSequence gamma_sequence(const Int& colors, const Grid& grid);

/// Epsilon recurrence: eps_0 = 0, eps_j = 2*eps_{j-1} + c^(2^(j-1))/(a_j - 1);
/// the final term is eps_c(R). eps_c(R) < 1 certifies the grid guaranteed.
RationalBoundSequence epsilon_sequence(const Int& colors, const Grid& grid);

/// Lower bound on the number of monochromatic boxes any c-coloring must
/// contain. Plain form: M*Delta_d/c^(2^d - 1) when all Delta_j > 0, else 0
/// ("no bound" is the value 0, not an error).
Rat guaranteed_count_lower_bound(const Int& colors, const Grid& grid);

/// Integer-strengthened variant: the per-dimension bound is replaced by
/// its ceiling before feeding the next step (box counts are integers, so
/// a (c,t)-guaranteed grid is (c,ceil(t))-guaranteed). Result 0 = no bound.
Int guaranteed_count_lower_bound_ceiling(const Int& colors, const Grid& grid);

/// The grid with a_j = (d+1) * 2^(d-j) * c^(2^(j-1)) + 1, whose epsilon
/// value is exactly d/(d+1).
Grid corollary_grid(const Int& colors, int dimension);

/// Largest integer V with V <= c^(2^d - 1) / (e * 2^d); every grid of
/// volume <= V is c-colorable. The comparison against the irrational
/// threshold is decided exactly by refining a rational enclosure of e.
Int lll_volume_threshold(const Int& colors, int dimension);

/// Prefix-volume criterion: with C_j = (d*2^d)^(3*(3^(j-1)-1)/2), the grid
/// is guaranteed if prod_{i<=j} a_i > C_j * c^((3^j - 1)/2) for all j.
/// Exponents are integral, so this is pure integer arithmetic.
/// Requires a monotone grid.
bool hereditary_check(const Int& colors, const Grid& grid);

/// Per-prefix detail of the hereditary criterion, for reporting.
struct HereditaryStep {
    int j;
    Int prefix_volume;
    Int threshold;  // C_j * c^((3^j - 1)/2)
    bool holds;
};
std::vector<HereditaryStep> hereditary_steps(const Int& colors, const Grid& grid);

/// c' = c * prod_{i<=j} C(a_i, 2): the number of (box, color) pairs of the
/// first j axes, used as a virtual color count. Requires 1 <= j < d.
Int virtual_color_count(const Int& colors, const Grid& grid, int j);

/// If R_j is c-guaranteed and the remaining axes are c'-guaranteed with
/// c' = virtual_color_count(c, R, j), then R is c-guaranteed. Validates
/// both sub-certificates and the color accounting.
Certificate compose_guarantee(const Certificate& low, const Certificate& high);

/// Pigeonhole certificate for a 1-D grid [a] with a > c.
Certificate pigeonhole_certificate(const Int& colors, const Grid& grid);

struct PinchPoint {
    int index;                // 1-based axis index
    Int virtual_colors;       // color count entering this step
    Int side_upper_bound;     // bound on a_index implied by the step inequality
    Int prefix_volume;        // prod_{i <= index} a_i
    Int growth_exponent;      // 3^(prev) * 2^(index - prev - 1)
};

/// Pinch points of a monotone obstruction candidate: repeatedly find the
/// first axis where 2^(d-idx) * c_cur^(2^(idx-prev-1)) / (a_idx - 2) is at
/// least 1/(d-prev), then restart beyond it with the virtual color count.
/// Requires all sides >= 3 and eps_c(R^-) >= 1; otherwise the grid cannot
/// be an obstruction and this throws std::domain_error.
struct PinchPointSet {
    Grid grid;
    Int colors;
    std::vector<PinchPoint> points;  // increasing, last index == d
};
PinchPointSet pinch_points(const Int& colors, const Grid& grid);

/// R^- of a monotone grid: subtract one from the first side attaining the
/// maximum.
Grid decrement_largest(const Grid& grid);

/// mu_1 = c+1, mu_{j+1} = 1 + c * prod_{i<=j} C(mu_i, 2): the sides of the
/// lexicographically first minimal guaranteed grid.
std::vector<Int> mu_sequence(const Int& colors, int dimension);

/// (mu_j - 1) * 2^((3^(j-1)-1)/2) >= c^(3^(j-1)) for every j; exact.
bool mu_lower_bound_holds(const Int& colors, int dimension);

/// A coloring of [mu_1, ..., mu_d] with exactly one monochromatic box:
/// base case x -> x mod c on [c+1]; inductive step stacks all c' minimal
/// colorings of the (d-1)-prefix (one per (box, color) pair, obtained by
/// order-preserving hyperplane and color permutations) as layers along a
/// new last axis, then appends a duplicate of layer 0.
Coloring minimal_coloring(const Int& colors, int dimension);

/// Guaranteed certificate for [mu_1..mu_d] by composing pigeonhole steps
/// through virtual colors.
Certificate mu_guarantee_certificate(const Int& colors, int dimension);

}  // namespace gridramsey::bounds
