#pragma once

#include "gridramsey/grid.hpp"
#include "gridramsey/search.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gridramsey::qform {

/// The 2^r x 2^r symmetric integer matrix indexed by column colorings
/// f_j : [r] -> [2] (bit k of j gives f_j(k+1)). The (i,j) entry counts
/// row pairs on which columns of types i and j agree within one color:
/// C(|f_i^-1(1) & f_j^-1(1)|, 2) + C(|f_i^-1(2) & f_j^-1(2)|, 2).
struct QFormInstance {
    int r;
    std::int64_t size;                // 2^r
    std::vector<std::int64_t> matrix;  // row-major, size x size
    std::vector<std::int64_t> diag;

    std::int64_t at(std::int64_t i, std::int64_t j) const {
        return matrix[static_cast<std::size_t>(i * size + j)];
    }

    /// Plain-text export: first line r, then 2^r rows of integers.
    std::string export_text() const;
};

QFormInstance build_matrix(int r);

/// v' M v - v . diag, exactly; twice the number of monochromatic
/// rectangles of the column arrangement described by v.
Int qform_penalized(const QFormInstance& inst, const std::vector<Int>& v);

/// Exact minimum rectangle count of a 2-colored [r] x [s] grid: minimize
/// (v' M v - v . diag)/2 over nonnegative integer v with sum s. Branch and
/// bound over canonical vectors (the global color swap reverses v, so only
/// vectors lexicographically <= their reversal are visited), with the
/// partial quadratic value as the admissible bound (entries are >= 0).
struct MinRectanglesResult {
    std::optional<Int> minimum;
    std::vector<Int> argmin;
    std::int64_t nodes = 0;
};
MinRectanglesResult min_rectangles(int r, std::int64_t s,
                                   const search::SearchBudget& budget = {});

/// Column arrangement described by v, as a 2-coloring of [r] x [s].
Coloring assemble_coloring(int r, const std::vector<Int>& v);

enum class SpectrumStatus { kVerified, kOutsideCandidates };

struct SpectrumReport {
    int r;
    SpectrumStatus status;
    std::vector<std::pair<Int, Int>> pairs;  // (eigenvalue, multiplicity), ascending
    bool psd = false;
    std::int64_t residual_rank = 0;  // rank of the annihilator product if status failed
};

/// Exact integer spectrum verification: the candidate eigenvalue set must
/// annihilate the matrix (squarefree product of (M - lambda I), so M is
/// diagonalizable with spectrum inside the set), and multiplicities come
/// from nullities over a prime field, certified exact when they sum to the
/// dimension. No floating point anywhere.
SpectrumReport spectrum(int r);

/// Candidate eigenvalues with predicted multiplicities:
/// r = 3: {0, 1, 4} with {2, 4, 2};
/// r >= 4: 0, 2^(r-3), 2^(r-3)(r-2), 2^(r-2)(r-1), 2^(r-4)(r^2-r+2) with
/// multiplicities 2^r - r(r+1)/2, r(r-1)/2 - 1, r-1, 1, 1.
std::vector<std::pair<Int, Int>> predicted_spectrum(int r);

struct PsdReport {
    int r;
    bool in_conjecture_scope;  // the claim is scoped to r >= 3
    bool psd;
    SpectrumReport spectrum;
};
PsdReport psd_check(int r);

}  // namespace gridramsey::qform
