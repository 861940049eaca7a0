#include "gridramsey/qform.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace gridramsey::qform {

namespace {

std::int64_t pairs64(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace

std::string QFormInstance::export_text() const {
    std::ostringstream out;
    out << r << '\n';
    for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t j = 0; j < size; ++j) {
            if (j) out << ' ';
            out << at(i, j);
        }
        out << '\n';
    }
    return out.str();
}

QFormInstance build_matrix(int r) {
    if (r < 1 || r > 16) throw std::invalid_argument("build_matrix: r must be in [1, 16]");
    QFormInstance inst;
    inst.r = r;
    inst.size = std::int64_t(1) << r;
    inst.matrix.resize(static_cast<std::size_t>(inst.size * inst.size));
    inst.diag.resize(static_cast<std::size_t>(inst.size));
    for (std::int64_t i = 0; i < inst.size; ++i) {
        for (std::int64_t j = i; j < inst.size; ++j) {
            const int both_two = std::popcount(static_cast<std::uint64_t>(i & j));
            const int both_one = r - std::popcount(static_cast<std::uint64_t>(i | j));
            const std::int64_t value = pairs64(both_one) + pairs64(both_two);
            inst.matrix[static_cast<std::size_t>(i * inst.size + j)] = value;
            inst.matrix[static_cast<std::size_t>(j * inst.size + i)] = value;
        }
        inst.diag[static_cast<std::size_t>(i)] = inst.at(i, i);
    }
    return inst;
}

Int qform_penalized(const QFormInstance& inst, const std::vector<Int>& v) {
    if (static_cast<std::int64_t>(v.size()) != inst.size)
        throw std::invalid_argument("qform_penalized: vector length must be 2^r");
    for (const Int& x : v) {
        if (x < 0) throw std::invalid_argument("qform_penalized: entries must be nonnegative");
    }
    Int total = 0;
    for (std::int64_t i = 0; i < inst.size; ++i) {
        if (v[static_cast<std::size_t>(i)] == 0) continue;
        for (std::int64_t j = 0; j < inst.size; ++j) {
            if (v[static_cast<std::size_t>(j)] == 0) continue;
            total += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] *
                     inst.at(i, j);
        }
        total -= v[static_cast<std::size_t>(i)] * inst.diag[static_cast<std::size_t>(i)];
    }
    return total;
}

Coloring assemble_coloring(int r, const std::vector<Int>& v) {
    const std::int64_t size = std::int64_t(1) << r;
    if (static_cast<std::int64_t>(v.size()) != size)
        throw std::invalid_argument("assemble_coloring: vector length must be 2^r");
    Int total = 0;
    for (const Int& x : v) total += x;
    const std::int64_t s = static_cast<std::int64_t>(total);
    std::vector<Coloring::Color> cells(static_cast<std::size_t>(r) * static_cast<std::size_t>(s));
    std::int64_t col = 0;
    for (std::int64_t type = 0; type < size; ++type) {
        const std::int64_t copies = static_cast<std::int64_t>(v[static_cast<std::size_t>(type)]);
        for (std::int64_t k = 0; k < copies; ++k, ++col) {
            for (int row = 0; row < r; ++row) {
                cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(s) +
                      static_cast<std::size_t>(col)] =
                    static_cast<Coloring::Color>((type >> row) & 1);
            }
        }
    }
    return Coloring(Grid({Int(r), Int(s)}), 2, std::move(cells));
}

namespace {

using Clock = std::chrono::steady_clock;

// Best value plus the vector achieving it, shared across workers.
struct Incumbent {
    std::atomic<std::int64_t> value;
    std::mutex mutex;
    std::int64_t stored_value = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> vector;

    explicit Incumbent(std::int64_t initial) : value(initial) {}

    void offer(std::int64_t candidate, const std::vector<std::int64_t>& v) {
        std::int64_t current = value.load(std::memory_order_relaxed);
        while (candidate < current &&
               !value.compare_exchange_weak(current, candidate, std::memory_order_relaxed)) {
        }
        std::lock_guard<std::mutex> lock(mutex);
        if (candidate < stored_value) {
            stored_value = candidate;
            vector = v;
        }
    }
};

// Branch and bound state for one worker. Types are assigned in mirror
// pairs (u, N-1-u); while the vector still equals its reversal on the
// assigned prefix, the pair values are forced into nondecreasing order,
// which visits each color-swap orbit exactly once.
class MinimizeWorker {
public:
    MinimizeWorker(const QFormInstance& inst, std::int64_t s, Incumbent& incumbent,
                   std::atomic<std::int64_t>& nodes, std::int64_t max_nodes,
                   Clock::time_point deadline, std::atomic<bool>& out_of_budget)
        : inst_(inst),
          s_(s),
          incumbent_(incumbent),
          nodes_(nodes),
          max_nodes_(max_nodes),
          deadline_(deadline),
          out_of_budget_(out_of_budget) {
        v_.assign(static_cast<std::size_t>(inst_.size), 0);
        dot_.assign(static_cast<std::size_t>(inst_.size), 0);
    }

    // Explore with the first pair fixed to (a, b).
    void run_shard(std::int64_t a, std::int64_t b) {
        std::int64_t partial = place(0, a);
        partial += place(inst_.size - 1, b);
        if (partial < incumbent_.value.load(std::memory_order_relaxed))
            dfs(1, s_ - a - b, a == b, partial);
        unplace(inst_.size - 1, b);
        unplace(0, a);
    }

private:
    bool tick() {
        const std::int64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > max_nodes_ || ((n & 0xFFF) == 0 && Clock::now() > deadline_)) {
            out_of_budget_.store(true, std::memory_order_relaxed);
            return false;
        }
        return !out_of_budget_.load(std::memory_order_relaxed);
    }

    // Adds `count` columns of type u; returns the cost delta. dot_[u]
    // holds sum_w v_w * M[w][u] over currently placed types.
    std::int64_t place(std::int64_t u, std::int64_t count) {
        if (count == 0) return 0;
        const std::int64_t delta = pair_delta(u, count);
        v_[static_cast<std::size_t>(u)] = count;
        const std::int64_t* row = inst_.matrix.data() + u * inst_.size;
        for (std::int64_t w = 0; w < inst_.size; ++w)
            dot_[static_cast<std::size_t>(w)] += count * row[w];
        return delta;
    }

    void unplace(std::int64_t u, std::int64_t count) {
        if (count == 0) return;
        v_[static_cast<std::size_t>(u)] = 0;
        const std::int64_t* row = inst_.matrix.data() + u * inst_.size;
        for (std::int64_t w = 0; w < inst_.size; ++w)
            dot_[static_cast<std::size_t>(w)] -= count * row[w];
    }

    std::int64_t pair_delta(std::int64_t u, std::int64_t count) const {
        if (count == 0) return 0;
        return count * (count - 1) * inst_.diag[static_cast<std::size_t>(u)] +
               2 * count * dot_[static_cast<std::size_t>(u)];
    }

    void dfs(std::int64_t pair_index, std::int64_t remaining, bool mirror_equal,
             std::int64_t partial) {
        if (partial >= incumbent_.value.load(std::memory_order_relaxed)) return;
        if (!tick()) return;
        const std::int64_t half = inst_.size / 2;
        if (pair_index == half) {
            if (remaining == 0) incumbent_.offer(partial, v_);
            return;
        }
        const std::int64_t u = pair_index;
        const std::int64_t mirror = inst_.size - 1 - pair_index;
        const bool last_pair = pair_index == half - 1;
        for (std::int64_t a = 0; a <= remaining; ++a) {
            const std::int64_t delta_a = pair_delta(u, a);
            if (partial + delta_a >= incumbent_.value.load(std::memory_order_relaxed)) {
                if (a > 0) break;  // deltas grow with the count
                continue;
            }
            place(u, a);
            const std::int64_t b_low = mirror_equal ? a : 0;
            if (last_pair) {
                const std::int64_t b = remaining - a;
                if (b >= b_low) {
                    const std::int64_t after = partial + delta_a + pair_delta(mirror, b);
                    if (after < incumbent_.value.load(std::memory_order_relaxed)) {
                        place(mirror, b);
                        incumbent_.offer(after, v_);
                        unplace(mirror, b);
                    }
                }
            } else {
                for (std::int64_t b = b_low; a + b <= remaining; ++b) {
                    const std::int64_t after = partial + delta_a + pair_delta(mirror, b);
                    if (after >= incumbent_.value.load(std::memory_order_relaxed)) {
                        if (b > b_low) break;
                        continue;
                    }
                    place(mirror, b);
                    dfs(pair_index + 1, remaining - a - b, mirror_equal && a == b, after);
                    unplace(mirror, b);
                    if (out_of_budget_.load(std::memory_order_relaxed)) {
                        unplace(u, a);
                        return;
                    }
                }
            }
            unplace(u, a);
            if (out_of_budget_.load(std::memory_order_relaxed)) return;
        }
    }

    const QFormInstance& inst_;
    std::int64_t s_;
    Incumbent& incumbent_;
    std::atomic<std::int64_t>& nodes_;
    std::int64_t max_nodes_;
    Clock::time_point deadline_;
    std::atomic<bool>& out_of_budget_;
    std::vector<std::int64_t> v_;
    std::vector<std::int64_t> dot_;
};

// Greedy incumbent: place columns one at a time on the type with the
// least marginal cost 2 * (M v)_u.
std::pair<std::int64_t, std::vector<std::int64_t>> greedy_assignment(const QFormInstance& inst,
                                                                     std::int64_t s) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(inst.size), 0);
    std::vector<std::int64_t> mv(static_cast<std::size_t>(inst.size), 0);
    std::int64_t value = 0;
    for (std::int64_t k = 0; k < s; ++k) {
        std::int64_t best_u = 0;
        for (std::int64_t u = 1; u < inst.size; ++u) {
            if (mv[static_cast<std::size_t>(u)] < mv[static_cast<std::size_t>(best_u)]) best_u = u;
        }
        value += 2 * mv[static_cast<std::size_t>(best_u)];
        ++v[static_cast<std::size_t>(best_u)];
        const std::int64_t* row = inst.matrix.data() + best_u * inst.size;
        for (std::int64_t w = 0; w < inst.size; ++w) mv[static_cast<std::size_t>(w)] += row[w];
    }
    return {value, v};
}

}  // namespace

MinRectanglesResult min_rectangles(int r, std::int64_t s, const search::SearchBudget& budget) {
    budget.validate();
    if (r < 1 || r > 16) throw std::invalid_argument("min_rectangles: r must be in [1, 16]");
    if (s < 1) throw std::invalid_argument("min_rectangles: s must be >= 1");
    // Column count bound keeps the int64 quadratic safely in range.
    if (s > 1'000'000) throw std::invalid_argument("min_rectangles: s too large");

    const QFormInstance inst = build_matrix(r);
    MinRectanglesResult result;

    auto [greedy_value, greedy_v] = greedy_assignment(inst, s);
    Incumbent incumbent(greedy_value);  // search records strict improvements only
    std::atomic<std::int64_t> nodes{0};
    std::atomic<bool> out_of_budget{false};

    const Clock::time_point deadline = Clock::now() + std::chrono::seconds(budget.max_seconds);

    // First-pair shards (a on type 0, b on the all-ones type), a <= b.
    std::vector<std::pair<std::int64_t, std::int64_t>> shards;
    for (std::int64_t a = 0; a <= s; ++a)
        for (std::int64_t b = a; a + b <= s; ++b) shards.emplace_back(a, b);

    const int workers = std::max(1, budget.parallel_shards);
    if (workers == 1) {
        MinimizeWorker worker(inst, s, incumbent, nodes, budget.max_nodes, deadline,
                              out_of_budget);
        for (const auto& [a, b] : shards) {
            worker.run_shard(a, b);
            if (out_of_budget.load()) break;
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                MinimizeWorker worker(inst, s, incumbent, nodes, budget.max_nodes, deadline,
                                      out_of_budget);
                while (!out_of_budget.load(std::memory_order_relaxed)) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= shards.size()) return;
                    worker.run_shard(shards[i].first, shards[i].second);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    result.nodes = nodes.load();
    if (out_of_budget.load()) return result;  // unknown

    std::int64_t minimum = incumbent.value.load();
    std::vector<std::int64_t> winner =
        minimum < greedy_value ? incumbent.vector : greedy_v;
    if (minimum % 2 != 0) throw std::logic_error("min_rectangles: penalized minimum must be even");
    result.minimum = Int(minimum / 2);
    result.argmin.assign(winner.begin(), winner.end());
    return result;
}

std::vector<std::pair<Int, Int>> predicted_spectrum(int r) {
    if (r < 1) throw std::invalid_argument("predicted_spectrum: r must be >= 1");
    if (r == 1) return {{Int(0), Int(2)}};
    if (r == 2) return {{Int(0), Int(2)}, {Int(1), Int(2)}};
    if (r == 3) return {{Int(0), Int(2)}, {Int(1), Int(4)}, {Int(4), Int(2)}};
    std::vector<std::pair<Int, Int>> pairs_list = {
        {Int(0), pow2(static_cast<unsigned>(r)) - Int(r) * (r + 1) / 2},
        {pow2(static_cast<unsigned>(r - 3)), Int(r) * (r - 1) / 2 - 1},
        {pow2(static_cast<unsigned>(r - 3)) * (r - 2), Int(r - 1)},
        {pow2(static_cast<unsigned>(r - 2)) * (r - 1), Int(1)},
        {pow2(static_cast<unsigned>(r - 4)) * (Int(r) * r - r + 2), Int(1)},
    };
    std::sort(pairs_list.begin(), pairs_list.end());
    return pairs_list;
}

namespace {

constexpr std::int64_t kPrimes[] = {2147483647, 2147483629, 2147483587};

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
    std::int64_t result = 1;
    base %= p;
    while (exp) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return result;
}

// Rank of an n x n matrix over Z_p by Gaussian elimination.
std::int64_t rank_mod_p(std::vector<std::int64_t> m, std::int64_t n, std::int64_t p) {
    std::int64_t rank = 0;
    for (std::int64_t col = 0; col < n && rank < n; ++col) {
        std::int64_t pivot = -1;
        for (std::int64_t row = rank; row < n; ++row) {
            if (m[static_cast<std::size_t>(row * n + col)] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (std::int64_t j = col; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(pivot * n + j)],
                          m[static_cast<std::size_t>(rank * n + j)]);
        }
        const std::int64_t inv = mod_pow(m[static_cast<std::size_t>(rank * n + col)], p - 2, p);
        for (std::int64_t row = rank + 1; row < n; ++row) {
            const std::int64_t factor = m[static_cast<std::size_t>(row * n + col)] * inv % p;
            if (factor == 0) continue;
            for (std::int64_t j = col; j < n; ++j) {
                std::int64_t& cell = m[static_cast<std::size_t>(row * n + j)];
                cell = (cell - factor * m[static_cast<std::size_t>(rank * n + j)] % p + p) % p;
            }
        }
        ++rank;
    }
    return rank;
}

using Wide = __int128;

}  // namespace

SpectrumReport spectrum(int r) {
    if (r < 1 || r > 10) throw std::invalid_argument("spectrum: r must be in [1, 10]");
    const QFormInstance inst = build_matrix(r);
    const std::int64_t n = inst.size;
    const auto candidates = predicted_spectrum(r);

    SpectrumReport report;
    report.r = r;

    // Annihilation: product of (M - lambda I) over the candidate set must
    // vanish. Entries stay well inside __int128 for r <= 10; tracked below.
    std::vector<Wide> product(static_cast<std::size_t>(n * n), 0);
    bool first = true;
    Wide magnitude_bound = 1;
    for (const auto& [lambda_big, mult] : candidates) {
        const std::int64_t lambda = static_cast<std::int64_t>(lambda_big);
        if (first) {
            for (std::int64_t i = 0; i < n; ++i)
                for (std::int64_t j = 0; j < n; ++j)
                    product[static_cast<std::size_t>(i * n + j)] =
                        inst.at(i, j) - (i == j ? lambda : 0);
            Wide max_abs = 0;
            for (const Wide& x : product) max_abs = std::max(max_abs, x < 0 ? -x : x);
            magnitude_bound = max_abs;
            first = false;
            continue;
        }
        Wide factor_max = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t j = 0; j < n; ++j) {
                const Wide x = inst.at(i, j) - (i == j ? lambda : 0);
                factor_max = std::max(factor_max, x < 0 ? -x : x);
            }
        }
        // next bound: n * current * factor; require headroom under 2^126.
        const Wide limit = Wide(1) << 126;
        if (magnitude_bound > limit / (Wide(n) * std::max<Wide>(factor_max, 1)))
            throw std::overflow_error("spectrum: annihilation product exceeds 128-bit range");
        magnitude_bound *= Wide(n) * std::max<Wide>(factor_max, 1);

        std::vector<Wide> next(static_cast<std::size_t>(n * n), 0);
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t k = 0; k < n; ++k) {
                const Wide left = product[static_cast<std::size_t>(i * n + k)];
                if (left == 0) continue;
                const std::int64_t* row = inst.matrix.data() + k * n;
                Wide* out = next.data() + i * n;
                for (std::int64_t j = 0; j < n; ++j) {
                    Wide entry = row[j];
                    if (k == j) entry -= lambda;
                    out[j] += left * entry;
                }
            }
        }
        product = std::move(next);
    }

    bool annihilated = std::all_of(product.begin(), product.end(),
                                   [](const Wide& x) { return x == 0; });
    if (!annihilated) {
        report.status = SpectrumStatus::kOutsideCandidates;
        const std::int64_t p = kPrimes[0];
        std::vector<std::int64_t> reduced(static_cast<std::size_t>(n * n));
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            Wide x = product[i] % p;
            if (x < 0) x += p;
            reduced[i] = static_cast<std::int64_t>(x);
        }
        report.residual_rank = rank_mod_p(std::move(reduced), n, p);
        return report;
    }

    // Multiplicities: nullity of (M - lambda I) over Z_p. mod-p ranks never
    // exceed rational ranks, so when the nullities sum to the dimension
    // every one of them is exact (the matrix is diagonalizable: it is
    // annihilated by a squarefree polynomial).
    for (const std::int64_t p : kPrimes) {
        std::vector<std::pair<Int, Int>> pairs_list;
        Int total = 0;
        for (const auto& [lambda_big, predicted_mult] : candidates) {
            const std::int64_t lambda = static_cast<std::int64_t>(lambda_big);
            std::vector<std::int64_t> m(static_cast<std::size_t>(n * n));
            for (std::int64_t i = 0; i < n; ++i) {
                for (std::int64_t j = 0; j < n; ++j) {
                    std::int64_t value = (inst.at(i, j) - (i == j ? lambda : 0)) % p;
                    if (value < 0) value += p;
                    m[static_cast<std::size_t>(i * n + j)] = value;
                }
            }
            const std::int64_t nullity = n - rank_mod_p(std::move(m), n, p);
            if (nullity > 0) pairs_list.emplace_back(lambda_big, Int(nullity));
            total += nullity;
        }
        if (total == n) {
            report.status = SpectrumStatus::kVerified;
            report.pairs = std::move(pairs_list);
            report.psd = std::all_of(report.pairs.begin(), report.pairs.end(),
                                     [](const auto& pr) { return pr.first >= 0; });
            return report;
        }
    }
    throw std::runtime_error("spectrum: modular nullities failed to certify multiplicities");
}

PsdReport psd_check(int r) {
    SpectrumReport rep = spectrum(r);
    if (rep.status != SpectrumStatus::kVerified)
        throw std::runtime_error("psd_check: spectrum outside the candidate set");
    PsdReport result;
    result.r = r;
    result.in_conjecture_scope = r >= 3;
    result.psd = rep.psd;
    result.spectrum = std::move(rep);
    return result;
}

}  // namespace gridramsey::qform
