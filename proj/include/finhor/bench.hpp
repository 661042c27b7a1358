#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "finhor/margin.hpp"

namespace finhor {
namespace bench {

// Unique non-negative root B of sum_{t=1..p} B^t = U, by bisection.
inline double effective_branching_factor(std::int64_t expanded, int depth) {
    if (expanded < 1) throw InputError("expanded node count must be at least 1");
    if (depth < 1) throw InputError("depth must be at least 1");
    if (depth == 1) return static_cast<double>(expanded);
    const double u = static_cast<double>(expanded);
    auto series = [&](double b) {
        double term = 1.0, acc = 0.0;
        for (int t = 1; t <= depth; ++t) {
            term *= b;
            acc += term;
        }
        return acc;
    };
    double lo = 0.0, hi = u;
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        (series(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace detail {

// splitmix64; per-trial streams derived from (seed, horizon, trial) so
// results are independent of evaluation order.
inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ULL;
        return mix(state);
    }
    // uniform in (0, 1]
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }
};

}  // namespace detail

// Random strictly positive tuple inside the infinite-horizon region: a
// Dirichlet-weighted convex combination of one-slot frontier points
// under a uniform radial scale, components floored at 1e-6.
inline RateTuple sample_rate_tuple(const FrontierSet& frontier, detail::Rng& rng) {
    if (frontier.points.empty()) throw InputError("frontier must be nonempty");
    const std::size_t k = frontier.points.size();
    const std::size_t dim = frontier.points[0].rate.size();
    std::vector<double> w(k);
    double wsum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = -std::log(rng.next_unit());  // Exp(1) => Dirichlet(1,...,1) weights
        wsum += w[i];
    }
    double scale = rng.next_unit();
    RateTuple mu(dim, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t n = 0; n < dim; ++n)
            mu[n] += (w[i] / wsum) * frontier.points[i].rate[n];
    for (std::size_t n = 0; n < dim; ++n) mu[n] = std::max(1e-6, scale * mu[n]);
    return mu;
}

struct TrialRecord {
    int horizon = 0;
    int trial = 0;
    RateTuple mu;
    double delta = 0.0;
    int iterations = 0;
    std::vector<double> ebr_per_iteration;
    bool failed = false;         // capacity error during this trial
};

struct BenchRow {
    int horizon = 0;
    int trials = 0;              // trials included in the means
    int failures = 0;
    double ain = 0.0;            // mean margin-iteration count
    double mean_expanded = 0.0;  // mean expanded nodes per drain solve
    double aebr = 0.0;           // B(mean_expanded, T) / |S|
};

struct BenchReport {
    std::uint64_t seed = 0;
    std::vector<BenchRow> rows;
    std::vector<TrialRecord> raw;
};

// Monte Carlo margin study: samples rate tuples, runs the margin
// iteration, and aggregates iteration counts and branching ratios.
inline BenchReport run_table1(const NetworkScenario& sc, const std::vector<int>& horizons,
                              int trials, std::uint64_t seed, const SolveOptions& opts = {},
                              bool keep_raw = false) {
    if (trials < 1) throw InputError("trials must be at least 1");
    BenchReport report;
    report.seed = seed;
    const FrontierSet frontier = one_slot_frontier(sc);
    const double full_set_size = sc.power_tuple_count();

    for (int T : horizons) {
        if (T < 1) throw InputError("horizons must be positive");
        BenchRow row;
        row.horizon = T;
        double iter_sum = 0.0, node_sum = 0.0;
        std::int64_t solve_count = 0;
        for (int trial = 0; trial < trials; ++trial) {
            detail::Rng rng(detail::mix(seed ^ detail::mix(static_cast<std::uint64_t>(T)) ^
                                        detail::mix(static_cast<std::uint64_t>(trial) << 20)));
            TrialRecord rec;
            rec.horizon = T;
            rec.trial = trial;
            rec.mu = sample_rate_tuple(frontier, rng);
            try {
                MarginResult m = rate_margin(sc, frontier, rec.mu, T, opts);
                rec.delta = m.delta;
                rec.iterations = m.iterations;
                for (const auto& it : m.per_iteration) {
                    int depth = it.solved ? std::min(it.p_star, T) : T;
                    std::int64_t u = std::max<std::int64_t>(1, it.expanded_nodes);
                    rec.ebr_per_iteration.push_back(effective_branching_factor(u, depth) /
                                                    full_set_size);
                    node_sum += static_cast<double>(u);
                    ++solve_count;
                }
                iter_sum += m.iterations;
                ++row.trials;
            } catch (const CapacityError&) {
                rec.failed = true;
                ++row.failures;
            }
            if (keep_raw) report.raw.push_back(std::move(rec));
        }
        if (row.trials > 0) row.ain = iter_sum / row.trials;
        // aggregate branching ratio: solve sum_{t=1..T} B^t = mean expanded
        // nodes per drain solve, so deeper horizons with sub-exponential
        // node growth report smaller ratios
        if (solve_count > 0) {
            row.mean_expanded = node_sum / static_cast<double>(solve_count);
            std::int64_t u = std::max<std::int64_t>(1, std::llround(row.mean_expanded));
            row.aebr = effective_branching_factor(u, T) / full_set_size;
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace bench
}  // namespace finhor
