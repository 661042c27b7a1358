#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "finhor/numerics.hpp"
#include "finhor/scenario.hpp"

namespace finhor {

// Absolute tolerance for dominance comparisons in rate units.
inline constexpr double kDomTol = 1e-9;

// a weakly dominates b: a^(n) >= b^(n) - tol for all n.
inline bool dominates(const RateTuple& a, const RateTuple& b, double tol = kDomTol) {
    for (std::size_t n = 0; n < a.size(); ++n)
        if (a[n] < b[n] - tol) return false;
    return true;
}

// a strictly dominates b in every component.
inline bool strictly_dominates(const RateTuple& a, const RateTuple& b, double tol = kDomTol) {
    for (std::size_t n = 0; n < a.size(); ++n)
        if (a[n] <= b[n] + tol) return false;
    return true;
}

inline bool tuples_equal(const RateTuple& a, const RateTuple& b, double tol = kDomTol) {
    for (std::size_t n = 0; n < a.size(); ++n)
        if (std::abs(a[n] - b[n]) > tol) return false;
    return true;
}

// A maximal one-slot rate tuple paired with a producing power tuple.
struct FrontierPoint {
    RateTuple rate;
    PowerTuple power;
};

struct FrontierSet {
    std::vector<FrontierPoint> points;
    std::string scenario_fingerprint;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// Full Cartesian product of the per-pair power sets, lexicographic by
// pair index then power value.
inline std::vector<PowerTuple> enumerate_power_tuples(const NetworkScenario& sc,
                                                      std::size_t cap = kDefaultEnumerationCap) {
    double total = sc.power_tuple_count();
    if (total > static_cast<double>(cap))
        throw CapacityError("power tuple product size " + std::to_string(total) +
                            " exceeds cap " + std::to_string(cap));
    std::vector<PowerTuple> out;
    out.reserve(static_cast<std::size_t>(total));
    PowerTuple cur(sc.n_pairs, 0.0);
    std::vector<std::size_t> idx(sc.n_pairs, 0);
    for (;;) {
        for (int n = 0; n < sc.n_pairs; ++n) cur[n] = sc.power_sets[n][idx[n]];
        out.push_back(cur);
        int n = sc.n_pairs - 1;
        while (n >= 0 && ++idx[n] == sc.power_sets[n].size()) idx[n--] = 0;
        if (n < 0) break;
    }
    return out;
}

namespace detail {

// One representative index per group of tuples equal within tol; keeps
// the first occurrence.
inline std::vector<std::size_t> dedup_representatives(const std::vector<RateTuple>& pts,
                                                      double tol) {
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dup = false;
        for (std::size_t r : reps) {
            if (tuples_equal(pts[r], pts[i], tol)) { dup = true; break; }
        }
        if (!dup) reps.push_back(i);
    }
    return reps;
}

}  // namespace detail

// Pareto frontier indices: after duplicate collapse, points not weakly
// dominated by any distinct point.
inline std::vector<std::size_t> pareto_filter(const std::vector<RateTuple>& pts,
                                              double tol = kDomTol) {
    auto reps = detail::dedup_representatives(pts, tol);
    std::vector<std::size_t> out;
    for (std::size_t b : reps) {
        bool dominated = false;
        for (std::size_t a : reps) {
            if (a == b) continue;
            if (dominates(pts[a], pts[b], tol) && !tuples_equal(pts[a], pts[b], tol)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(b);
    }
    return out;
}

// Weak Pareto frontier indices: points with no strict dominator. A
// superset of the Pareto frontier.
inline std::vector<std::size_t> weak_pareto_filter(const std::vector<RateTuple>& pts,
                                                   double tol = kDomTol) {
    auto reps = detail::dedup_representatives(pts, tol);
    std::vector<std::size_t> out;
    for (std::size_t b : reps) {
        bool dominated = false;
        for (std::size_t a : reps) {
            if (a == b) continue;
            if (strictly_dominates(pts[a], pts[b], tol)) { dominated = true; break; }
        }
        if (!dominated) out.push_back(b);
    }
    return out;
}

inline double total_power(const PowerTuple& s) {
    return std::accumulate(s.begin(), s.end(), 0.0);
}

// One-slot Pareto frontier with producing powers (the refined
// transmit-power-tuple set). When several powers yield the same frontier
// rate tuple, the minimum-total-power producer is kept, ties broken
// lexicographically.
inline FrontierSet one_slot_frontier(const NetworkScenario& sc,
                                     std::size_t cap = kDefaultEnumerationCap) {
    auto powers = enumerate_power_tuples(sc, cap);
    std::vector<RateTuple> rates(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) rates[i] = max_rate_tuple(sc, powers[i]);

    auto front = pareto_filter(rates);
    FrontierSet fs;
    fs.scenario_fingerprint = sc.fingerprint();
    for (std::size_t fi : front) {
        // pick the canonical producer among all powers matching this rate
        std::size_t best = fi;
        for (std::size_t i = 0; i < powers.size(); ++i) {
            if (!tuples_equal(rates[i], rates[fi])) continue;
            double ti = total_power(powers[i]), tb = total_power(powers[best]);
            if (ti < tb - kDomTol || (std::abs(ti - tb) <= kDomTol && powers[i] < powers[best]))
                best = i;
        }
        fs.points.push_back({rates[fi], powers[best]});
    }
    return fs;
}

}  // namespace finhor
