#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "finhor/solver.hpp"

namespace finhor {
namespace oracle {

// Exhaustively enumerated T-slot region: average capacity tuples over
// all refined-set action sequences, with their frontier subsets.
struct EnumeratedRegion {
    int horizon = 0;
    std::vector<RateTuple> pareto;
    std::vector<RateTuple> weak_pareto;

    // mu is in the region iff some maximal average capacity tuple
    // dominates it.
    bool contains(const RateTuple& mu, double tol = kDomTol) const {
        for (const auto& p : pareto)
            if (dominates(p, mu, tol)) return true;
        return false;
    }
};

namespace detail {

// Action capacities for the enumeration: the refined set by default,
// the full power-tuple set when testing the refinement itself.
inline std::vector<RateTuple> action_rates(const NetworkScenario& sc, bool full_power_set,
                                           std::size_t cap) {
    std::vector<RateTuple> rates;
    if (full_power_set) {
        for (const auto& s : enumerate_power_tuples(sc, cap))
            rates.push_back(max_rate_tuple(sc, s));
    } else {
        for (const auto& pt : one_slot_frontier(sc, cap).points) rates.push_back(pt.rate);
    }
    return rates;
}

inline void check_sequence_cap(std::size_t n_actions, int horizon, std::size_t cap) {
    double total = std::pow(static_cast<double>(n_actions), horizon);
    if (total > static_cast<double>(cap))
        throw CapacityError("sequence enumeration size " + std::to_string(total) +
                            " exceeds cap " + std::to_string(cap));
}

}  // namespace detail

// Enumerates every average capacity tuple of horizon-length action
// multisets (the average is order-invariant) and keeps the frontiers.
inline EnumeratedRegion enumerate_frontier(const NetworkScenario& sc, int horizon,
                                           std::size_t cap = kDefaultEnumerationCap,
                                           bool full_power_set = false) {
    if (horizon < 1) throw InputError("horizon must be a positive integer");
    auto rates = detail::action_rates(sc, full_power_set, cap);
    detail::check_sequence_cap(rates.size(), horizon, cap);

    std::vector<RateTuple> averages;
    RateTuple sum(sc.n_pairs, 0.0);
    // non-decreasing index sequences, i.e. multisets over the action set
    auto rec = [&](auto&& self, std::size_t first, int remaining) -> void {
        if (remaining == 0) {
            RateTuple avg(sc.n_pairs);
            for (int n = 0; n < sc.n_pairs; ++n) avg[n] = sum[n] / horizon;
            averages.push_back(std::move(avg));
            return;
        }
        for (std::size_t i = first; i < rates.size(); ++i) {
            for (int n = 0; n < sc.n_pairs; ++n) sum[n] += rates[i][n];
            self(self, i, remaining - 1);
            for (int n = 0; n < sc.n_pairs; ++n) sum[n] -= rates[i][n];
        }
    };
    rec(rec, 0, horizon);

    EnumeratedRegion region;
    region.horizon = horizon;
    for (std::size_t i : pareto_filter(averages)) region.pareto.push_back(averages[i]);
    for (std::size_t i : weak_pareto_filter(averages)) region.weak_pareto.push_back(averages[i]);
    return region;
}

// Rate margin straight from its definition over the enumerated Pareto
// frontier.
inline double margin_by_enumeration(const NetworkScenario& sc, const RateTuple& mu, int horizon,
                                    std::size_t cap = kDefaultEnumerationCap) {
    require_positive_rate(mu, sc.n_pairs);
    auto region = enumerate_frontier(sc, horizon, cap);
    double best = 0.0;
    for (const auto& p : region.pareto) {
        double ratio = std::numeric_limits<double>::infinity();
        for (int n = 0; n < sc.n_pairs; ++n) ratio = std::min(ratio, p[n] / mu[n]);
        best = std::max(best, ratio);
    }
    return best;
}

// Full enumeration of action sequences up to depth_cap; the reference
// the informed search is checked against.
inline DrainSolution exhaustive_min_slots(const NetworkScenario& sc, const QueueState& q0,
                                          int depth_cap,
                                          std::size_t cap = kDefaultEnumerationCap,
                                          bool full_power_set = false) {
    if (depth_cap < 1) throw InputError("depth cap must be at least 1");
    const double tol = queue_tolerance(sc);
    DrainSolution sol;
    if (queue_empty(q0, tol)) {
        sol.status = DrainStatus::EMPTY_START;
        sol.queue_trace = {q0};
        return sol;
    }
    auto rates = detail::action_rates(sc, full_power_set, cap);
    detail::check_sequence_cap(rates.size(), depth_cap, cap);
    const double L = sc.blocklength;

    int best_p = depth_cap + 1;
    double best_frac = std::numeric_limits<double>::infinity();
    std::vector<int> best_path, path;

    auto frac_of = [&](const std::vector<double>& served) {
        double frac = 0.0;
        for (int n = 0; n < sc.n_pairs; ++n) {
            if (q0[n] <= tol) continue;
            frac = std::max(frac, q0[n] / served[n]);
        }
        return frac;
    };

    auto rec = [&](auto&& self, const QueueState& q, const std::vector<double>& served,
                   int depth) -> void {
        if (queue_empty(q, tol)) {
            double frac = frac_of(served);
            if (depth < best_p || (depth == best_p && frac < best_frac)) {
                best_p = depth;
                best_frac = frac;
                best_path = path;
            }
            return;
        }
        if (depth >= depth_cap || depth + 1 > best_p) return;
        QueueState q2(sc.n_pairs);
        std::vector<double> s2(sc.n_pairs);
        for (std::size_t a = 0; a < rates.size(); ++a) {
            for (int n = 0; n < sc.n_pairs; ++n) {
                q2[n] = std::max(0.0, q[n] - rates[a][n] * L);
                if (q2[n] <= tol) q2[n] = 0.0;
                s2[n] = served[n] + rates[a][n] * L;
            }
            path.push_back(static_cast<int>(a));
            self(self, q2, s2, depth + 1);
            path.pop_back();
        }
    };
    rec(rec, q0, std::vector<double>(sc.n_pairs, 0.0), 0);

    if (best_p > depth_cap) {
        sol.status = DrainStatus::EXCEEDS_HORIZON;
        return sol;
    }
    sol.status = DrainStatus::SOLVED;
    sol.p_star = best_p;
    sol.frac_term = best_frac;
    auto frontier_powers = full_power_set ? enumerate_power_tuples(sc, cap)
                                          : std::vector<PowerTuple>{};
    FrontierSet fs;
    if (!full_power_set) fs = one_slot_frontier(sc, cap);
    sol.queue_trace.push_back(q0);
    QueueState q = q0;
    for (int idx : best_path) {
        const RateTuple& r = rates[idx];
        sol.power_seq.push_back(full_power_set ? frontier_powers[idx] : fs.points[idx].power);
        for (int n = 0; n < sc.n_pairs; ++n) {
            q[n] = std::max(0.0, q[n] - r[n] * L);
            if (q[n] <= tol) q[n] = 0.0;
        }
        sol.queue_trace.push_back(q);
    }
    return sol;
}

// Exact remaining cost E*(q) for an intermediate search state: minimum
// future slot count, then the final-slot max-ratio term, accounting for
// capacity already served along the node's path. Returns nullopt when
// the queue cannot drain within max_future_depth slots.
inline std::optional<double> exact_remaining_cost(const NetworkScenario& sc,
                                                  const QueueState& q0,
                                                  const std::vector<double>& served_so_far,
                                                  const QueueState& q, int max_future_depth,
                                                  std::size_t cap = kDefaultEnumerationCap) {
    const double tol = queue_tolerance(sc);
    if (queue_empty(q, tol)) return 0.0;
    auto rates = detail::action_rates(sc, false, cap);

    int best_f = max_future_depth + 1;
    double best_frac = std::numeric_limits<double>::infinity();

    auto rec = [&](auto&& self, const QueueState& cur, const std::vector<double>& served,
                   int depth) -> void {
        if (queue_empty(cur, tol)) {
            double frac = 0.0;
            for (int n = 0; n < sc.n_pairs; ++n) {
                if (q0[n] <= tol) continue;
                frac = std::max(frac, q0[n] / served[n]);
            }
            if (depth < best_f || (depth == best_f && frac < best_frac)) {
                best_f = depth;
                best_frac = frac;
            }
            return;
        }
        if (depth >= max_future_depth || depth + 1 > best_f) return;
        QueueState q2(sc.n_pairs);
        std::vector<double> s2(sc.n_pairs);
        const double L = sc.blocklength;
        for (const auto& r : rates) {
            for (int n = 0; n < sc.n_pairs; ++n) {
                q2[n] = std::max(0.0, cur[n] - r[n] * L);
                if (q2[n] <= tol) q2[n] = 0.0;
                s2[n] = served[n] + r[n] * L;
            }
            self(self, q2, s2, depth + 1);
        }
    };
    rec(rec, q, served_so_far, 0);

    if (best_f > max_future_depth) return std::nullopt;
    return best_f - 1 + best_frac;
}

}  // namespace oracle
}  // namespace finhor
