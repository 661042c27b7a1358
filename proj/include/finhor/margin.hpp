#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "finhor/solver.hpp"

namespace finhor {

// Which terminal of the margin iteration ended the run.
enum class MarginTerminal { NODE_B, NODE_D, NODE_E };

// Per-iteration record of the underlying drain solve, kept for the
// iteration-bound checks and the branching-factor statistics.
struct MarginIteration {
    bool solved = false;        // false means the drain exceeded the horizon
    int p_star = 0;             // valid when solved
    double frac_term = 0.0;     // valid when solved
    std::int64_t expanded_nodes = 0;
};

struct MarginResult {
    double delta = 0.0;
    int iterations = 0;
    bool achievable = false;
    MarginTerminal terminal = MarginTerminal::NODE_E;
    std::vector<MarginIteration> per_iteration;
    // Max relative spread of the per-component final/initial queue
    // ratios; should stay tiny since updates scale along the rate
    // direction.
    double direction_spread = 0.0;
};

// One-slot rate margin evaluated directly over the one-slot Pareto
// frontier: max over frontier points of the min componentwise ratio.
inline double one_slot_margin(const FrontierSet& frontier, const RateTuple& mu) {
    for (double m : mu)
        if (!(m > 0.0))
            throw InputError("rate components must be strictly positive; remove inactive pairs from the scenario instead");
    double best = 0.0;
    for (const auto& pt : frontier.points) {
        double ratio = std::numeric_limits<double>::infinity();
        for (std::size_t n = 0; n < mu.size(); ++n)
            ratio = std::min(ratio, pt.rate[n] / mu[n]);
        if (ratio > best) best = ratio;
    }
    return best;
}

namespace detail {

inline constexpr double kMarginEps = 1e-7;   // queue-scaling precision
inline constexpr double kRhoZeroTol = 1e-12; // one-slot margin treated as 0 below this

}  // namespace detail

// Rate margin via the iterative rescaling of the drain problem. Each
// iteration solves the drain problem on the current queue vector and
// rescales it toward the horizon boundary until the drain takes exactly
// T slots (or the direction proves unreachable).
inline MarginResult rate_margin(const NetworkScenario& sc, const FrontierSet& frontier,
                                const RateTuple& mu, int horizon,
                                const SolveOptions& opts = {}) {
    require_positive_rate(mu, sc.n_pairs);
    if (horizon < 1) throw InputError("horizon must be a positive integer");
    const double L = sc.blocklength;
    const int T = horizon;

    double rho = one_slot_margin(frontier, mu);
    if (rho < detail::kRhoZeroTol) rho = 0.0;

    QueueState q(sc.n_pairs), q_first(sc.n_pairs);
    for (int n = 0; n < sc.n_pairs; ++n) q_first[n] = q[n] = T * mu[n] * L;

    MarginResult res;
    int flag = 0;
    bool done = false;
    bool first_solved = false;

    while (!done) {
        DrainSolution dr = solve_drain(sc, frontier, q, T, opts);
        MarginIteration it;
        it.expanded_nodes = dr.expanded_nodes;
        it.solved = (dr.status == DrainStatus::SOLVED);
        if (it.solved) {
            it.p_star = dr.p_star;
            it.frac_term = dr.frac_term;
        }
        res.per_iteration.push_back(it);
        ++res.iterations;
        if (res.iterations == 1) first_solved = it.solved;

        if (it.solved && dr.p_star < T) {
            // scale to the p*-slot boundary and tile the leftover slots
            double delta_p = 1.0 / dr.frac_term;
            int mult = T / dr.p_star;
            int rem = T % dr.p_star;
            for (int n = 0; n < sc.n_pairs; ++n)
                q[n] = q[n] * delta_p * mult + rem * rho * mu[n];
            if (mult == 1 && rho == 0.0) {
                // the scaled queue is a fixed point in this case; nudge it
                // just past the p*-slot boundary so the slot count advances
                for (int n = 0; n < sc.n_pairs; ++n) q[n] += detail::kMarginEps * T;
            }
            flag = 1;
        } else if (!it.solved && flag == -1) {
            // terminal b: even the smallest representable queue cannot drain
            res.delta = 0.0;
            res.terminal = MarginTerminal::NODE_B;
            res.achievable = false;
            return res;
        } else if (!it.solved && flag == 0) {
            for (int n = 0; n < sc.n_pairs; ++n)
                q[n] = T * std::max(rho, detail::kMarginEps) * mu[n];
            flag = -1;
        } else if (!it.solved && flag == 1) {
            for (int n = 0; n < sc.n_pairs; ++n) q[n] -= detail::kMarginEps * T;
            res.terminal = MarginTerminal::NODE_D;
            done = true;
        } else {  // p* == T
            double delta_p = 1.0 / dr.frac_term;
            for (int n = 0; n < sc.n_pairs; ++n) q[n] *= delta_p;
            res.terminal = MarginTerminal::NODE_E;
            done = true;
        }
    }

    res.delta = q[0] / q_first[0];
    double lo = res.delta, hi = res.delta;
    for (int n = 1; n < sc.n_pairs; ++n) {
        double r = q[n] / q_first[n];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    res.direction_spread = (hi - lo) / std::max(1e-300, std::abs(res.delta));
    res.achievable = first_solved;
    return res;
}

inline MarginResult rate_margin(const NetworkScenario& sc, const RateTuple& mu, int horizon,
                                const SolveOptions& opts = {}) {
    return rate_margin(sc, one_slot_frontier(sc), mu, horizon, opts);
}

// Achievability without the full margin iteration: the first drain solve
// on Q0 = T mu L finishes within the horizon.
inline bool is_achievable(const NetworkScenario& sc, const FrontierSet& frontier,
                          const RateTuple& mu, int horizon, const SolveOptions& opts = {}) {
    require_positive_rate(mu, sc.n_pairs);
    QueueState q(sc.n_pairs);
    for (int n = 0; n < sc.n_pairs; ++n) q[n] = horizon * mu[n] * sc.blocklength;
    DrainSolution dr = solve_drain(sc, frontier, q, horizon, opts);
    return dr.status == DrainStatus::SOLVED || dr.status == DrainStatus::EMPTY_START;
}

inline bool is_achievable(const NetworkScenario& sc, const RateTuple& mu, int horizon,
                          const SolveOptions& opts = {}) {
    return is_achievable(sc, one_slot_frontier(sc), mu, horizon, opts);
}

// delta_T(mu) * mu: the weak-Pareto boundary point in the direction mu.
inline RateTuple scale_to_boundary(const NetworkScenario& sc, const RateTuple& mu, int horizon,
                                   const SolveOptions& opts = {}) {
    MarginResult m = rate_margin(sc, mu, horizon, opts);
    if (m.delta <= 0.0)
        throw BoundaryUndefinedError("rate margin is zero; the direction is unreachable");
    RateTuple out(mu.size());
    for (std::size_t n = 0; n < mu.size(); ++n) out[n] = m.delta * mu[n];
    return out;
}

}  // namespace finhor
