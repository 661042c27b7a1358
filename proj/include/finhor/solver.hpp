#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "finhor/region.hpp"

namespace finhor {

enum class DrainStatus { SOLVED, EXCEEDS_HORIZON, EMPTY_START };

struct SearchTraceEntry {
    int depth;
    double f, g, e;
    QueueState queue;
    std::vector<double> served;  // cumulative capacity sums along the path, in bits
};

// Outcome of the queue-draining problem.
struct DrainSolution {
    DrainStatus status = DrainStatus::EXCEEDS_HORIZON;
    std::vector<PowerTuple> power_seq;      // length p_star when SOLVED
    int p_star = 0;
    double frac_term = 0.0;                 // max-ratio term of the objective
    std::vector<QueueState> queue_trace;    // Q_0 .. Q_{p*} when SOLVED
    std::int64_t expanded_nodes = 0;
    std::vector<SearchTraceEntry> trace;    // filled when collect_trace is set
};

struct SolveOptions {
    std::int64_t node_budget = 10'000'000;
    bool collect_trace = false;
};

// Queue-drained tolerance per component, in bits.
inline double queue_tolerance(const NetworkScenario& sc) {
    return 1e-9 * sc.blocklength;
}

inline bool queue_empty(const QueueState& q, double tol) {
    for (double x : q)
        if (x > tol) return false;
    return true;
}

// Interference-free admissible lower bound on the remaining drain cost:
// max over pairs of pending bits over the best-case per-slot service.
inline double heuristic(const NetworkScenario& sc, const QueueState& q) {
    double tol = queue_tolerance(sc);
    double h = 0.0;
    for (int n = 0; n < sc.n_pairs; ++n) {
        if (q[n] <= tol) continue;
        double rate = max_rate(interference_free_sinr(sc, n), sc.blocklength, sc.error_prob);
        if (rate <= 0.0) throw InfeasiblePairError(n);
        double v = q[n] / (rate * sc.blocklength);
        if (v > h) h = v;
    }
    return h;
}

namespace detail {

struct SearchNode {
    QueueState queue;
    std::vector<double> served;   // cumulative capacity sums, in bits
    std::vector<int> path;        // indices into the refined set
    double g = 0.0;
    double e = 0.0;
    bool goal = false;
    double f() const { return g + e; }
    int depth() const { return static_cast<int>(path.size()); }
};

// Fringe order: smallest F, then greater depth, then lexicographically
// smaller path. Exact comparisons keep expanded-node counts reproducible.
struct NodeOrder {
    const std::vector<SearchNode>* pool;
    bool operator()(std::size_t a, std::size_t b) const {
        const SearchNode& na = (*pool)[a];
        const SearchNode& nb = (*pool)[b];
        if (na.f() != nb.f()) return na.f() < nb.f();
        if (na.depth() != nb.depth()) return na.depth() > nb.depth();
        if (na.path != nb.path) return na.path < nb.path;
        return a < b;
    }
};

inline double frac_term_of(const QueueState& q0, const std::vector<double>& served,
                           double tol) {
    double frac = 0.0;
    for (std::size_t n = 0; n < q0.size(); ++n) {
        if (q0[n] <= tol) continue;
        double r = q0[n] / served[n];
        if (r > frac) frac = r;
    }
    return frac;
}

// A* over refined-set action sequences. informed=false turns the search
// into uniform-cost and disables the served-vector dominance pruning.
inline DrainSolution solve_drain_impl(const NetworkScenario& sc, const FrontierSet& frontier,
                                      const QueueState& q0, int depth_cap, bool informed,
                                      const SolveOptions& opts) {
    if (static_cast<int>(q0.size()) != sc.n_pairs)
        throw InputError("queue state length must equal the number of pairs");
    for (double x : q0)
        if (!(x >= 0.0)) throw InputError("queue components must be non-negative");
    if (depth_cap < 1) throw InputError("depth cap must be at least 1");

    const double tol = queue_tolerance(sc);
    DrainSolution sol;
    if (queue_empty(q0, tol)) {
        sol.status = DrainStatus::EMPTY_START;
        sol.queue_trace = {q0};
        return sol;
    }
    heuristic(sc, q0);  // raises InfeasiblePairError if some pair can never drain

    const auto& actions = frontier.points;
    const int num_actions = static_cast<int>(actions.size());
    const double L = sc.blocklength;

    std::vector<SearchNode> pool;
    NodeOrder order{&pool};
    std::set<std::size_t, NodeOrder> fringe(order);
    // (depth, served) records of expanded nodes for pruning rule 2
    std::vector<std::pair<int, std::vector<double>>> expanded;

    SearchNode root;
    root.queue = q0;
    root.served.assign(sc.n_pairs, 0.0);
    root.e = informed ? heuristic(sc, q0) : 0.0;
    // the estimate is a lower bound on the slots still needed, so a node
    // whose estimate exceeds the remaining slot budget has no goal below
    // the depth cap and is never inserted
    if (informed && root.e > static_cast<double>(depth_cap) + 1e-9)
        return sol;  // EXCEEDS_HORIZON
    pool.push_back(std::move(root));
    fringe.insert(0);

    while (!fringe.empty()) {
        std::size_t cur = *fringe.begin();
        fringe.erase(fringe.begin());
        const SearchNode node = pool[cur];  // copy; pool may grow below

        if (opts.collect_trace)
            sol.trace.push_back(
                {node.depth(), node.f(), node.g, node.e, node.queue, node.served});

        if (node.goal) {
            sol.status = DrainStatus::SOLVED;
            sol.p_star = node.depth();
            sol.frac_term = frac_term_of(q0, node.served, tol);
            sol.queue_trace.push_back(q0);
            QueueState q = q0;
            for (int idx : node.path) {
                sol.power_seq.push_back(actions[idx].power);
                for (int n = 0; n < sc.n_pairs; ++n) {
                    q[n] = std::max(0.0, q[n] - actions[idx].rate[n] * L);
                    if (q[n] <= tol) q[n] = 0.0;
                }
                sol.queue_trace.push_back(q);
            }
            return sol;
        }

        // pruning rule 1: depth-cap leaf with pending data
        if (node.depth() >= depth_cap) continue;

        // pruning rule 2: a node whose cumulative service is dominated by
        // an already-expanded node of equal or smaller depth cannot lead
        // to a better completion (its subtree is a weakening of the
        // dominator's), so it is discarded instead of expanded. Applied
        // at selection time so late-generated duplicates — e.g. action
        // permutations of an expanded sequence — are caught too.
        if (informed) {
            bool covered = false;
            for (const auto& [d, served] : expanded) {
                if (d <= node.depth() && dominates(served, node.served, tol)) {
                    covered = true;
                    break;
                }
            }
            if (covered) continue;
            // keep the record Pareto-maximal: drop entries the new node covers
            std::erase_if(expanded, [&](const auto& entry) {
                return entry.first >= node.depth() &&
                       dominates(node.served, entry.second, tol);
            });
            expanded.emplace_back(node.depth(), node.served);
        }

        ++sol.expanded_nodes;
        for (int a = 0; a < num_actions; ++a) {
            SearchNode child;
            child.queue.resize(sc.n_pairs);
            child.served.resize(sc.n_pairs);
            for (int n = 0; n < sc.n_pairs; ++n) {
                child.queue[n] = std::max(0.0, node.queue[n] - actions[a].rate[n] * L);
                if (child.queue[n] <= tol) child.queue[n] = 0.0;
                child.served[n] = node.served[n] + actions[a].rate[n] * L;
            }
            child.path = node.path;
            child.path.push_back(a);
            child.goal = queue_empty(child.queue, tol);
            if (child.goal) {
                child.g = node.g + frac_term_of(q0, child.served, tol);
                child.e = 0.0;
            } else {
                child.g = node.g + 1.0;
                child.e = informed ? heuristic(sc, child.queue) : 0.0;
                if (informed &&
                    child.e > static_cast<double>(depth_cap - child.depth()) + 1e-9)
                    continue;  // no goal within the remaining slot budget
            }
            if (static_cast<std::int64_t>(pool.size()) >= opts.node_budget)
                throw CapacityError("search node budget exceeded");
            pool.push_back(std::move(child));
            fringe.insert(pool.size() - 1);
        }
    }

    sol.status = DrainStatus::EXCEEDS_HORIZON;
    return sol;
}

}  // namespace detail

// Solve the minimum-slot queue-draining problem over the refined action
// set with the interference-free heuristic and both pruning rules.
inline DrainSolution solve_drain(const NetworkScenario& sc, const FrontierSet& frontier,
                                 const QueueState& q0, int depth_cap,
                                 const SolveOptions& opts = {}) {
    return detail::solve_drain_impl(sc, frontier, q0, depth_cap, true, opts);
}

inline DrainSolution solve_drain(const NetworkScenario& sc, const QueueState& q0,
                                 int depth_cap, const SolveOptions& opts = {}) {
    return solve_drain(sc, one_slot_frontier(sc), q0, depth_cap, opts);
}

// Uniform-cost baseline: zero heuristic, no dominance pruning. Same
// optimal objective; used as the expanded-node baseline in tests.
inline DrainSolution solve_drain_uninformed(const NetworkScenario& sc,
                                            const FrontierSet& frontier, const QueueState& q0,
                                            int depth_cap, const SolveOptions& opts = {}) {
    return detail::solve_drain_impl(sc, frontier, q0, depth_cap, false, opts);
}

inline DrainSolution solve_drain_uninformed(const NetworkScenario& sc, const QueueState& q0,
                                            int depth_cap, const SolveOptions& opts = {}) {
    return solve_drain_uninformed(sc, one_slot_frontier(sc), q0, depth_cap, opts);
}

}  // namespace finhor
