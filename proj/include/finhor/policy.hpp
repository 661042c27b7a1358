#pragma once

#include <utility>
#include <vector>

#include "finhor/margin.hpp"

namespace finhor {

// Per-slot (rate, power) schedule whose average meets a target rate
// tuple under the per-slot maximum-rate constraints.
struct Policy {
    std::vector<std::pair<RateTuple, PowerTuple>> entries;
    RateTuple target;
    int horizon = 0;
};

struct PolicyValidation {
    std::vector<bool> slot_ok;   // rate within the slot's capacity
    double residual = 0.0;       // ||average rate - target||_inf
    bool verdict = false;
    int first_violation = -1;    // 0-based slot index, -1 if none
};

inline constexpr double kPolicyResidualTol = 1e-6;

// Checks the per-slot capacity constraints and the achievement residual.
inline PolicyValidation validate_policy(const NetworkScenario& sc, const Policy& policy) {
    if (static_cast<int>(policy.entries.size()) != policy.horizon)
        throw InputError("policy entry count must equal the horizon");
    if (static_cast<int>(policy.target.size()) != sc.n_pairs)
        throw InputError("policy target length must equal the number of pairs");
    PolicyValidation rep;
    RateTuple avg(sc.n_pairs, 0.0);
    for (std::size_t t = 0; t < policy.entries.size(); ++t) {
        const auto& [rate, power] = policy.entries[t];
        if (static_cast<int>(rate.size()) != sc.n_pairs ||
            static_cast<int>(power.size()) != sc.n_pairs)
            throw InputError("policy slot " + std::to_string(t + 1) + " has wrong tuple length");
        RateTuple cap = max_rate_tuple(sc, power);
        bool ok = dominates(cap, rate, kDomTol);
        for (int n = 0; n < sc.n_pairs; ++n) {
            if (rate[n] < 0.0) ok = false;
            avg[n] += rate[n];
        }
        rep.slot_ok.push_back(ok);
        if (!ok && rep.first_violation < 0) rep.first_violation = static_cast<int>(t);
    }
    for (int n = 0; n < sc.n_pairs; ++n) {
        double r = std::abs(avg[n] / policy.horizon - policy.target[n]);
        rep.residual = std::max(rep.residual, r);
    }
    rep.verdict = rep.first_violation < 0 && rep.residual <= kPolicyResidualTol;
    return rep;
}

// Builds a rate-achieving policy from an optimal drain solution: slot
// rates are the queue decrements over the blocklength, idle slots are
// appended after the drain finishes.
inline Policy derive_policy(const NetworkScenario& sc, const FrontierSet& frontier,
                            const RateTuple& mu, int horizon, const SolveOptions& opts = {}) {
    require_positive_rate(mu, sc.n_pairs);
    if (horizon < 1) throw InputError("horizon must be a positive integer");
    const double L = sc.blocklength;
    QueueState q0(sc.n_pairs);
    for (int n = 0; n < sc.n_pairs; ++n) q0[n] = horizon * mu[n] * L;

    DrainSolution dr = solve_drain(sc, frontier, q0, horizon, opts);
    if (dr.status == DrainStatus::EXCEEDS_HORIZON) {
        double delta = rate_margin(sc, frontier, mu, horizon, opts).delta;
        throw UnachievableError("rate tuple is not achievable within " +
                                    std::to_string(horizon) + " slots (rate margin " +
                                    std::to_string(delta) + ")",
                                delta);
    }

    Policy policy;
    policy.target = mu;
    policy.horizon = horizon;
    for (int t = 0; t < dr.p_star; ++t) {
        RateTuple rate(sc.n_pairs);
        for (int n = 0; n < sc.n_pairs; ++n)
            rate[n] = (dr.queue_trace[t][n] - dr.queue_trace[t + 1][n]) / L;
        policy.entries.emplace_back(std::move(rate), dr.power_seq[t]);
    }
    for (int t = dr.p_star; t < horizon; ++t)
        policy.entries.emplace_back(RateTuple(sc.n_pairs, 0.0), PowerTuple(sc.n_pairs, 0.0));
    return policy;
}

inline Policy derive_policy(const NetworkScenario& sc, const RateTuple& mu, int horizon,
                            const SolveOptions& opts = {}) {
    return derive_policy(sc, one_slot_frontier(sc), mu, horizon, opts);
}

}  // namespace finhor
