#pragma once

// Shared test scenarios and the deterministic random-instance generator
// used by the property and acceptance suites.

#include <cstdint>
#include <vector>

#include "finhor/finhor.hpp"

namespace testsupport {

using namespace finhor;

// Two symmetric pairs with on-off powers (the running two-pair example).
inline NetworkScenario two_pair_scenario() {
    NetworkScenario sc;
    sc.n_pairs = 2;
    sc.gains = {{1.0, 0.3}, {0.3, 1.0}};
    sc.noise = {0.1, 0.1};
    sc.power_sets = {{0.0, 3.0}, {0.0, 3.0}};
    sc.blocklength = 100;
    sc.error_prob = 0.001;
    sc.validate();
    return sc;
}

// Three asymmetric pairs with on-off powers.
inline NetworkScenario three_pair_scenario() {
    NetworkScenario sc;
    sc.n_pairs = 3;
    sc.gains = {{0.8, 0.15, 0.25}, {0.15, 0.7, 0.3}, {0.25, 0.3, 0.9}};
    sc.noise = {0.1, 0.1, 0.1};
    sc.power_sets = {{0.0, 5.0}, {0.0, 5.0}, {0.0, 5.0}};
    sc.blocklength = 100;
    sc.error_prob = 0.001;
    sc.validate();
    return sc;
}

// Three symmetric pairs with three-level powers (the bench scenario).
inline NetworkScenario bench_scenario() {
    NetworkScenario sc;
    sc.n_pairs = 3;
    sc.gains = {{0.5, 0.3, 0.3}, {0.3, 0.5, 0.3}, {0.3, 0.3, 0.5}};
    sc.noise = {0.1, 0.1, 0.1};
    sc.power_sets = {{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};
    sc.blocklength = 100;
    sc.error_prob = 0.001;
    sc.validate();
    return sc;
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x6a09e667f3bcc909ULL) {}
    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    double uniform(double lo, double hi) {
        double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Random two-pair instance with up to 3 power levels per pair, gains and
// noise in fixed ranges.
inline NetworkScenario random_small_scenario(Rng& rng) {
    NetworkScenario sc;
    sc.n_pairs = 2;
    sc.gains = {{rng.uniform(0.5, 1.5), rng.uniform(0.0, 0.5)},
                {rng.uniform(0.0, 0.5), rng.uniform(0.5, 1.5)}};
    sc.noise = {rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3)};
    for (int n = 0; n < 2; ++n) {
        std::vector<double> ps = {0.0};
        int extra = rng.uniform_int(1, 2);
        double level = 0.0;
        for (int i = 0; i < extra; ++i) {
            level += rng.uniform(0.5, 3.0);
            ps.push_back(level);
        }
        sc.power_sets.push_back(ps);
    }
    sc.blocklength = 100;
    sc.error_prob = 0.001;
    sc.validate();
    return sc;
}

// Strictly positive rate tuple drawn from the scaled convex hull of the
// one-slot frontier, so instances span achievable and unachievable
// directions.
inline RateTuple random_rate_tuple(Rng& rng, const FrontierSet& frontier, double max_scale) {
    const std::size_t dim = frontier.points[0].rate.size();
    RateTuple mu(dim, 0.0);
    double wsum = 0.0;
    std::vector<double> w(frontier.points.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = -std::log(rng.uniform(1e-12, 1.0));
        wsum += w[i];
    }
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t n = 0; n < dim; ++n)
            mu[n] += (w[i] / wsum) * frontier.points[i].rate[n];
    double scale = rng.uniform(0.05, max_scale);
    for (double& m : mu) m = std::max(1e-6, m * scale);
    return mu;
}

}  // namespace testsupport
