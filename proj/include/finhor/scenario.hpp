#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "finhor/errors.hpp"

namespace finhor {

// N-dimensional non-negative real tuples. Rates are in bits per channel
// use, powers are dimensionless (normalized), queues are in bits.
using RateTuple = std::vector<double>;
using PowerTuple = std::vector<double>;
using QueueState = std::vector<double>;

// Static description of a multi-user Gaussian interference network with
// discrete per-pair transmit-power sets and a finite blocklength.
struct NetworkScenario {
    int n_pairs = 0;
    // gains[m][n] = cross gain from transmitter m to receiver n; the
    // diagonal holds the direct gains.
    std::vector<std::vector<double>> gains;
    std::vector<double> noise;
    std::vector<std::vector<double>> power_sets;  // each contains 0
    int blocklength = 0;
    double error_prob = 0.0;

    // Throws InputError on any structural or invariant violation.
    // Sorts each power set ascending and removes duplicates so that
    // enumeration order is deterministic.
    void validate() {
        if (n_pairs <= 0) throw InputError("pairs must be a positive integer");
        const auto n = static_cast<std::size_t>(n_pairs);
        if (gains.size() != n) throw InputError("gains must be an NxN matrix");
        for (std::size_t m = 0; m < n; ++m) {
            if (gains[m].size() != n) throw InputError("gains row " + std::to_string(m) + " has wrong length");
            for (double g : gains[m]) {
                if (!(g >= 0.0)) throw InputError("channel gains must be non-negative");
            }
        }
        for (std::size_t d = 0; d < n; ++d) {
            if (!(gains[d][d] > 0.0)) throw InputError("direct gain h_" + std::to_string(d + 1) + std::to_string(d + 1) + " must be positive");
        }
        if (noise.size() != n) throw InputError("noise must have length N");
        for (double w : noise) {
            if (!(w > 0.0)) throw InputError("noise powers must be strictly positive");
        }
        if (power_sets.size() != n) throw InputError("power_sets must have length N");
        for (std::size_t i = 0; i < n; ++i) {
            auto& ps = power_sets[i];
            if (ps.empty()) throw InputError("power set " + std::to_string(i + 1) + " is empty");
            for (double s : ps) {
                if (!(s >= 0.0)) throw InputError("transmit powers must be non-negative");
            }
            std::sort(ps.begin(), ps.end());
            ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
            if (ps.front() != 0.0) throw InputError("power set " + std::to_string(i + 1) + " must contain 0");
        }
        if (blocklength < 1) throw InputError("blocklength must be a positive integer");
        if (!(error_prob > 0.0 && error_prob < 0.5)) throw InputError("error_prob must lie in (0, 0.5)");
    }

    // |S| = product of per-pair power-set sizes.
    double power_tuple_count() const {
        double c = 1.0;
        for (const auto& ps : power_sets) c *= static_cast<double>(ps.size());
        return c;
    }

    // Stable identifier used to tag derived artifacts (frontier dumps).
    std::string fingerprint() const {
        char buf[64];
        double acc = static_cast<double>(n_pairs) + blocklength * 1e-3 + error_prob;
        for (const auto& row : gains)
            for (double g : row) acc = acc * 1.000173 + g;
        for (double w : noise) acc = acc * 1.000173 + w;
        for (const auto& ps : power_sets)
            for (double s : ps) acc = acc * 1.000173 + s;
        std::snprintf(buf, sizeof(buf), "N%d-L%d-%.17g", n_pairs, blocklength, acc);
        return buf;
    }
};

inline void require_positive_rate(const RateTuple& mu, int n_pairs) {
    if (static_cast<int>(mu.size()) != n_pairs)
        throw InputError("rate tuple length must equal the number of pairs");
    for (double m : mu) {
        if (!(m > 0.0))
            throw InputError("rate components must be strictly positive; remove inactive pairs from the scenario instead");
    }
}

}  // namespace finhor
