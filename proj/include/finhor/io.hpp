#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "finhor/bench.hpp"
#include "finhor/oracle.hpp"
#include "finhor/policy.hpp"

namespace finhor {
namespace io {

using nlohmann::json;

namespace detail {

template <typename T>
T get_field(const json& j, const std::string& key) {
    if (!j.contains(key)) throw InputError("missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError("field '" + key + "' has the wrong type");
    }
}

}  // namespace detail

// Scenario JSON schema: pairs, gains (NxN row-major, gains[m][n] is the
// cross gain from transmitter m to receiver n), noise, power_sets,
// blocklength, error_prob. Gains and powers are dimensionless, rates are
// bits per channel use, queues are bits.
inline NetworkScenario scenario_from_json(const json& j) {
    NetworkScenario sc;
    sc.n_pairs = detail::get_field<int>(j, "pairs");
    sc.gains = detail::get_field<std::vector<std::vector<double>>>(j, "gains");
    sc.noise = detail::get_field<std::vector<double>>(j, "noise");
    sc.power_sets = detail::get_field<std::vector<std::vector<double>>>(j, "power_sets");
    sc.blocklength = detail::get_field<int>(j, "blocklength");
    sc.error_prob = detail::get_field<double>(j, "error_prob");
    sc.validate();
    return sc;
}

inline json scenario_to_json(const NetworkScenario& sc) {
    return json{{"pairs", sc.n_pairs},         {"gains", sc.gains},
                {"noise", sc.noise},           {"power_sets", sc.power_sets},
                {"blocklength", sc.blocklength}, {"error_prob", sc.error_prob}};
}

inline NetworkScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("scenario parse error in " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

inline json policy_to_json(const Policy& policy) {
    json slots = json::array();
    for (const auto& [rate, power] : policy.entries)
        slots.push_back(json{{"rate", rate}, {"power", power}});
    return json{{"pairs", policy.target.size()},
                {"horizon", policy.horizon},
                {"target", policy.target},
                {"slots", slots}};
}

inline Policy policy_from_json(const json& j) {
    Policy p;
    p.horizon = detail::get_field<int>(j, "horizon");
    p.target = detail::get_field<RateTuple>(j, "target");
    if (!j.contains("slots") || !j.at("slots").is_array())
        throw InputError("missing or invalid field 'slots'");
    for (const auto& slot : j.at("slots")) {
        p.entries.emplace_back(detail::get_field<RateTuple>(slot, "rate"),
                               detail::get_field<PowerTuple>(slot, "power"));
    }
    return p;
}

inline Policy load_policy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open policy file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("policy parse error in " + path + ": " + e.what());
    }
    return policy_from_json(j);
}

inline json validation_to_json(const PolicyValidation& v) {
    return json{{"verdict", v.verdict},
                {"residual", v.residual},
                {"slot_ok", v.slot_ok},
                {"first_violation", v.first_violation}};
}

inline json margin_to_json(const MarginResult& m) {
    const char* terminal = m.terminal == MarginTerminal::NODE_B   ? "NODE_B"
                           : m.terminal == MarginTerminal::NODE_D ? "NODE_D"
                                                                  : "NODE_E";
    return json{{"delta", m.delta},
                {"iterations", m.iterations},
                {"achievable", m.achievable},
                {"terminal", terminal}};
}

namespace detail {

inline void write_csv_value(std::ostream& os, double v) {
    os << std::setprecision(17) << v;
}

}  // namespace detail

// One-slot frontier CSV: rate components then producing power components.
inline void write_frontier_csv(std::ostream& os, const FrontierSet& fs) {
    const int n = fs.points.empty() ? 0 : static_cast<int>(fs.points[0].rate.size());
    os << "# scenario " << fs.scenario_fingerprint << "\n";
    for (int i = 0; i < n; ++i) os << "rate_" << (i + 1) << ",";
    for (int i = 0; i < n; ++i) os << "power_" << (i + 1) << (i + 1 < n ? "," : "\n");
    for (const auto& pt : fs.points) {
        for (double r : pt.rate) {
            detail::write_csv_value(os, r);
            os << ",";
        }
        for (std::size_t i = 0; i < pt.power.size(); ++i) {
            detail::write_csv_value(os, pt.power[i]);
            os << (i + 1 < pt.power.size() ? "," : "\n");
        }
    }
}

// T-slot frontier CSV: weak-Pareto points with a flag marking the Pareto
// subset.
inline void write_region_csv(std::ostream& os, const oracle::EnumeratedRegion& region) {
    const int n = region.weak_pareto.empty() ? 0 : static_cast<int>(region.weak_pareto[0].size());
    for (int i = 0; i < n; ++i) os << "rate_" << (i + 1) << ",";
    os << "pareto,weak_pareto\n";
    for (const auto& pt : region.weak_pareto) {
        bool on_pareto = false;
        for (const auto& p : region.pareto)
            if (tuples_equal(p, pt)) { on_pareto = true; break; }
        for (double r : pt) {
            detail::write_csv_value(os, r);
            os << ",";
        }
        os << (on_pareto ? 1 : 0) << ",1\n";
    }
}

inline json region_to_json(const oracle::EnumeratedRegion& region) {
    return json{{"horizon", region.horizon},
                {"pareto", region.pareto},
                {"weak_pareto", region.weak_pareto}};
}

inline void write_bench_csv(std::ostream& os, const bench::BenchReport& report) {
    os << "T,trials,AIN,AEBR\n";
    for (const auto& row : report.rows) {
        os << row.horizon << "," << row.trials << ",";
        detail::write_csv_value(os, row.ain);
        os << ",";
        detail::write_csv_value(os, row.aebr);
        os << "\n";
    }
}

inline json bench_to_json(const bench::BenchReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows)
        rows.push_back(json{{"T", row.horizon},
                            {"trials", row.trials},
                            {"failures", row.failures},
                            {"AIN", row.ain},
                            {"AEBR", row.aebr}});
    return json{{"seed", report.seed}, {"rows", rows}};
}

inline void write_search_trace_csv(std::ostream& os, const DrainSolution& sol) {
    os << "depth,F,G,E,queue\n";
    for (const auto& e : sol.trace) {
        os << e.depth << ",";
        detail::write_csv_value(os, e.f);
        os << ",";
        detail::write_csv_value(os, e.g);
        os << ",";
        detail::write_csv_value(os, e.e);
        os << ",\"";
        for (std::size_t i = 0; i < e.queue.size(); ++i)
            os << (i ? " " : "") << std::setprecision(17) << e.queue[i];
        os << "\"\n";
    }
}

}  // namespace io
}  // namespace finhor
