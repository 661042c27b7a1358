// Command-line surface: scenario ingestion, frontier/margin/policy/bench
// subcommands, plot-ready CSV/JSON emission.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finhor/finhor.hpp"

namespace {

using namespace finhor;
using nlohmann::json;

SolveOptions solve_options_from_env() {
    SolveOptions opts;
    if (const char* budget = std::getenv("FINHOR_NODE_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(budget, &end, 10);
        if (end && *end == '\0' && v > 0) opts.node_budget = v;
    }
    return opts;
}

RateTuple parse_rate(const std::vector<double>& raw, const NetworkScenario& sc) {
    if (static_cast<int>(raw.size()) != sc.n_pairs)
        throw InputError("--rate needs exactly " + std::to_string(sc.n_pairs) + " components");
    for (double r : raw)
        if (!(r > 0.0)) throw InputError("--rate components must be strictly positive");
    return raw;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw InputError("cannot open output file: " + path);
    return file;
}

int run_frontier(const std::string& scenario_path, int horizon, const std::string& out_path,
                 const std::string& format) {
    NetworkScenario sc = io::load_scenario(scenario_path);
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    if (horizon == 1) {
        FrontierSet fs = one_slot_frontier(sc);
        if (format == "json") {
            json pts = json::array();
            for (const auto& pt : fs.points)
                pts.push_back(json{{"rate", pt.rate}, {"power", pt.power}});
            os << json{{"horizon", 1}, {"points", pts}}.dump(2) << "\n";
        } else {
            io::write_frontier_csv(os, fs);
        }
    } else {
        auto region = oracle::enumerate_frontier(sc, horizon);
        if (format == "json")
            os << io::region_to_json(region).dump(2) << "\n";
        else
            io::write_region_csv(os, region);
    }
    return 0;
}

int run_margin(const std::string& scenario_path, const std::vector<double>& rate_raw,
               int horizon, const std::string& trace_path) {
    NetworkScenario sc = io::load_scenario(scenario_path);
    RateTuple mu = parse_rate(rate_raw, sc);
    SolveOptions opts = solve_options_from_env();
    FrontierSet frontier = one_slot_frontier(sc);

    if (!trace_path.empty()) {
        SolveOptions traced = opts;
        traced.collect_trace = true;
        QueueState q0(sc.n_pairs);
        for (int n = 0; n < sc.n_pairs; ++n) q0[n] = horizon * mu[n] * sc.blocklength;
        DrainSolution dr = solve_drain(sc, frontier, q0, horizon, traced);
        std::ofstream tf(trace_path);
        if (!tf) throw InputError("cannot open trace file: " + trace_path);
        io::write_search_trace_csv(tf, dr);
    }

    MarginResult m = rate_margin(sc, frontier, mu, horizon, opts);
    json out = io::margin_to_json(m);
    if (m.delta > 0.0) {
        RateTuple boundary(mu.size());
        for (std::size_t n = 0; n < mu.size(); ++n) boundary[n] = m.delta * mu[n];
        out["boundary_rate"] = boundary;
    } else {
        out["boundary_rate"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_policy(const std::string& scenario_path, const std::vector<double>& rate_raw,
               int horizon, const std::string& out_path, const std::string& validate_path) {
    NetworkScenario sc = io::load_scenario(scenario_path);
    SolveOptions opts = solve_options_from_env();

    if (!validate_path.empty()) {
        Policy policy = io::load_policy(validate_path);
        PolicyValidation rep = validate_policy(sc, policy);
        std::cout << io::validation_to_json(rep).dump(2) << "\n";
        return 0;
    }

    RateTuple mu = parse_rate(rate_raw, sc);
    Policy policy = derive_policy(sc, mu, horizon, opts);
    PolicyValidation rep = validate_policy(sc, policy);
    json out = io::policy_to_json(policy);
    out["validation"] = io::validation_to_json(rep);
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << out.dump(2) << "\n";
    return 0;
}

int run_bench(const std::string& scenario_path, const std::vector<int>& horizons, int trials,
              std::uint64_t seed, const std::string& out_path, const std::string& format,
              const std::string& raw_path) {
    NetworkScenario sc = io::load_scenario(scenario_path);
    SolveOptions opts = solve_options_from_env();
    bench::BenchReport report =
        bench::run_table1(sc, horizons, trials, seed, opts, !raw_path.empty());
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    if (format == "json")
        os << io::bench_to_json(report).dump(2) << "\n";
    else
        io::write_bench_csv(os, report);
    if (!raw_path.empty()) {
        std::ofstream rf(raw_path);
        if (!rf) throw InputError("cannot open raw output file: " + raw_path);
        rf << "T,trial,delta,iterations,failed\n";
        for (const auto& rec : report.raw)
            rf << rec.horizon << "," << rec.trial << "," << rec.delta << ","
               << rec.iterations << "," << (rec.failed ? 1 : 0) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-horizon throughput region toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, format = "csv", trace_path, validate_path, raw_path;
    std::vector<double> rate;
    std::vector<int> horizons = {2, 3, 4, 5};
    int horizon = 1;
    int trials = 1000;
    std::uint64_t seed = 42;

    auto* frontier = app.add_subcommand("frontier", "Enumerate the T-slot Pareto frontier");
    frontier->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    frontier->add_option("--horizon", horizon, "Number of time slots")->check(CLI::PositiveNumber);
    frontier->add_option("--out", out_path, "Output path ('-' for stdout)");
    frontier->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* margin = app.add_subcommand("margin", "Compute the rate margin of a rate tuple");
    margin->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    margin->add_option("--rate", rate, "Comma-separated rate tuple")
        ->required()
        ->delimiter(',');
    margin->add_option("--horizon", horizon, "Number of time slots")
        ->required()
        ->check(CLI::PositiveNumber);
    margin->add_option("--trace", trace_path, "Dump the first drain-search trace as CSV");

    auto* policy = app.add_subcommand("policy", "Derive or validate a rate-achieving policy");
    policy->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    policy->add_option("--rate", rate, "Comma-separated rate tuple")->delimiter(',');
    policy->add_option("--horizon", horizon, "Number of time slots")->check(CLI::PositiveNumber);
    policy->add_option("--out", out_path, "Policy output path ('-' for stdout)");
    policy->add_option("--validate", validate_path, "Validate an existing policy JSON file");

    auto* bench = app.add_subcommand("bench", "Monte Carlo margin efficiency study");
    bench->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    bench->add_option("--horizons", horizons, "Comma-separated horizons")->delimiter(',');
    bench->add_option("--trials", trials, "Trials per horizon")->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "RNG seed");
    bench->add_option("--out", out_path, "Report output path ('-' for stdout)");
    bench->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--raw", raw_path, "Optional per-trial raw log path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (frontier->parsed()) return run_frontier(scenario_path, horizon, out_path, format);
        if (margin->parsed()) return run_margin(scenario_path, rate, horizon, trace_path);
        if (policy->parsed()) {
            if (validate_path.empty() && rate.empty())
                throw finhor::InputError("policy requires --rate/--horizon or --validate");
            return run_policy(scenario_path, rate, horizon, out_path, validate_path);
        }
        if (bench->parsed())
            return run_bench(scenario_path, horizons, trials, seed, out_path, format, raw_path);
    } catch (const finhor::UnachievableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.delta > 0.0)
            std::cerr << "hint: scale the rate tuple down by the factor " << e.delta
                      << " (the minimum scalar is 1/" << e.delta << ")\n";
        return 4;
    } catch (const finhor::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const finhor::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
