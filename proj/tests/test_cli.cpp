#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "finhor/io.hpp"

using nlohmann::json;

namespace {

const std::string kCli = FINHOR_CLI_PATH;
const std::string kDataDir = FINHOR_DATA_DIR;

std::filesystem::path work_dir() {
    auto dir = std::filesystem::temp_directory_path() / "finhor_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    auto dir = work_dir();
    auto out_path = dir / "stdout.txt";
    auto err_path = dir / "stderr.txt";
    std::string cmd = kCli + " " + args + " >" + out_path.string() + " 2>" + err_path.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (status >= 0 && (status & 0x7f) == 0) ? (status >> 8) & 0xff : -1;
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

}  // namespace

TEST_CASE("margin subcommand") {
    auto r = run("margin " + kDataDir + "/sec5.json --rate 0.5,0.5,0.5 --horizon 5");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["delta"].get<double>() == Catch::Approx(1.2554).margin(2e-3));
    CHECK(j["achievable"].get<bool>());
    REQUIRE(j["boundary_rate"].is_array());
    CHECK(j["boundary_rate"][0].get<double>() == Catch::Approx(0.6277).margin(2e-3));

    auto r2 = run("margin " + kDataDir + "/sec5.json --rate 0.3,1,1 --horizon 5");
    REQUIRE(r2.exit_code == 0);
    json j2 = json::parse(r2.out);
    CHECK(j2["delta"].get<double>() == Catch::Approx(0.9079).margin(2e-3));
    CHECK(!j2["achievable"].get<bool>());

    SECTION("wrong rate arity is an input error") {
        auto bad = run("margin " + kDataDir + "/sec5.json --rate 0.5,0.5 --horizon 5");
        CHECK(bad.exit_code == 2);
    }
}

TEST_CASE("frontier subcommand") {
    auto dir = work_dir();
    for (int t : {1, 2, 3}) {
        auto out = dir / ("fig2_front_" + std::to_string(t) + ".csv");
        auto r = run("frontier " + kDataDir + "/fig2.json --horizon " + std::to_string(t) +
                     " --out " + out.string());
        CAPTURE(t);
        REQUIRE(r.exit_code == 0);
        std::ifstream in(out);
        REQUIRE(in.good());
        std::string header, line;
        std::getline(in, header);
        int rows = 0;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') ++rows;
        CHECK(rows >= (t == 1 ? 2 : 3));
    }
}

TEST_CASE("policy subcommand") {
    auto dir = work_dir();
    auto out = dir / "sec5_derived_policy.json";
    auto r = run("policy " + kDataDir + "/sec5.json --rate 0.5,0.5,0.5 --horizon 5 --out " +
                 out.string());
    REQUIRE(r.exit_code == 0);
    std::ifstream in(out);
    json j = json::parse(in);
    CHECK(j["slots"].size() == 5);
    CHECK(j["validation"]["verdict"].get<bool>());

    SECTION("derived policy file validates through the CLI") {
        auto v = run("policy " + kDataDir + "/sec5.json --validate " + out.string());
        REQUIRE(v.exit_code == 0);
        CHECK(json::parse(v.out)["verdict"].get<bool>());
    }
    SECTION("shipped reference policy validates") {
        auto v = run("policy " + kDataDir + "/sec5.json --validate " + kDataDir +
                     "/sec5_policy.json");
        REQUIRE(v.exit_code == 0);
        CHECK(json::parse(v.out)["verdict"].get<bool>());
    }
    SECTION("unachievable target exits 4 with a scale-down hint") {
        auto bad = run("policy " + kDataDir + "/sec5.json --rate 0.3,1,1 --horizon 5");
        CHECK(bad.exit_code == 4);
        CHECK(bad.err.find("0.9079") != std::string::npos);
    }
}

TEST_CASE("bench subcommand determinism") {
    auto dir = work_dir();
    auto a = dir / "bench_a.csv";
    auto b = dir / "bench_b.csv";
    std::string args = "bench " + kDataDir + "/table1.json --horizons 2,3 --trials 5 --seed 9";
    REQUIRE(run(args + " --out " + a.string()).exit_code == 0);
    REQUIRE(run(args + " --out " + b.string()).exit_code == 0);
    std::ifstream fa(a), fb(b);
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("T,trials,AIN,AEBR", 0) == 0);
}

TEST_CASE("scenario JSON round trip") {
    auto sc = finhor::io::load_scenario(kDataDir + "/fig2.json");
    auto again = finhor::io::scenario_from_json(finhor::io::scenario_to_json(sc));
    CHECK(again.n_pairs == sc.n_pairs);
    CHECK(again.gains == sc.gains);
    CHECK(again.noise == sc.noise);
    CHECK(again.power_sets == sc.power_sets);
    CHECK(again.blocklength == sc.blocklength);
    CHECK(again.error_prob == sc.error_prob);

    SECTION("missing scenario file") {
        auto r = run("margin /nonexistent.json --rate 1 --horizon 1");
        CHECK(r.exit_code == 2);
    }
}
