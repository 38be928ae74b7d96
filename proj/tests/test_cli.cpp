#include <doctest.h>

#include <filesystem>
#include <string>

#include "test_util.hpp"

namespace fs = std::filesystem;
using testutil::read_file;
using testutil::run_cli;

namespace {

std::string tmp_dir() {
    const auto dir = fs::temp_directory_path() / "mkt_cli_tests";
    fs::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("describe prints summary json and exits 0") {
    const auto result = run_cli(std::string("describe ") + MKT_SAMPLE_PANEL,
                                tmp_dir() + "/describe");
    CHECK(result.exit_code == 0);
    CHECK(result.output.rfind("{", 0) == 0);
    CHECK(result.output.find("\"companies\"") != std::string::npos);
}

TEST_CASE("missing input file exits 1 and names the path") {
    const auto prefix = tmp_dir() + "/missing";
    const auto result = run_cli("correlate missing.csv", prefix);
    CHECK(result.exit_code == 1);
    const auto err = read_file(prefix + ".stderr");
    CHECK(err.find("missing.csv") != std::string::npos);
}

TEST_CASE("unknown subcommand exits 1") {
    const auto result = run_cli("frobnicate", tmp_dir() + "/unknown");
    CHECK(result.exit_code == 1);
}

TEST_CASE("numerical failure exits 2") {
    // Indefinite correlation matrix: Cholesky cannot succeed even with jitter.
    const auto dir = tmp_dir();
    const std::string bad = dir + "/bad_system.json";
    testutil::write_file(bad, R"({
        "factors": ["a", "b", "c"],
        "alpha": [0, 0, 0],
        "beta": [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        "sigma": [1, 1, 1],
        "corr": [[1.0, 0.9, -0.9], [0.9, 1.0, 0.9], [-0.9, 0.9, 1.0]],
        "x0": [0, 0, 0]
    })");
    const auto result = run_cli("simulate " + bad + " --paths 10 --steps 5", dir + "/numfail");
    CHECK(result.exit_code == 2);
}

TEST_CASE("period slice flag matches slicing semantics") {
    const auto result = run_cli(std::string("describe ") + MKT_SAMPLE_PANEL +
                                    " --period 2017:2019",
                                tmp_dir() + "/period");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("2019") != std::string::npos);
    CHECK(result.output.find("2020") == std::string::npos);
}

TEST_CASE("pipeline output set is the union of the subcommand outputs, byte for byte") {
    const auto dir = tmp_dir();
    const std::string solo = dir + "/solo";
    const std::string pipe = dir + "/pipe";
    fs::remove_all(solo);
    fs::remove_all(pipe);
    const std::string sample = MKT_SAMPLE_PANEL;
    const std::vector<std::string> subcommands = {
        "describe " + sample, "correlate " + sample, "cluster " + sample,
        "trend " + sample,    "markov " + sample,    "radar",
        "simulate",
    };
    for (std::size_t i = 0; i < subcommands.size(); ++i) {
        REQUIRE(run_cli(subcommands[i] + " --out " + solo,
                        dir + "/solo_" + std::to_string(i))
                    .exit_code == 0);
    }
    REQUIRE(run_cli("pipeline " + sample + " --out " + pipe, dir + "/pipe_run")
                .exit_code == 0);

    std::size_t pipeline_files = 0;
    for (const auto& entry : fs::directory_iterator(pipe)) {
        const auto name = entry.path().filename().string();
        CAPTURE(name);
        CHECK(read_file(solo + "/" + name) == read_file(entry.path().string()));
        ++pipeline_files;
    }
    CHECK(pipeline_files == 11);
}

TEST_CASE("augmented correlation carries replica labels") {
    const auto result = run_cli(std::string("correlate ") + MKT_SAMPLE_PANEL +
                                    " --augment --replicas 2 --seed 7",
                                tmp_dir() + "/augment");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("Liebherr#1") != std::string::npos);
    CHECK(result.output.find("Kato#2") != std::string::npos);
}

TEST_CASE("cluster with k beyond the company count exits 1") {
    const auto result = run_cli(std::string("cluster ") + MKT_SAMPLE_PANEL + " --k 8",
                                tmp_dir() + "/bigk");
    CHECK(result.exit_code == 1);
}

TEST_CASE("augmented clustering groups rows through the heuristic path") {
    // 7 companies x (1 + 10 replicas) = 77 rows, well past the exhaustive
    // limit.
    const auto result = run_cli(std::string("cluster ") + MKT_SAMPLE_PANEL +
                                    " --augment --k 3 --seed 5",
                                tmp_dir() + "/augcluster");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("\"k\": 3") != std::string::npos);
    CHECK(result.output.find("#10") != std::string::npos);
}

TEST_CASE("simulate --dump-paths writes the per-path csv") {
    const auto dir = tmp_dir();
    const std::string out = dir + "/sim_out";
    fs::remove_all(out);
    const auto result = run_cli("simulate --paths 4 --steps 6 --dump-paths --out " + out,
                                dir + "/dump");
    CHECK(result.exit_code == 0);
    const auto csv = read_file(out + "/paths.csv");
    CHECK(csv.rfind("path,time,market_share,pricing,technology\n", 0) == 0);
    CHECK(testutil::count_occurrences(csv, "\n") == 1 + 4 * 7);
}

TEST_SUITE_END();
