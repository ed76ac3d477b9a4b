#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "slspec/experiments.hpp"

using namespace slspec;

namespace {

std::string write_temp_config(const std::string& body) {
    const std::string path = "/tmp/slspec_test_config.txt";
    std::ofstream out(path);
    out << body;
    return path;
}

int csv_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    int rows = -1;  // skip header
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    return rows;
}

}  // namespace

TEST_CASE("config parsing and overrides") {
    const std::string path = write_temp_config(
        "# experiment\n"
        "scheme = iga\n"
        "eta = 3\n"
        "n = 50,100\n"
        "alpha = 1.5   # trailing comment\n"
        "grid = liouville\n"
        "reference = exact\n");
    ExperimentConfig config = ExperimentConfig::from_file(path);
    CHECK(config.scheme == Scheme::Iga);
    CHECK(config.eta == 3);
    REQUIRE(config.n_values.size() == 2);
    CHECK(config.n_values[1] == 100);
    CHECK(config.alpha == doctest::Approx(1.5));
    CHECK(config.grid == GridKind::Liouville);
    config.validate();

    config.set("grid", "uniform");
    CHECK(config.grid == GridKind::Uniform);
    CHECK(config.effective_r(120) == 1000);
    config.set("r", "4000");
    CHECK(config.effective_r(120) == 4000);
}

TEST_CASE("config rejects malformed input") {
    ExperimentConfig config;
    CHECK_THROWS_AS(config.set("volume", "11"), ConfigError);
    CHECK_THROWS_AS(config.set("eta", "two"), ConfigError);
    CHECK_THROWS_AS(config.set("scheme", "spectral"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/file"), ConfigError);

    const std::string bad_line = write_temp_config("scheme fd\n");
    CHECK_THROWS_AS(ExperimentConfig::from_file(bad_line), ConfigError);

    ExperimentConfig undersampled;
    undersampled.n_values = {2000};
    undersampled.r = 500;
    CHECK_THROWS_AS(undersampled.validate(), ConfigError);

    ExperimentConfig iga_fine;
    iga_fine.scheme = Scheme::Iga;
    iga_fine.reference = ReferenceKind::FineMesh;
    iga_fine.fine_mesh_n = 5000;
    CHECK_THROWS_AS(iga_fine.validate(), ConfigError);

    ExperimentConfig negative_alpha;
    negative_alpha.alpha = -1.0;
    CHECK_THROWS_AS(negative_alpha.validate(), ConfigError);
}

TEST_CASE("comparison driver") {
    ExperimentConfig config;
    config.n_values = {50};
    const ComparisonResult result = run_comparison(config, 50);
    CHECK(result.spectrum.dimension() == 50);
    CHECK(result.errors.max_error > 0.0);
    CHECK(result.errors.max_error < 1.0);
    CHECK(result.outlier_count == 0);
    CHECK(result.provenance == "computed-exact-ref");
    CHECK(result.errors.numerical.size() == 50);
    CHECK(result.errors.analytic.size() == 50);

    // fine-mesh reference stays close to the exact one at this scale
    ExperimentConfig fine = config;
    fine.reference = ReferenceKind::FineMesh;
    fine.fine_mesh_n = 800;
    const ComparisonResult fm = run_comparison(fine, 50);
    CHECK(fm.provenance == "computed-fine-mesh-ref");
    CHECK(fm.errors.max_error ==
          doctest::Approx(result.errors.max_error).epsilon(0.05));
}

TEST_CASE("figure 2 trivial config gives one row per mode") {
    ExperimentConfig config;
    config.n_values = {3};
    config.r = 1000;
    std::ostringstream csv;
    std::string summary;
    run_figure_data(2, config, csv, summary);
    CHECK(csv_rows(csv.str()) == 3);
    std::istringstream in(csv.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,k_over_n,weighted_lambda,rearr_sample,weighted_exact");
    CHECK(summary.find("\"figure\": 2") != std::string::npos);
}

TEST_CASE("figure 2 overlays the spectrum and the rearrangement samples") {
    ExperimentConfig config;
    config.n_values = {100};
    config.r = 1000;
    std::ostringstream csv;
    std::string summary;
    run_figure_data(2, config, csv, summary);
    const auto j = nlohmann::json::parse(summary);
    // overlap is a statement about the plot scale: the absolute weighted
    // distance concentrates at the top edge (slow edge convergence of the
    // largest eigenvalue) and the per-mode relative distance at the bottom
    // (sampling resolution of the rearrangement near x = 0)
    CHECK(j["sup_distance_normalized"].get<double>() < 0.05);
    CHECK(j["sup_distance_weighted"].get<double>() < 0.2);
    CHECK(j["sup_distance_relative"].get<double>() < 0.1);
}

TEST_CASE("table cells carry provenance and fallback columns") {
    ExperimentConfig config;
    std::ostringstream csv;
    std::string summary;
    run_table(1, config, csv, summary);
    std::istringstream in(csv.str());
    std::string header;
    std::getline(in, header);
    CHECK(header.find("provenance") != std::string::npos);
    CHECK(header.find("phi_fallback") != std::string::npos);
    std::string first_row;
    std::getline(in, first_row);
    CHECK(first_row.find("computed-exact-ref") != std::string::npos);
}

TEST_CASE("figure datasets are deterministic") {
    ExperimentConfig config;
    config.n_values = {30};
    std::ostringstream a, b;
    std::string sa, sb;
    run_figure_data(5, config, a, sa);
    run_figure_data(5, config, b, sb);
    CHECK(a.str() == b.str());
    CHECK(sa == sb);
    CHECK(csv_rows(a.str()) == 4 * 30);  // four series
}

TEST_CASE("figure 3 emits one analytic column per sampling resolution") {
    ExperimentConfig config;
    config.n_values = {20};
    std::ostringstream csv;
    std::string summary;
    run_figure_data(3, config, csv, summary);
    std::istringstream in(csv.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,k_over_n,err,aerr_r100,aerr_r500,aerr_r800");
    CHECK(csv_rows(csv.str()) == 20);
}

TEST_CASE("unknown table and figure ids are config errors") {
    ExperimentConfig config;
    std::ostringstream csv;
    std::string summary;
    CHECK_THROWS_AS(run_table(5, config, csv, summary), ConfigError);
    CHECK_THROWS_AS(run_figure_data(7, config, csv, summary), ConfigError);
}

TEST_CASE("worker count honours the environment") {
    setenv("SLSPEC_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    unsetenv("SLSPEC_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("selftest passes") {
    std::ostringstream log;
    CHECK(selftest(log) == 0);
    CHECK(log.str().find("FAIL") == std::string::npos);
}
