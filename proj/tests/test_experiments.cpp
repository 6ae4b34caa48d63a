#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <doctest.h>

#include "msitree/experiments.hpp"
#include "msitree/rng.hpp"
#include "support.hpp"

using namespace msitree;

namespace {

BlobSweepConfig tinySweep() {
    BlobSweepConfig config;
    config.stdStart = 3.0;
    config.stdEnd = 3.5;
    config.stdStep = 0.5;
    config.trialsPerStd = 2;
    config.pointsPerBlob = 20;
    config.baseSeed = 5;
    return config;
}

double recomputedMean(const ExperimentReport& report, const std::string& algorithm) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : report.trials) {
        if (row.algorithm != algorithm) continue;
        sum += row.accuracy;
        ++count;
    }
    return sum / static_cast<double>(count);
}

const AggregateRecord& overallRow(const ExperimentReport& report, const std::string& algorithm) {
    for (const auto& row : report.aggregates)
        if (row.algorithm == algorithm && !row.parameter) return row;
    throw std::runtime_error("no overall row for " + algorithm);
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("std values expand inclusively") {
    BlobSweepConfig config;
    config.stdStart = 2.5;
    config.stdEnd = 4.5;
    config.stdStep = 0.25;
    auto values = sweepStdValues(config);
    REQUIRE(values.size() == 9);
    CHECK(values.front() == 2.5);
    CHECK(values.back() == doctest::Approx(4.5).epsilon(1e-12));

    config.stdStep = 1.0;
    CHECK(sweepStdValues(config).size() == 3);

    config.stdStep = -1.0;
    CHECK_THROWS_AS(sweepStdValues(config), std::invalid_argument);
}

TEST_CASE("error-point study shape and aggregates") {
    const std::uint64_t seeds[] = {0, 1, 2};
    ExperimentReport report = runErrorPointStudy(seeds, {}, {});
    CHECK(report.trials.size() == 6); // seeds x two algorithms
    CHECK(report.aggregates.size() == 2);
    for (const auto& row : report.aggregates) CHECK(row.trials == 3);
    CHECK(std::abs(overallRow(report, "msi").meanAccuracy - recomputedMean(report, "msi")) <
          1e-12);
    CHECK(overallRow(report, "greedy").meanNodes > overallRow(report, "msi").meanNodes);
}

TEST_CASE("blob sweep runs all variants on paired data and tunes the baseline") {
    ExperimentReport report = runBlobSweep(tinySweep(), {}, {}, 1);
    const std::size_t configurations = 2 * 2; // stds x trials
    CHECK(report.trials.size() == configurations * 7); // msi + six leaf settings
    CHECK(!report.tunedGreedyAlgorithm.empty());
    CHECK(report.tunedGreedyAlgorithm.rfind("greedy_leaf", 0) == 0);

    // Aggregates: per-std rows plus one overall row per algorithm.
    CHECK(report.aggregates.size() == 7 * (2 + 1));

    // Every algorithm saw the same trial grid.
    std::set<std::pair<double, std::size_t>> msiTrials, greedyTrials;
    for (const auto& row : report.trials) {
        if (row.algorithm == "msi") msiTrials.insert({row.parameter, row.trial});
        if (row.algorithm == "greedy_leaf1") greedyTrials.insert({row.parameter, row.trial});
    }
    CHECK(msiTrials == greedyTrials);

    // Aggregate rows recompute from the raw rows.
    CHECK(std::abs(overallRow(report, "msi").meanAccuracy - recomputedMean(report, "msi")) <
          1e-12);
}

TEST_CASE("reports are identical across reruns and thread counts") {
    ExperimentReport a = runBlobSweep(tinySweep(), {}, {}, 1);
    ExperimentReport b = runBlobSweep(tinySweep(), {}, {}, 2);
    ExperimentReport c = runBlobSweep(tinySweep(), {}, {}, 0);
    CHECK(trialsCsv(a) == trialsCsv(b));
    CHECK(trialsCsv(a) == trialsCsv(c));
    CHECK(aggregatesCsv(a) == aggregatesCsv(b));
}

TEST_CASE("combiner ablation is paired and mean-centered") {
    BlobSweepConfig config = tinySweep();
    config.trialsPerStd = 1;
    ExperimentReport report = runCombinerAblation(config, {}, 2);
    CHECK(report.trials.size() == 2 * 1 * 6);

    std::size_t overallRows = 0;
    double centeredSum = 0.0;
    for (const auto& row : report.aggregates) {
        if (row.parameter) continue;
        ++overallRows;
        REQUIRE(row.meanAccuracyCentered.has_value());
        centeredSum += *row.meanAccuracyCentered;
    }
    CHECK(overallRows == 6);
    CHECK(std::abs(centeredSum) < 1e-12);

    ExperimentReport again = runCombinerAblation(config, {}, 1);
    CHECK(trialsCsv(again) == trialsCsv(report));
}

TEST_CASE("compressor ablation covers the three backends") {
    BlobSweepConfig config = tinySweep();
    config.trialsPerStd = 1;
    config.pointsPerBlob = 15;
    ExperimentReport report = runCompressorAblation(config, {}, 2);
    CHECK(report.trials.size() == 2 * 1 * 3);
    std::set<std::string> names;
    for (const auto& row : report.aggregates)
        if (!row.parameter) names.insert(row.algorithm);
    CHECK(names == std::set<std::string>{"bz2", "zlib", "lzma"});
}

TEST_CASE("csv study evaluates repeated random splits") {
    Rng rng(88);
    Dataset d = testsupport::randomDataset(rng, 60, 3, 2);
    const auto path = std::filesystem::temp_directory_path() / "msitree_exp_csv.csv";
    saveCsv(d, path);

    ExperimentReport once = runCsvStudy(path, "label", 1, {0.7, 3}, {}, {});
    CHECK(once.trials.size() == 2);
    CHECK(once.aggregates.size() == 2);

    ExperimentReport more = runCsvStudy(path, "label", 4, {0.7, 3}, {}, {});
    CHECK(more.trials.size() == 8);
    ExperimentReport rerun = runCsvStudy(path, "label", 4, {0.7, 3}, {}, {});
    CHECK(trialsCsv(more) == trialsCsv(rerun));
    std::filesystem::remove(path);
}

TEST_CASE("report files land in the output directory") {
    const auto dir = std::filesystem::temp_directory_path() / "msitree_exp_out";
    std::filesystem::remove_all(dir);
    const std::uint64_t seeds[] = {0, 1};
    ExperimentReport report = runErrorPointStudy(seeds, {}, {});
    writeReportFiles(report, dir);

    for (const char* name :
         {"error-point_trials.csv", "error-point_aggregates.csv", "error-point_manifest.txt"})
        CHECK(std::filesystem::exists(dir / name));

    std::ifstream trials(dir / "error-point_trials.csv");
    std::string header;
    std::getline(trials, header);
    CHECK(header == "study,algorithm,parameter,trial,accuracy,nodes,depth");

    std::ifstream manifest(dir / "error-point_manifest.txt");
    std::string line;
    std::getline(manifest, line);
    CHECK(line == "study=error-point");
    std::filesystem::remove_all(dir);
}

TEST_CASE("aggregateTrials matches a hand computation") {
    std::vector<TrialRecord> rows(3);
    rows[0] = {"x", 1.0, 0, 0.5, 3, 1};
    rows[1] = {"x", 1.0, 1, 0.7, 5, 2};
    rows[2] = {"x", 1.0, 2, 0.9, 7, 3};
    AggregateRecord agg = aggregateTrials("x", 1.0, rows);
    CHECK(agg.trials == 3);
    CHECK(agg.meanAccuracy == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(agg.meanNodes == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(agg.stdNodes == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-12));
    CHECK(agg.meanDepth == doctest::Approx(2.0).epsilon(1e-15));
}

} // TEST_SUITE
