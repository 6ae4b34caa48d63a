#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msitree/dataset.hpp"
#include "msitree/greedy.hpp"
#include "msitree/msi.hpp"

namespace msitree {

/// Sweep over the overlap of two Gaussian blobs. Defaults are the desk
/// scale used by the acceptance studies (9 standard deviations, 20 trials
/// each); raise trialsPerStd and shrink stdStep for full-scale runs.
struct BlobSweepConfig {
    double stdStart = 2.5;
    double stdEnd = 4.5;
    double stdStep = 0.25;
    std::size_t trialsPerStd = 20;
    std::size_t pointsPerBlob = 50;
    std::uint64_t baseSeed = 1;
};

/// One trained-and-measured tree. `parameter` is the study's swept value
/// (blob standard deviation, dataset seed, or repetition index).
struct TrialRecord {
    std::string algorithm;
    double parameter = 0.0;
    std::size_t trial = 0;
    double accuracy = 0.0;
    std::size_t nodes = 0;
    std::size_t depth = 0;
};

/// Statistics over a group of trials. `parameter` is empty for rows that
/// aggregate a whole study. Node-count spread is the population standard
/// deviation. `meanAccuracyCentered` is filled only on the overall rows of
/// ablation studies (that row's mean minus the grand mean across variants).
struct AggregateRecord {
    std::string algorithm;
    std::optional<double> parameter;
    std::size_t trials = 0;
    double meanAccuracy = 0.0;
    std::optional<double> meanAccuracyCentered;
    double meanNodes = 0.0;
    double stdNodes = 0.0;
    double meanDepth = 0.0;
};

struct ExperimentReport {
    std::string study;
    std::vector<std::string> manifest; // key=value lines describing the run
    std::vector<TrialRecord> trials;
    std::vector<AggregateRecord> aggregates;
    /// Blob sweep only: the greedy variant whose overall mean accuracy won
    /// the minSamplesLeaf grid.
    std::string tunedGreedyAlgorithm;
};

/// The builder and the greedy baseline trained on one mislabeled-point
/// dataset per seed; records training accuracy, node count, and depth.
ExperimentReport runErrorPointStudy(std::span<const std::uint64_t> seeds, const MsiConfig& msi,
                                    const GreedyConfig& greedy);

/// Fresh train and test blobs per trial; the builder against a grid of
/// greedy minSamplesLeaf settings {1,5,10,20,26,30}, with the winning
/// setting recorded as the tuned baseline. Trials run in parallel
/// (threads = 0 picks the hardware count); results are identical for any
/// thread count.
ExperimentReport runBlobSweep(const BlobSweepConfig& config, const MsiConfig& msi,
                              const GreedyConfig& greedy, unsigned threads = 0);

/// The builder under all six combiners, on identical per-trial datasets.
ExperimentReport runCombinerAblation(const BlobSweepConfig& config, const MsiConfig& base,
                                     unsigned threads = 0);

/// The builder under all three compressors, on identical per-trial datasets.
ExperimentReport runCompressorAblation(const BlobSweepConfig& config, const MsiConfig& base,
                                       unsigned threads = 0);

/// Repeated random train/test evaluations of both algorithms on a CSV
/// file. Repetition r shuffles with a seed derived from ratio.seed and r.
ExperimentReport runCsvStudy(const std::filesystem::path& path, const std::string& labelColumn,
                             std::size_t repetitions, const SplitRatio& ratio,
                             const MsiConfig& msi, const GreedyConfig& greedy);

/// CSV text of the per-trial rows / the aggregate rows.
std::string trialsCsv(const ExperimentReport& report);
std::string aggregatesCsv(const ExperimentReport& report);

/// Writes <study>_trials.csv, <study>_aggregates.csv and
/// <study>_manifest.txt into the directory, creating it if needed.
void writeReportFiles(const ExperimentReport& report, const std::filesystem::path& directory);

/// The std values a sweep config expands to: stdStart, stdStart + stdStep,
/// ... up to stdEnd inclusive (within rounding).
std::vector<double> sweepStdValues(const BlobSweepConfig& config);

/// Recomputes an aggregate row from trial rows; aggregates in reports are
/// produced by exactly this function over the matching raw rows.
AggregateRecord aggregateTrials(std::string algorithm, std::optional<double> parameter,
                                std::span<const TrialRecord> rows);

} // namespace msitree
