#include "msitree/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "msitree/rng.hpp"
#include "msitree/text_format.hpp"

namespace msitree {

namespace {

// minSamplesLeaf settings tried when tuning the greedy baseline.
constexpr std::size_t kLeafGrid[] = {1, 5, 10, 20, 26, 30};

void parallelFor(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex errorMutex;
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(errorMutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

TrialRecord measure(std::string algorithm, double parameter, std::size_t trial, const Tree& tree,
                    const Dataset& testSet) {
    TrialRecord record;
    record.algorithm = std::move(algorithm);
    record.parameter = parameter;
    record.trial = trial;
    record.accuracy = accuracy(tree, testSet);
    record.nodes = nodeCount(tree);
    record.depth = maxDepth(tree);
    return record;
}

std::vector<TrialRecord> matching(std::span<const TrialRecord> rows, const std::string& algorithm,
                                  std::optional<double> parameter) {
    std::vector<TrialRecord> picked;
    for (const auto& row : rows)
        if (row.algorithm == algorithm && (!parameter || row.parameter == *parameter))
            picked.push_back(row);
    return picked;
}

void appendManifest(ExperimentReport& report, const MsiConfig& msi) {
    report.manifest.push_back("compressor=" + std::string(compressorName(msi.compressor)));
    report.manifest.push_back("combiner=" + std::string(combinerName(msi.combiner)));
}

void appendManifest(ExperimentReport& report, const GreedyConfig& greedy) {
    report.manifest.push_back("min_samples_split=" + std::to_string(greedy.minSamplesSplit));
    report.manifest.push_back("min_samples_leaf=" + std::to_string(greedy.minSamplesLeaf));
    if (greedy.maxDepth) report.manifest.push_back("max_depth=" + std::to_string(*greedy.maxDepth));
}

void appendManifest(ExperimentReport& report, const BlobSweepConfig& config) {
    report.manifest.push_back("std_start=" + formatDouble(config.stdStart));
    report.manifest.push_back("std_end=" + formatDouble(config.stdEnd));
    report.manifest.push_back("std_step=" + formatDouble(config.stdStep));
    report.manifest.push_back("trials_per_std=" + std::to_string(config.trialsPerStd));
    report.manifest.push_back("points_per_blob=" + std::to_string(config.pointsPerBlob));
    report.manifest.push_back("base_seed=" + std::to_string(config.baseSeed));
}

void validate(const BlobSweepConfig& config) {
    if (!(config.stdStart < config.stdEnd))
        throw std::invalid_argument("blob sweep: stdStart must be below stdEnd");
    if (!(config.stdStep > 0.0)) throw std::invalid_argument("blob sweep: stdStep must be positive");
    if (config.trialsPerStd < 1)
        throw std::invalid_argument("blob sweep: need at least one trial per std");
    if (config.pointsPerBlob < 1)
        throw std::invalid_argument("blob sweep: need at least one point per blob");
}

/// Shared trial scaffold for the sweep and the two ablations: for every
/// (std value, trial) pair, fresh train and test sets from seeds derived
/// off the base seed, then one record per variant from `runVariants`.
template <typename RunVariants>
std::vector<TrialRecord> sweepTrials(const BlobSweepConfig& config, unsigned threads,
                                     std::size_t variantCount, RunVariants runVariants) {
    const std::vector<double> stds = sweepStdValues(config);
    const std::size_t perStd = config.trialsPerStd;
    std::vector<TrialRecord> rows(stds.size() * perStd * variantCount);
    parallelFor(stds.size() * perStd, threads, [&](std::size_t task) {
        const std::size_t stdIndex = task / perStd;
        const std::size_t trial = task % perStd;
        const Dataset train = makeBlobs(stds[stdIndex], config.pointsPerBlob,
                                        deriveSeed(config.baseSeed, stdIndex, trial, 0));
        const Dataset test = makeBlobs(stds[stdIndex], config.pointsPerBlob,
                                       deriveSeed(config.baseSeed, stdIndex, trial, 1));
        runVariants(train, test, stds[stdIndex], trial,
                    std::span<TrialRecord>(rows.data() + task * variantCount, variantCount));
    });
    return rows;
}

void aggregateSweep(ExperimentReport& report, const std::vector<double>& stds,
                    std::span<const std::string> algorithms) {
    for (const auto& algorithm : algorithms)
        for (double std : stds)
            report.aggregates.push_back(
                aggregateTrials(algorithm, std, matching(report.trials, algorithm, std)));
    for (const auto& algorithm : algorithms)
        report.aggregates.push_back(
            aggregateTrials(algorithm, std::nullopt, matching(report.trials, algorithm, {})));
}

/// Fills meanAccuracyCentered on the overall rows (those without a
/// parameter) by subtracting the grand mean across variants.
void centerOverallRows(ExperimentReport& report) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : report.aggregates)
        if (!row.parameter) {
            sum += row.meanAccuracy;
            ++count;
        }
    if (count == 0) return;
    const double grandMean = sum / static_cast<double>(count);
    for (auto& row : report.aggregates)
        if (!row.parameter) row.meanAccuracyCentered = row.meanAccuracy - grandMean;
}

} // namespace

std::vector<double> sweepStdValues(const BlobSweepConfig& config) {
    validate(config);
    const auto steps = static_cast<std::size_t>(
        std::floor((config.stdEnd - config.stdStart) / config.stdStep + 1e-9));
    std::vector<double> values;
    values.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        values.push_back(config.stdStart + static_cast<double>(i) * config.stdStep);
    return values;
}

AggregateRecord aggregateTrials(std::string algorithm, std::optional<double> parameter,
                                std::span<const TrialRecord> rows) {
    AggregateRecord aggregate;
    aggregate.algorithm = std::move(algorithm);
    aggregate.parameter = parameter;
    aggregate.trials = rows.size();
    if (rows.empty()) return aggregate;
    const auto n = static_cast<double>(rows.size());
    double accuracySum = 0.0, nodeSum = 0.0, depthSum = 0.0;
    for (const auto& row : rows) {
        accuracySum += row.accuracy;
        nodeSum += static_cast<double>(row.nodes);
        depthSum += static_cast<double>(row.depth);
    }
    aggregate.meanAccuracy = accuracySum / n;
    aggregate.meanNodes = nodeSum / n;
    aggregate.meanDepth = depthSum / n;
    double variance = 0.0;
    for (const auto& row : rows) {
        const double d = static_cast<double>(row.nodes) - aggregate.meanNodes;
        variance += d * d;
    }
    aggregate.stdNodes = std::sqrt(variance / n);
    return aggregate;
}

ExperimentReport runErrorPointStudy(std::span<const std::uint64_t> seeds, const MsiConfig& msi,
                                    const GreedyConfig& greedy) {
    if (seeds.empty()) throw std::invalid_argument("error-point study: need at least one seed");
    ExperimentReport report;
    report.study = "error-point";
    report.manifest.push_back("study=error-point");
    report.manifest.push_back("seeds=" + std::to_string(seeds.size()));
    appendManifest(report, msi);
    appendManifest(report, greedy);

    for (std::size_t t = 0; t < seeds.size(); ++t) {
        const Dataset data = makeErrorPointDataset(seeds[t]);
        const auto parameter = static_cast<double>(seeds[t]);
        MsiResult grown = buildTree(data, msi);
        report.trials.push_back(measure("msi", parameter, t, grown.tree, data));
        Tree baseline = buildGreedyTree(data, greedy);
        report.trials.push_back(measure("greedy", parameter, t, baseline, data));
    }
    report.aggregates.push_back(
        aggregateTrials("msi", std::nullopt, matching(report.trials, "msi", {})));
    report.aggregates.push_back(
        aggregateTrials("greedy", std::nullopt, matching(report.trials, "greedy", {})));
    return report;
}

ExperimentReport runBlobSweep(const BlobSweepConfig& config, const MsiConfig& msi,
                              const GreedyConfig& greedy, unsigned threads) {
    ExperimentReport report;
    report.study = "blobs";
    report.manifest.push_back("study=blobs");
    appendManifest(report, config);
    appendManifest(report, msi);
    appendManifest(report, greedy);

    std::vector<std::string> algorithms{"msi"};
    for (std::size_t leaf : kLeafGrid) algorithms.push_back("greedy_leaf" + std::to_string(leaf));

    report.trials = sweepTrials(
        config, threads, algorithms.size(),
        [&](const Dataset& train, const Dataset& test, double stdValue, std::size_t trial,
            std::span<TrialRecord> out) {
            MsiResult grown = buildTree(train, msi);
            out[0] = measure("msi", stdValue, trial, grown.tree, test);
            for (std::size_t g = 0; g < std::size(kLeafGrid); ++g) {
                GreedyConfig tuned = greedy;
                tuned.minSamplesLeaf = kLeafGrid[g];
                Tree baseline = buildGreedyTree(train, tuned);
                out[g + 1] = measure(algorithms[g + 1], stdValue, trial, baseline, test);
            }
        });

    aggregateSweep(report, sweepStdValues(config), algorithms);

    // The paper-style tuning: one leaf setting for the whole sweep, chosen
    // by overall mean test accuracy.
    const AggregateRecord* winner = nullptr;
    for (const auto& row : report.aggregates) {
        if (row.parameter || row.algorithm == "msi") continue;
        if (!winner || row.meanAccuracy > winner->meanAccuracy) winner = &row;
    }
    report.tunedGreedyAlgorithm = winner ? winner->algorithm : "";
    report.manifest.push_back("tuned_greedy=" + report.tunedGreedyAlgorithm);
    return report;
}

ExperimentReport runCombinerAblation(const BlobSweepConfig& config, const MsiConfig& base,
                                     unsigned threads) {
    static constexpr CombinerKind kCombiners[] = {CombinerKind::HARMONIC, CombinerKind::ARITHMETIC,
                                                  CombinerKind::GEOMETRIC, CombinerKind::EUCLIDEAN,
                                                  CombinerKind::SUM,      CombinerKind::PRODUCT};
    ExperimentReport report;
    report.study = "combiners";
    report.manifest.push_back("study=combiners");
    appendManifest(report, config);
    report.manifest.push_back("compressor=" + std::string(compressorName(base.compressor)));

    std::vector<std::string> algorithms;
    for (CombinerKind kind : kCombiners) algorithms.emplace_back(combinerName(kind));

    report.trials = sweepTrials(
        config, threads, algorithms.size(),
        [&](const Dataset& train, const Dataset& test, double stdValue, std::size_t trial,
            std::span<TrialRecord> out) {
            for (std::size_t v = 0; v < std::size(kCombiners); ++v) {
                MsiConfig variant = base;
                variant.combiner = kCombiners[v];
                MsiResult grown = buildTree(train, variant);
                out[v] = measure(algorithms[v], stdValue, trial, grown.tree, test);
            }
        });

    aggregateSweep(report, sweepStdValues(config), algorithms);
    centerOverallRows(report);
    return report;
}

ExperimentReport runCompressorAblation(const BlobSweepConfig& config, const MsiConfig& base,
                                       unsigned threads) {
    static constexpr CompressorKind kCompressors[] = {CompressorKind::BZ2, CompressorKind::ZLIB,
                                                      CompressorKind::LZMA};
    ExperimentReport report;
    report.study = "compressors";
    report.manifest.push_back("study=compressors");
    appendManifest(report, config);
    report.manifest.push_back("combiner=" + std::string(combinerName(base.combiner)));

    std::vector<std::string> algorithms;
    for (CompressorKind kind : kCompressors) algorithms.emplace_back(compressorName(kind));

    report.trials = sweepTrials(
        config, threads, algorithms.size(),
        [&](const Dataset& train, const Dataset& test, double stdValue, std::size_t trial,
            std::span<TrialRecord> out) {
            for (std::size_t v = 0; v < std::size(kCompressors); ++v) {
                MsiConfig variant = base;
                variant.compressor = kCompressors[v];
                MsiResult grown = buildTree(train, variant);
                out[v] = measure(algorithms[v], stdValue, trial, grown.tree, test);
            }
        });

    aggregateSweep(report, sweepStdValues(config), algorithms);
    centerOverallRows(report);
    return report;
}

ExperimentReport runCsvStudy(const std::filesystem::path& path, const std::string& labelColumn,
                             std::size_t repetitions, const SplitRatio& ratio,
                             const MsiConfig& msi, const GreedyConfig& greedy) {
    if (repetitions < 1) throw std::invalid_argument("csv study: need at least one repetition");
    const Dataset data = loadCsv(path, labelColumn, true);

    ExperimentReport report;
    report.study = "csv";
    report.manifest.push_back("study=csv");
    report.manifest.push_back("data=" + path.string());
    report.manifest.push_back("label=" + labelColumn);
    report.manifest.push_back("repetitions=" + std::to_string(repetitions));
    report.manifest.push_back("train_fraction=" + formatDouble(ratio.trainFraction));
    report.manifest.push_back("base_seed=" + std::to_string(ratio.seed));
    appendManifest(report, msi);
    appendManifest(report, greedy);

    for (std::size_t r = 0; r < repetitions; ++r) {
        SplitRatio trialRatio{ratio.trainFraction, deriveSeed(ratio.seed, r)};
        auto [train, test] = trainTestSplit(data, trialRatio);
        MsiResult grown = buildTree(train, msi);
        report.trials.push_back(measure("msi", static_cast<double>(r), r, grown.tree, test));
        Tree baseline = buildGreedyTree(train, greedy);
        report.trials.push_back(measure("greedy", static_cast<double>(r), r, baseline, test));
    }
    report.aggregates.push_back(
        aggregateTrials("msi", std::nullopt, matching(report.trials, "msi", {})));
    report.aggregates.push_back(
        aggregateTrials("greedy", std::nullopt, matching(report.trials, "greedy", {})));
    return report;
}

std::string trialsCsv(const ExperimentReport& report) {
    std::string out = "study,algorithm,parameter,trial,accuracy,nodes,depth\n";
    for (const auto& row : report.trials) {
        out += report.study;
        out += ',';
        out += row.algorithm;
        out += ',';
        appendDouble(out, row.parameter);
        out += ',';
        out += std::to_string(row.trial);
        out += ',';
        appendDouble(out, row.accuracy);
        out += ',';
        out += std::to_string(row.nodes);
        out += ',';
        out += std::to_string(row.depth);
        out += '\n';
    }
    return out;
}

std::string aggregatesCsv(const ExperimentReport& report) {
    std::string out =
        "study,algorithm,parameter,trials,mean_accuracy,mean_accuracy_centered,mean_nodes,"
        "std_nodes,mean_depth\n";
    for (const auto& row : report.aggregates) {
        out += report.study;
        out += ',';
        out += row.algorithm;
        out += ',';
        if (row.parameter) appendDouble(out, *row.parameter);
        out += ',';
        out += std::to_string(row.trials);
        out += ',';
        appendDouble(out, row.meanAccuracy);
        out += ',';
        if (row.meanAccuracyCentered) appendDouble(out, *row.meanAccuracyCentered);
        out += ',';
        appendDouble(out, row.meanNodes);
        out += ',';
        appendDouble(out, row.stdNodes);
        out += ',';
        appendDouble(out, row.meanDepth);
        out += '\n';
    }
    return out;
}

void writeReportFiles(const ExperimentReport& report, const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);
    auto write = [&](const std::string& name, const std::string& content) {
        const auto path = directory / name;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("write failure on '" + path.string() + "'");
    };
    write(report.study + "_trials.csv", trialsCsv(report));
    write(report.study + "_aggregates.csv", aggregatesCsv(report));
    std::string manifest;
    for (const auto& line : report.manifest) {
        manifest += line;
        manifest += '\n';
    }
    write(report.study + "_manifest.txt", manifest);
}

} // namespace msitree
