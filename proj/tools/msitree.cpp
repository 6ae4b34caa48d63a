// Command line front end: train models, predict and evaluate with them,
// and run the benchmark studies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msitree/dataset.hpp"
#include "msitree/experiments.hpp"
#include "msitree/greedy.hpp"
#include "msitree/model_io.hpp"
#include "msitree/msi.hpp"
#include "msitree/text_format.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --label accepts a zero-based column index or a header name.
msitree::Dataset loadLabeled(const std::string& path, const std::string& label, bool hasHeader) {
    if (auto index = msitree::parseInteger(label); index && *index >= 0)
        return msitree::loadCsv(path, static_cast<std::size_t>(*index), hasHeader);
    return msitree::loadCsv(path, label, hasHeader);
}

msitree::CompressorKind compressorOrThrow(const std::string& name) {
    auto kind = msitree::parseCompressorName(name);
    if (!kind) throw UsageError("unknown compressor '" + name + "' (bz2, zlib, lzma)");
    return *kind;
}

msitree::CombinerKind combinerOrThrow(const std::string& name) {
    auto kind = msitree::parseCombinerName(name);
    if (!kind)
        throw UsageError("unknown combiner '" + name +
                         "' (harmonic, arithmetic, geometric, euclidean, sum, product)");
    return *kind;
}

struct TrainArgs {
    std::string data, label = "label", algo = "msi", out;
    std::string compressor = "bz2", combiner = "harmonic";
    std::size_t minSamplesSplit = 5, minSamplesLeaf = 1, maxDepth = 0;
    bool noHeader = false;
};

int runTrain(const TrainArgs& args, const CLI::App& cmd) {
    const bool greedyFlags = cmd.count("--min-samples-split") || cmd.count("--min-samples-leaf") ||
                             cmd.count("--max-depth");
    const bool msiFlags = cmd.count("--compressor") || cmd.count("--combiner");
    if (args.algo == "msi" && greedyFlags)
        throw UsageError("--min-samples-split/--min-samples-leaf/--max-depth apply only to "
                         "--algo greedy; msi has no such knobs");
    if (args.algo == "greedy" && msiFlags)
        throw UsageError("--compressor/--combiner apply only to --algo msi");
    if (args.algo != "msi" && args.algo != "greedy")
        throw UsageError("unknown algorithm '" + args.algo + "' (msi, greedy)");

    msitree::Dataset data = loadLabeled(args.data, args.label, !args.noHeader);

    auto finish = [&](const msitree::Tree& tree) {
        msitree::writeModelFile(tree, args.out);
        std::cout << "algo=" << args.algo << " nodes=" << msitree::nodeCount(tree)
                  << " depth=" << msitree::maxDepth(tree)
                  << " train_accuracy=" << msitree::formatDouble(msitree::accuracy(tree, data))
                  << " model=" << args.out << '\n';
        return kExitOk;
    };

    if (args.algo == "msi") {
        msitree::MsiConfig config{compressorOrThrow(args.compressor),
                                  combinerOrThrow(args.combiner)};
        return finish(msitree::buildTree(data, config).tree);
    }
    msitree::GreedyConfig config;
    config.minSamplesSplit = args.minSamplesSplit;
    config.minSamplesLeaf = args.minSamplesLeaf;
    if (cmd.count("--max-depth")) config.maxDepth = args.maxDepth;
    return finish(msitree::buildGreedyTree(data, config));
}

struct PredictArgs {
    std::string model, data, out, label;
    bool noHeader = false;
};

int runPredict(const PredictArgs& args, const CLI::App& cmd) {
    msitree::Model model = msitree::Model::parseFile(args.model);

    std::vector<int> predictions;
    if (cmd.count("--label")) {
        msitree::Dataset data = loadLabeled(args.data, args.label, !args.noHeader);
        predictions.reserve(data.rowCount());
        for (std::size_t i = 0; i < data.rowCount(); ++i)
            predictions.push_back(model.predict(data.row(i)));
    } else {
        msitree::FeatureMatrix data = msitree::loadCsvFeatures(args.data, !args.noHeader);
        predictions.reserve(data.rowCount());
        for (std::size_t i = 0; i < data.rowCount(); ++i)
            predictions.push_back(model.predict(data.row(i)));
    }

    std::ofstream out(args.out);
    if (!out) throw std::runtime_error("cannot open '" + args.out + "' for writing");
    out << "prediction\n";
    for (int p : predictions) out << p << '\n';
    if (!out) throw std::runtime_error("write failure on '" + args.out + "'");
    return kExitOk;
}

struct EvalArgs {
    std::string model, data, label = "label";
    bool noHeader = false;
};

int runEval(const EvalArgs& args) {
    msitree::Model model = msitree::Model::parseFile(args.model);
    msitree::Dataset data = loadLabeled(args.data, args.label, !args.noHeader);

    std::vector<int> predictions(data.rowCount());
    // The table covers the file's labels plus any label only the model emits.
    int classes = data.labelCount();
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.rowCount(); ++i) {
        predictions[i] = model.predict(data.row(i));
        classes = std::max(classes, predictions[i] + 1);
        if (predictions[i] == data.label(i)) ++hits;
    }
    std::vector<std::size_t> confusion(static_cast<std::size_t>(classes) * classes, 0);
    for (std::size_t i = 0; i < data.rowCount(); ++i)
        confusion[static_cast<std::size_t>(data.label(i)) * classes + predictions[i]] += 1;

    std::cout << "accuracy="
              << msitree::formatDouble(static_cast<double>(hits) /
                                       static_cast<double>(data.rowCount()))
              << '\n';
    std::cout << "n=" << data.rowCount() << '\n';
    for (int t = 0; t < classes; ++t)
        for (int p = 0; p < classes; ++p)
            std::cout << "confusion " << t << ' ' << p << ' '
                      << confusion[static_cast<std::size_t>(t) * classes + p] << '\n';
    return kExitOk;
}

struct BenchArgs {
    std::string study, out = "bench-out";
    std::string compressor = "bz2", combiner = "harmonic";
    std::size_t minSamplesSplit = 5, minSamplesLeaf = 1;
    std::uint64_t baseSeed = 1;
    std::size_t numSeeds = 20;
    double stdStart = 2.5, stdEnd = 4.5, stdStep = 0.25;
    std::size_t trials = 20, pointsPerBlob = 50;
    std::string data, label = "label";
    std::size_t repetitions = 30;
    double trainFraction = 0.7;
    unsigned threads = 0;
};

int runBench(const BenchArgs& args) {
    msitree::MsiConfig msiConfig{compressorOrThrow(args.compressor),
                                 combinerOrThrow(args.combiner)};
    msitree::GreedyConfig greedyConfig;
    greedyConfig.minSamplesSplit = args.minSamplesSplit;
    greedyConfig.minSamplesLeaf = args.minSamplesLeaf;

    msitree::BlobSweepConfig sweep;
    sweep.stdStart = args.stdStart;
    sweep.stdEnd = args.stdEnd;
    sweep.stdStep = args.stdStep;
    sweep.trialsPerStd = args.trials;
    sweep.pointsPerBlob = args.pointsPerBlob;
    sweep.baseSeed = args.baseSeed;

    msitree::ExperimentReport report;
    if (args.study == "error-point") {
        std::vector<std::uint64_t> seeds(args.numSeeds);
        for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = args.baseSeed + i;
        report = msitree::runErrorPointStudy(seeds, msiConfig, greedyConfig);
    } else if (args.study == "blobs") {
        report = msitree::runBlobSweep(sweep, msiConfig, greedyConfig, args.threads);
    } else if (args.study == "combiners") {
        report = msitree::runCombinerAblation(sweep, msiConfig, args.threads);
    } else if (args.study == "compressors") {
        report = msitree::runCompressorAblation(sweep, msiConfig, args.threads);
    } else if (args.study == "csv") {
        if (args.data.empty()) throw UsageError("--study csv requires --data");
        report = msitree::runCsvStudy(args.data, args.label, args.repetitions,
                                      {args.trainFraction, args.baseSeed}, msiConfig,
                                      greedyConfig);
    } else {
        throw UsageError("unknown study '" + args.study +
                         "' (error-point, blobs, combiners, compressors, csv)");
    }

    msitree::writeReportFiles(report, args.out);
    std::cout << "study=" << report.study << " trials=" << report.trials.size()
              << " out=" << args.out << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decision tree induction with compression-guided early stopping"};
    app.require_subcommand(1);

    TrainArgs train;
    CLI::App* trainCmd = app.add_subcommand("train", "Train a tree and write its model file");
    trainCmd->add_option("--data", train.data, "Training CSV")->required();
    trainCmd->add_option("--label", train.label, "Label column (name or zero-based index)");
    trainCmd->add_flag("--no-header", train.noHeader, "CSV has no header row");
    trainCmd->add_option("--algo", train.algo, "Algorithm: msi or greedy");
    trainCmd->add_option("--compressor", train.compressor, "msi: bz2, zlib or lzma");
    trainCmd->add_option("--combiner", train.combiner, "msi: cost combiner name");
    trainCmd->add_option("--min-samples-split", train.minSamplesSplit,
                         "greedy: minimum rows to split a node");
    trainCmd->add_option("--min-samples-leaf", train.minSamplesLeaf,
                         "greedy: minimum rows per child");
    trainCmd->add_option("--max-depth", train.maxDepth, "greedy: depth limit");
    trainCmd->add_option("--out", train.out, "Model file to write")->required();

    PredictArgs predict;
    CLI::App* predictCmd = app.add_subcommand("predict", "Predict labels for a CSV of features");
    predictCmd->add_option("--model", predict.model, "Model file")->required();
    predictCmd->add_option("--data", predict.data, "Feature CSV")->required();
    predictCmd->add_option("--label", predict.label,
                           "Label column to ignore when the CSV is labeled");
    predictCmd->add_flag("--no-header", predict.noHeader, "CSV has no header row");
    predictCmd->add_option("--out", predict.out, "Prediction CSV to write")->required();

    EvalArgs eval;
    CLI::App* evalCmd = app.add_subcommand("eval", "Report accuracy and confusion counts");
    evalCmd->add_option("--model", eval.model, "Model file")->required();
    evalCmd->add_option("--data", eval.data, "Labeled CSV")->required();
    evalCmd->add_option("--label", eval.label, "Label column (name or zero-based index)");
    evalCmd->add_flag("--no-header", eval.noHeader, "CSV has no header row");

    BenchArgs bench;
    CLI::App* benchCmd = app.add_subcommand("bench", "Run a benchmark study");
    benchCmd->add_option("--study", bench.study,
                         "error-point, blobs, combiners, compressors or csv")
        ->required();
    benchCmd->add_option("--out", bench.out, "Output directory for report files");
    benchCmd->add_option("--base-seed", bench.baseSeed, "Base seed for derived trial seeds");
    benchCmd->add_option("--num-seeds", bench.numSeeds, "error-point: number of datasets");
    benchCmd->add_option("--std-start", bench.stdStart, "blob sweep: first std value");
    benchCmd->add_option("--std-end", bench.stdEnd, "blob sweep: last std value");
    benchCmd->add_option("--std-step", bench.stdStep, "blob sweep: std increment");
    benchCmd->add_option("--trials", bench.trials, "blob sweep: trials per std value");
    benchCmd->add_option("--points-per-blob", bench.pointsPerBlob, "blob sweep: points per cluster");
    benchCmd->add_option("--data", bench.data, "csv study: dataset path");
    benchCmd->add_option("--label", bench.label, "csv study: label column");
    benchCmd->add_option("--repetitions", bench.repetitions, "csv study: train/test repetitions");
    benchCmd->add_option("--train-fraction", bench.trainFraction, "csv study: training fraction");
    benchCmd->add_option("--compressor", bench.compressor, "msi compressor");
    benchCmd->add_option("--combiner", bench.combiner, "msi combiner");
    benchCmd->add_option("--min-samples-split", bench.minSamplesSplit, "greedy baseline setting");
    benchCmd->add_option("--min-samples-leaf", bench.minSamplesLeaf, "greedy baseline setting");
    benchCmd->add_option("--threads", bench.threads, "Worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (trainCmd->parsed()) return runTrain(train, *trainCmd);
        if (predictCmd->parsed()) return runPredict(predict, *predictCmd);
        if (evalCmd->parsed()) return runEval(eval);
        if (benchCmd->parsed()) return runBench(bench);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
