#include <benchmark/benchmark.h>

#include "msitree/compression.hpp"
#include "msitree/cost.hpp"
#include "msitree/dataset.hpp"
#include "msitree/greedy.hpp"
#include "msitree/msi.hpp"
#include "msitree/split.hpp"

using namespace msitree;

namespace {

void CompressedLengthBz2(benchmark::State& state) {
    Dataset d = makeBlobs(3.0, static_cast<std::size_t>(state.range(0)), 1);
    const std::string text = datasetText(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(compressedLength(CompressorKind::BZ2, text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(CompressedLengthBz2)->Arg(50)->Arg(500)->Arg(5000);

void CompressedLengthZlib(benchmark::State& state) {
    Dataset d = makeBlobs(3.0, static_cast<std::size_t>(state.range(0)), 1);
    const std::string text = datasetText(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(compressedLength(CompressorKind::ZLIB, text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(CompressedLengthZlib)->Arg(50)->Arg(500)->Arg(5000);

void CompressedLengthLzma(benchmark::State& state) {
    Dataset d = makeBlobs(3.0, static_cast<std::size_t>(state.range(0)), 1);
    const std::string text = datasetText(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(compressedLength(CompressorKind::LZMA, text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(CompressedLengthLzma)->Arg(50)->Arg(500);

void BestSplitSearch(benchmark::State& state) {
    Dataset d = makeBlobs(3.5, static_cast<std::size_t>(state.range(0)), 3);
    auto whole = DataSubset::whole(d);
    for (auto _ : state) benchmark::DoNotOptimize(bestSplit(whole));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BestSplitSearch)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void TreeCostEvaluation(benchmark::State& state) {
    Dataset d = makeBlobs(3.0, 50, 5);
    MsiResult grown = buildTree(d);
    CostEvaluator evaluator(CompressorKind::BZ2, CombinerKind::HARMONIC, d);
    for (auto _ : state) benchmark::DoNotOptimize(evaluator.cost(grown.tree));
}
BENCHMARK(TreeCostEvaluation);

void MsiBuildBlobs(benchmark::State& state) {
    Dataset d = makeBlobs(3.0, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        MsiResult result = buildTree(d);
        benchmark::DoNotOptimize(result.tree);
    }
}
BENCHMARK(MsiBuildBlobs)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void MsiBuildErrorPoint(benchmark::State& state) {
    Dataset d = makeErrorPointDataset(0);
    for (auto _ : state) {
        MsiResult result = buildTree(d);
        benchmark::DoNotOptimize(result.tree);
    }
}
BENCHMARK(MsiBuildErrorPoint)->Unit(benchmark::kMillisecond);

void GreedyBuildBlobs(benchmark::State& state) {
    Dataset d = makeBlobs(3.0, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        Tree tree = buildGreedyTree(d, {});
        benchmark::DoNotOptimize(tree);
    }
}
BENCHMARK(GreedyBuildBlobs)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
