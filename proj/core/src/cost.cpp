#include "msitree/cost.hpp"

#include <cmath>

namespace msitree {

std::string_view combinerName(CombinerKind kind) {
    switch (kind) {
    case CombinerKind::HARMONIC: return "harmonic";
    case CombinerKind::ARITHMETIC: return "arithmetic";
    case CombinerKind::GEOMETRIC: return "geometric";
    case CombinerKind::EUCLIDEAN: return "euclidean";
    case CombinerKind::SUM: return "sum";
    case CombinerKind::PRODUCT: return "product";
    }
    return "?";
}

std::optional<CombinerKind> parseCombinerName(std::string_view name) {
    if (name == "harmonic") return CombinerKind::HARMONIC;
    if (name == "arithmetic") return CombinerKind::ARITHMETIC;
    if (name == "geometric") return CombinerKind::GEOMETRIC;
    if (name == "euclidean") return CombinerKind::EUCLIDEAN;
    if (name == "sum") return CombinerKind::SUM;
    if (name == "product") return CombinerKind::PRODUCT;
    return std::nullopt;
}

double combine(CombinerKind kind, double i, double s) {
    switch (kind) {
    case CombinerKind::HARMONIC: return i + s == 0.0 ? 0.0 : 2.0 * i * s / (i + s);
    case CombinerKind::ARITHMETIC: return (i + s) / 2.0;
    case CombinerKind::GEOMETRIC: return std::sqrt(i * s);
    case CombinerKind::EUCLIDEAN: return std::hypot(i, s);
    case CombinerKind::SUM: return i + s;
    case CombinerKind::PRODUCT: return i * s;
    }
    return 0.0;
}

namespace {

double inaccuracyWithCachedDenominator(CompressorKind kind, const Tree& tree,
                                       const Dataset& dataset, std::size_t datasetCompressed) {
    DataSubset errors = misclassified(tree, dataset);
    if (errors.empty()) return 0.0;
    return static_cast<double>(compressedLength(kind, subsetText(errors))) /
           static_cast<double>(datasetCompressed);
}

} // namespace

double inaccuracy(CompressorKind kind, const Tree& tree, const Dataset& dataset) {
    return inaccuracyWithCachedDenominator(kind, tree, dataset,
                                           compressedLength(kind, datasetText(dataset)));
}

double surfeit(CompressorKind kind, const Tree& tree) {
    const std::string model = serialize(tree);
    const auto raw = static_cast<double>(model.size());
    const auto compressed = static_cast<double>(compressedLength(kind, model));
    if (compressed <= raw) return 1.0 - compressed / raw;
    return 1.0 - raw / compressed;
}

CostBreakdown treeCost(CompressorKind compressor, CombinerKind combiner, const Tree& tree,
                       const Dataset& dataset) {
    return CostEvaluator(compressor, combiner, dataset).cost(tree);
}

CostEvaluator::CostEvaluator(CompressorKind compressor, CombinerKind combiner,
                             const Dataset& dataset)
    : compressor_(compressor), combiner_(combiner), dataset_(&dataset),
      datasetCompressedLength_(compressedLength(compressor, datasetText(dataset))) {}

CostBreakdown CostEvaluator::cost(const Tree& tree) const {
    CostBreakdown result;
    result.combiner = combiner_;
    result.inaccuracy =
        inaccuracyWithCachedDenominator(compressor_, tree, *dataset_, datasetCompressedLength_);
    result.surfeit = surfeit(compressor_, tree);
    result.combined = combine(combiner_, result.inaccuracy, result.surfeit);
    return result;
}

} // namespace msitree
