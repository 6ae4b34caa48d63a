#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "msitree/compression.hpp"
#include "msitree/dataset.hpp"
#include "msitree/tree.hpp"

namespace msitree {

/// How inaccuracy and surfeit are folded into one cost value.
enum class CombinerKind { HARMONIC, ARITHMETIC, GEOMETRIC, EUCLIDEAN, SUM, PRODUCT };

std::string_view combinerName(CombinerKind kind);
std::optional<CombinerKind> parseCombinerName(std::string_view name);

/// Cost of one candidate tree: how badly it fits the data (inaccuracy),
/// how much unnecessary description it carries (surfeit), and the two
/// combined.
struct CostBreakdown {
    double inaccuracy = 0.0;
    double surfeit = 0.0;
    double combined = 0.0;
    CombinerKind combiner = CombinerKind::HARMONIC;
};

/// Applies the named combiner to two nonnegative values. The harmonic mean
/// is 2is/(i+s), taken as 0 when both arguments are 0 (and therefore 0
/// whenever either argument is 0).
double combine(CombinerKind kind, double i, double s);

/// Inaccuracy of a tree on a dataset: the compressed length of the
/// misclassified rows' canonical text over the compressed length of the
/// whole dataset's text. Exactly 0 when nothing is misclassified; the
/// compressor is not consulted for an empty error set, whose container
/// overhead would otherwise penalize perfect models.
double inaccuracy(CompressorKind kind, const Tree& tree, const Dataset& dataset);

/// Surfeit of a tree: unnecessary length in its serialized form, measured
/// through compression. With raw length |M| and compressed length |C|:
/// redundancy 1 - |C|/|M| when the text compresses, and 1 - |M|/|C| when
/// it does not. The second case covers models too short to stand as a
/// complete description of the data, which are penalized by how far they
/// fall short rather than treated as ideal. Always in [0,1].
double surfeit(CompressorKind kind, const Tree& tree);

/// Full cost of a tree under one compressor and combiner.
CostBreakdown treeCost(CompressorKind compressor, CombinerKind combiner, const Tree& tree,
                       const Dataset& dataset);

/// Repeated-evaluation form of treeCost. The dataset's compressed length
/// is computed once at construction and reused; the dataset never changes
/// during tree growth, so every evaluation agrees exactly with treeCost.
class CostEvaluator {
public:
    CostEvaluator(CompressorKind compressor, CombinerKind combiner, const Dataset& dataset);

    CostBreakdown cost(const Tree& tree) const;

    CompressorKind compressor() const { return compressor_; }
    CombinerKind combiner() const { return combiner_; }
    std::size_t datasetCompressedLength() const { return datasetCompressedLength_; }

private:
    CompressorKind compressor_;
    CombinerKind combiner_;
    const Dataset* dataset_;
    std::size_t datasetCompressedLength_;
};

} // namespace msitree
