#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "msitree/cost.hpp"
#include "msitree/dataset.hpp"
#include "msitree/tree.hpp"

namespace msitree {

/// Configuration of the cost-guided builder. Neither field is a tuning
/// knob: any compressor and any combiner yield substantially the same
/// trees, and the defaults below are used throughout.
struct MsiConfig {
    CompressorKind compressor = CompressorKind::BZ2;
    CombinerKind combiner = CombinerKind::HARMONIC;
};

/// One committed growth step: which leaf was split, with what, and the
/// whole-tree cost before and after. Committed costs strictly decrease
/// along the trace.
struct GrowthStep {
    std::size_t iteration = 0;
    std::size_t leafId = 0; // node ids follow creation order, root = 0
    Split split;
    CostBreakdown before;
    CostBreakdown after;
};

using GrowthTrace = std::vector<GrowthStep>;

/// Builder events, observable for tracing and testing. During a candidate
/// evaluation the tentative children have already been detached again, so
/// the tree passed to the observer is exactly the committed tree.
struct MsiEvent {
    enum class Kind { CandidateEvaluated, CandidateDiscarded, GrowthCommitted };
    Kind kind;
    const Tree& tree;
    std::size_t leafId;
    double combinedCost; // meaningful for evaluations and commits
};

struct MsiBuildOptions {
    /// A leaf's data never changes, so its best split is computed once and
    /// reused across iterations. Disabling recomputes every iteration;
    /// the result is identical either way.
    bool memoizeSplits = true;
    std::function<void(const MsiEvent&)> observer;
};

struct MsiResult {
    Tree tree;
    GrowthTrace trace;
};

/// Grows a decision tree by whole-tree cost descent. Starting from a
/// single leaf, each iteration tentatively splits every candidate leaf
/// with its best split, and commits the one candidate that lowers the
/// combined cost the most. Leaves with no usable split are dropped from
/// the candidate set. Growth stops when no candidate strictly lowers the
/// cost, or no candidates remain. The strict-decrease gate is the whole
/// stopping rule; there are no size, depth, or sample-count thresholds.
MsiResult buildTree(const Dataset& dataset, const MsiConfig& config = {},
                    const MsiBuildOptions& options = {});

/// Cost of an existing tree under a config, as the builder would score it.
CostBreakdown costOf(const Tree& tree, const Dataset& dataset, const MsiConfig& config);

} // namespace msitree
