#pragma once

#include <cstddef>
#include <optional>

#include "msitree/dataset.hpp"
#include "msitree/tree.hpp"

namespace msitree {

/// Stopping knobs of the greedy baseline. Both sample-count conditions are
/// checked independently.
struct GreedyConfig {
    std::size_t minSamplesSplit = 5;
    std::size_t minSamplesLeaf = 1;
    std::optional<std::size_t> maxDepth;
};

/// Classic recursive partitioning: each impure node takes the
/// weighted-entropy best split among those leaving at least minSamplesLeaf
/// rows on each side, as long as the node holds at least minSamplesSplit
/// rows and maxDepth (when set) is not reached. No cost model, no pruning;
/// this is the comparison point for the cost-guided builder.
Tree buildGreedyTree(const Dataset& dataset, const GreedyConfig& config = {});

} // namespace msitree
