#include "msitree/greedy.hpp"

#include <memory>
#include <stdexcept>

#include "msitree/split.hpp"

namespace msitree {

namespace {

void grow(TreeNode& node, std::size_t depth, const Dataset& dataset, const GreedyConfig& config) {
    if (node.data.size() < config.minSamplesSplit) return;
    if (config.maxDepth && depth >= *config.maxDepth) return;
    auto chosen = bestSplit(node.data, config.minSamplesLeaf);
    if (!chosen) return; // pure, constant, or no split satisfies the leaf minimum

    auto [leftRows, rightRows] = partitionRows(node.data, *chosen);
    DataSubset leftData(dataset, std::move(leftRows));
    DataSubset rightData(dataset, std::move(rightRows));
    const int leftClass = forecast(leftData);
    const int rightClass = forecast(rightData);

    node.split = *chosen;
    node.left = std::make_unique<TreeNode>(std::move(leftData), leftClass);
    node.right = std::make_unique<TreeNode>(std::move(rightData), rightClass);
    grow(*node.left, depth + 1, dataset, config);
    grow(*node.right, depth + 1, dataset, config);
}

} // namespace

Tree buildGreedyTree(const Dataset& dataset, const GreedyConfig& config) {
    if (config.minSamplesSplit < 2)
        throw std::invalid_argument("buildGreedyTree: minSamplesSplit must be at least 2");
    if (config.minSamplesLeaf < 1)
        throw std::invalid_argument("buildGreedyTree: minSamplesLeaf must be at least 1");

    DataSubset all = DataSubset::whole(dataset);
    auto root = std::make_unique<TreeNode>(all, forecast(all));
    Tree tree(dataset, std::move(root));
    grow(tree.root(), 0, dataset, config);
    return tree;
}

} // namespace msitree
